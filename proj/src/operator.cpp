#include "hausdorff/operator.hpp"

#include <cmath>

namespace hausdorff {

double Matrix::row_dot(std::size_t r, std::span<const double> f) const {
  std::vector<double> terms(cols);
  for (std::size_t c = 0; c < cols; ++c) terms[c] = at(r, c) * f[c];
  return pairwise_sum(terms);
}

std::vector<double> Matrix::apply_to(std::span<const double> f) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = row_dot(r, f);
  return out;
}

double Matrix::max_abs_row_sum() const {
  double best = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> terms(cols);
    for (std::size_t c = 0; c < cols; ++c) terms[c] = std::abs(at(r, c));
    best = std::max(best, pairwise_sum(terms));
  }
  return best;
}

double Matrix::max_abs_col_sum() const {
  double best = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<double> terms(rows);
    for (std::size_t r = 0; r < rows; ++r) terms[r] = std::abs(at(r, c));
    best = std::max(best, pairwise_sum(terms));
  }
  return best;
}

OperatorInstance::OperatorInstance(MeasureSpace omega, MeasureSpace source, MeasureSpace target,
                                   MapFamily family, Kernel kernel, Exponents exponents,
                                   const QuadratureSpec& probe_quad)
    : omega_(std::move(omega)),
      source_(std::move(source)),
      target_(std::move(target)),
      family_(std::move(family)),
      kernel_(std::move(kernel)),
      exponents_(exponents) {
  // The family must map the target carrier (S) into the source carrier
  // (S'): the operator pulls f on S' back to a function on S.
  if (!same_carrier(family_.domain().carrier(), target_.carrier()) ||
      !same_carrier(family_.codomain().carrier(), source_.carrier()))
    throw Error(Errc::invalid_argument,
                "family domain/codomain carriers must match target/source");
  kernel_.spot_check(omega_, target_, probe_quad);
}

bool OperatorInstance::finite_discrete() const {
  return omega_.discrete() && source_.discrete() && target_.discrete();
}

std::vector<double> OperatorInstance::assemble_row(const Point& x) const {
  std::vector<double> row(source_.atom_count(), 0.0);
  for (std::size_t j = 0; j < omega_.atom_count(); ++j) {
    const Point u = omega_.atom(j);
    const Point image = family_.apply(u, x);
    const std::size_t col = source_.find_atom(image);
    if (col == MeasureSpace::npos)
      throw Error(Errc::out_of_carrier, "map image is not an atom of the source space");
    row[col] += kernel_(u, x) * omega_.atom_weight(j);
  }
  return row;
}

IntegrationResult OperatorInstance::apply(const Func& f, const Point& x,
                                          const QuadratureSpec& quad) const {
  if (!target_.contains(x))
    throw Error(Errc::out_of_carrier, "evaluation point is outside the target carrier");
  if (omega_.discrete()) {
    if (source_.discrete()) {
      // Exact path shared with to_matrix: assemble the row, then one
      // pairwise dot. Keeps apply and M*f bit-identical.
      const std::vector<double> row = assemble_row(x);
      std::vector<double> fv(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) fv[c] = f(source_.atom(c));
      Matrix m{1, row.size(), row};
      const double v = m.row_dot(0, fv);
      if (!std::isfinite(v)) throw Error(Errc::non_finite_sample, "non-finite operator value");
      return IntegrationResult{v, 0.0, row.size()};
    }
    std::vector<double> terms(omega_.atom_count());
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const Point u = omega_.atom(j);
      const double v = kernel_(u, x) * f(family_.apply(u, x)) * omega_.atom_weight(j);
      if (!std::isfinite(v)) throw Error(Errc::non_finite_sample, "non-finite operator term");
      terms[j] = v;
    }
    return IntegrationResult{pairwise_sum(terms), 0.0, terms.size()};
  }
  Func integrand;
  integrand.eval = [this, &f, &x](const Point& u) {
    return kernel_(u, x) * f(family_.apply(u, x));
  };
  integrand.breakpoints = family_.omega_breakpoints(x, f.support);
  return integrate(omega_, integrand, quad);
}

std::vector<double> OperatorInstance::apply_grid(const Func& f, std::span<const Point> grid,
                                                 const QuadratureSpec& quad) const {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const Point& x : grid) out.push_back(apply(f, x, quad).value);
  return out;
}

Matrix OperatorInstance::to_matrix() const {
  if (!finite_discrete())
    throw Error(Errc::not_finite_discrete, "to_matrix requires finite discrete Omega, S, S'");
  Matrix m;
  m.rows = target_.atom_count();
  m.cols = source_.atom_count();
  m.a.assign(m.rows * m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const std::vector<double> row = assemble_row(target_.atom(r));
    std::copy(row.begin(), row.end(), m.a.begin() + static_cast<long>(r * m.cols));
  }
  return m;
}

}  // namespace hausdorff

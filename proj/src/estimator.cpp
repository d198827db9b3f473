#include "hausdorff/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hausdorff {

// ---------------------------------------------------------------------------
// Exact matrix norms
// ---------------------------------------------------------------------------

double matrix_norm_one(const Matrix& m) { return m.max_abs_col_sum(); }
double matrix_norm_inf(const Matrix& m) { return m.max_abs_row_sum(); }

namespace {

double vec_pnorm(std::span<const double> v, double p) {
  if (p == kInf) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx;
  }
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) terms[i] = std::pow(std::abs(v[i]), p);
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

std::vector<double> matvec(const Matrix& m, std::span<const double> f) { return m.apply_to(f); }

std::vector<double> matvec_t(const Matrix& m, std::span<const double> g) {
  std::vector<double> out(m.cols, 0.0);
  std::vector<double> terms(m.rows);
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (std::size_t r = 0; r < m.rows; ++r) terms[r] = m.at(r, c) * g[r];
    out[c] = pairwise_sum(terms);
  }
  return out;
}

}  // namespace

namespace {
double two_norm_of_image(const Matrix& m, const std::vector<double>& v) {
  const std::vector<double> y = m.apply_to(v);
  std::vector<double> t(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] * y[i];
  return std::sqrt(pairwise_sum(t));
}

std::pair<double, std::vector<double>> spectral_pair(const Matrix& m,
                                                     const PowerIterationOptions& opts) {
  if (m.rows == 0 || m.cols == 0) return {0.0, {}};
  std::vector<double> v(m.cols, 1.0 / std::sqrt(static_cast<double>(m.cols)));
  double sigma = two_norm_of_image(m, v);
  if (sigma == 0.0) {
    // The ones vector may sit in the kernel; probe unit vectors.
    for (std::size_t j = 0; j < m.cols && sigma == 0.0; ++j) {
      std::fill(v.begin(), v.end(), 0.0);
      v[j] = 1.0;
      sigma = two_norm_of_image(m, v);
    }
    if (sigma == 0.0) return {0.0, std::move(v)};
  }
  for (int it = 0; it < opts.max_iters; ++it) {
    std::vector<double> w = matvec_t(m, m.apply_to(v));
    std::vector<double> t(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) t[i] = w[i] * w[i];
    const double nw = std::sqrt(pairwise_sum(t));
    if (nw == 0.0) return {0.0, std::move(v)};
    for (auto& x : w) x /= nw;
    const double s = two_norm_of_image(m, w);
    const double delta = std::abs(s - sigma);
    v = std::move(w);
    sigma = s;
    if (delta <= opts.rel_tol * std::max(sigma, 1e-300)) return {sigma, std::move(v)};
  }
  throw Error(Errc::no_convergence, "power iteration did not settle within the iteration cap");
}
}  // namespace

double matrix_norm_spectral(const Matrix& m, const PowerIterationOptions& opts) {
  return spectral_pair(m, opts).first;
}

// ---------------------------------------------------------------------------
// Ratio ascent
// ---------------------------------------------------------------------------

namespace {

// Subgradient of ||y||_p in y (any valid element at the nonsmooth points).
std::vector<double> norm_subgradient(std::span<const double> y, double p) {
  std::vector<double> g(y.size(), 0.0);
  if (p == kInf) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
      if (std::abs(y[i]) > std::abs(y[best])) best = i;
    if (y[best] != 0.0) g[best] = y[best] > 0.0 ? 1.0 : -1.0;
    return g;
  }
  const double np = vec_pnorm(y, p);
  if (np == 0.0) return g;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    const double mag = p == 1.0 ? 1.0 : std::pow(std::abs(y[i]) / np, p - 1.0);
    g[i] = y[i] > 0.0 ? mag : -mag;
  }
  return g;
}

struct RatioProblem {
  const Matrix& m;
  double p, q;

  double ratio(std::span<const double> f) const {
    const double den = vec_pnorm(f, q);
    if (!(den > 0.0) || !std::isfinite(den)) return 0.0;
    return vec_pnorm(matvec(m, f), p) / den;
  }

  // Gradient of the scale-invariant ratio ||Mf||_p / ||f||_q.
  std::vector<double> gradient(std::span<const double> f) const {
    const std::vector<double> y = matvec(m, f);
    const double num = vec_pnorm(y, p);
    const double den = vec_pnorm(f, q);
    std::vector<double> g = matvec_t(m, norm_subgradient(y, p));
    const std::vector<double> dq = norm_subgradient(f, q);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (g[i] - num / den * dq[i]) / den;
    return g;
  }
};

void normalize_in_place(std::vector<double>& f, double q) {
  const double n = vec_pnorm(f, q);
  if (n > 0.0 && std::isfinite(n))
    for (auto& x : f) x /= n;
}

// Deterministic restart pool: the ones vector, unit vectors, row sign
// patterns, then seeded random directions.
std::vector<std::vector<double>> restart_pool(const Matrix& m, int restarts, std::uint64_t seed) {
  std::vector<std::vector<double>> pool;
  const std::size_t n = m.cols;
  const std::size_t cap = static_cast<std::size_t>(std::max(restarts, 1));
  pool.emplace_back(n, 1.0);
  for (std::size_t j = 0; j < n && pool.size() < cap; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    pool.push_back(std::move(e));
  }
  for (std::size_t r = 0; r < m.rows && pool.size() < cap; ++r) {
    std::vector<double> s(n, 0.0);
    bool nonzero = false;
    for (std::size_t c = 0; c < n; ++c) {
      s[c] = m.at(r, c) > 0.0 ? 1.0 : (m.at(r, c) < 0.0 ? -1.0 : 0.0);
      nonzero = nonzero || s[c] != 0.0;
    }
    if (nonzero) pool.push_back(std::move(s));
  }
  Rng rng(seed ^ 0x5ca1ab1eULL);
  while (pool.size() < cap) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    pool.push_back(std::move(v));
  }
  return pool;
}

LowerBound exact_result(double value, std::vector<double> witness, const char* kind) {
  LowerBound lb;
  lb.value = value;
  lb.witness = std::move(witness);
  lb.witness_kind = kind;
  lb.restart_index = -1;
  return lb;
}

LowerBound run_ascent(const Matrix& m, double p, double q, const AscentOptions& opts) {
  LowerBound best;
  best.witness_kind = "vector";
  if (m.rows == 0 || m.cols == 0) return best;
  const RatioProblem prob{m, p, q};
  const auto pool = restart_pool(m, opts.restarts, opts.seed);
  for (std::size_t ri = 0; ri < pool.size(); ++ri) {
    std::vector<double> f = pool[ri];
    normalize_in_place(f, q);
    double r = prob.ratio(f);
    for (int it = 0; it < opts.max_iters; ++it) {
      std::vector<double> g = prob.gradient(f);
      const double gn = vec_pnorm(g, 2.0);
      if (!(gn > 0.0) || !std::isfinite(gn)) break;
      for (auto& x : g) x /= gn;
      // Backtracking line search, halving from 1.
      double step = 1.0;
      double r_new = r;
      std::vector<double> cand;
      bool improved = false;
      for (int ls = 0; ls < 45; ++ls) {
        cand = f;
        for (std::size_t i = 0; i < f.size(); ++i) cand[i] += step * g[i];
        normalize_in_place(cand, q);
        const double rc = prob.ratio(cand);
        if (std::isfinite(rc) && rc > r) {
          r_new = rc;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
      f = std::move(cand);
      const double rel = (r_new - r) / std::max(r_new, 1e-300);
      r = r_new;
      if (rel < opts.improve_tol) break;
    }
    if (r > best.value) {
      best.value = r;
      best.witness = f;
      best.restart_index = static_cast<int>(ri);
    }
  }
  return best;
}

// Unit-vector extremizer: exact for q = 1 (and so for p = q = 1).
LowerBound column_extreme(const Matrix& m, double p) {
  double best = 0.0;
  std::size_t best_c = 0;
  for (std::size_t c = 0; c < m.cols; ++c) {
    std::vector<double> col(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
    const double v = vec_pnorm(col, p);
    if (v > best) {
      best = v;
      best_c = c;
    }
  }
  std::vector<double> w(m.cols, 0.0);
  if (m.cols > 0) w[best_c] = 1.0;
  return exact_result(best, std::move(w), "unit-vector");
}

// Hoelder extremizer of the best row: exact for p = inf; value is the max
// row q'-norm with 1/q + 1/q' = 1.
LowerBound row_extreme(const Matrix& m, double q) {
  const double qc = q == kInf ? 1.0 : (q == 1.0 ? kInf : q / (q - 1.0));
  double best = 0.0;
  std::size_t best_r = 0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::vector<double> row(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) row[c] = m.at(r, c);
    const double v = vec_pnorm(row, qc);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  std::vector<double> w(m.cols, 0.0);
  if (m.rows > 0 && best > 0.0) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      const double e = m.at(best_r, c);
      if (e == 0.0) continue;
      if (q == kInf) {
        w[c] = e > 0.0 ? 1.0 : -1.0;
      } else if (q == 1.0) {
        w[c] = 0.0;  // filled below: unit vector at the largest |entry|
      } else {
        const double mag = std::pow(std::abs(e) / best, qc - 1.0);
        w[c] = e > 0.0 ? mag : -mag;
      }
    }
    if (q == 1.0) {
      std::size_t bc = 0;
      for (std::size_t c = 1; c < m.cols; ++c)
        if (std::abs(m.at(best_r, c)) > std::abs(m.at(best_r, bc))) bc = c;
      w[bc] = m.at(best_r, bc) > 0.0 ? 1.0 : -1.0;
    }
  }
  return exact_result(best, std::move(w), "row-extremizer");
}

}  // namespace

LowerBound matrix_opnorm_ascent_only(const Matrix& m, double p, double q,
                                     const AscentOptions& opts) {
  return run_ascent(m, p, q, opts);
}

LowerBound matrix_opnorm_lower(const Matrix& m, double p, double q, const AscentOptions& opts) {
  if (q == 1.0) return column_extreme(m, p);
  if (p == kInf) return row_extreme(m, q);
  if (p == q && p == 2.0) {
    try {
      auto [sigma, v] = spectral_pair(m, {});
      return exact_result(sigma, std::move(v), "spectral");
    } catch (const Error&) {
      // Fall through: the ascent value is still a valid lower bound.
    }
  }
  return run_ascent(m, p, q, opts);
}

LowerBound empirical_norm_matrix(const Matrix& m, double p, const AscentOptions& opts,
                                 const PowerIterationOptions& pi) {
  if (p == 1.0) return column_extreme(m, 1.0);
  if (p == kInf) return row_extreme(m, kInf);
  if (p == 2.0) return exact_result(matrix_norm_spectral(m, pi), {}, "spectral");
  return run_ascent(m, p, p, opts);
}

// ---------------------------------------------------------------------------
// Finite-discrete instances: conjugate by the measure weights
// ---------------------------------------------------------------------------

LowerBound empirical_norm_discrete(const OperatorInstance& op, const AscentOptions& opts) {
  const Matrix m = op.to_matrix();
  const double p = op.exponents().p(), q = op.exponents().q();
  const double ip = p == kInf ? 0.0 : 1.0 / p;
  const double iq = q == kInf ? 0.0 : 1.0 / q;
  Matrix mt = m;
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double wr = std::pow(op.target().atom_weight(r), ip);
    for (std::size_t c = 0; c < m.cols; ++c)
      mt.at(r, c) = wr * m.at(r, c) * std::pow(op.source().atom_weight(c), -iq);
  }
  LowerBound lb = matrix_opnorm_lower(mt, p, q, opts);
  // Map the witness back to a function on the source atoms.
  if (lb.witness.size() == m.cols && iq != 0.0)
    for (std::size_t c = 0; c < m.cols; ++c)
      lb.witness[c] *= std::pow(op.source().atom_weight(c), -iq);
  return lb;
}

// ---------------------------------------------------------------------------
// Test families
// ---------------------------------------------------------------------------

TestFamily TestFamily::truncated_power(double support_lo, std::pair<double, double> alpha_bounds,
                                       std::pair<double, double> hi_bounds,
                                       std::vector<double> alpha_sweep) {
  TestFamily f;
  f.kind_ = Kind::truncated_power;
  f.bounds_ = {alpha_bounds, hi_bounds};
  f.support_lo_ = support_lo;
  for (double a : alpha_sweep) f.sweep_starts_.push_back({a, hi_bounds.first});
  return f;
}

TestFamily TestFamily::step_function(std::vector<double> breakpoints,
                                     std::pair<double, double> level_bounds) {
  if (breakpoints.size() < 2)
    throw Error(Errc::invalid_argument, "step function needs at least two breakpoints");
  TestFamily f;
  f.kind_ = Kind::step_function;
  f.breakpoints_ = std::move(breakpoints);
  f.bounds_.assign(f.breakpoints_.size() - 1, level_bounds);
  return f;
}

TestFamily TestFamily::gaussian_bump(std::pair<double, double> center_bounds,
                                     std::pair<double, double> width_bounds) {
  TestFamily f;
  f.kind_ = Kind::gaussian_bump;
  f.bounds_ = {center_bounds, width_bounds};
  return f;
}

TestFamily TestFamily::grid_vector(std::size_t size) {
  TestFamily f;
  f.kind_ = Kind::grid_vector;
  f.bounds_.assign(size, {-1.0, 1.0});
  return f;
}

const char* TestFamily::name() const {
  switch (kind_) {
    case Kind::truncated_power: return "truncated_power";
    case Kind::step_function: return "step_function";
    case Kind::gaussian_bump: return "gaussian_bump";
    case Kind::grid_vector: return "grid_vector";
  }
  return "?";
}

Func TestFamily::make(std::span<const double> params) const {
  if (params.size() != bounds_.size())
    throw Error(Errc::invalid_argument, "family parameter count mismatch");
  Func f;
  switch (kind_) {
    case Kind::truncated_power: {
      const double alpha = params[0];
      f.eval = [alpha](const Point& t) { return std::pow(t.x(), -alpha); };
      f.support = std::pair{support_lo_, params[1]};
      break;
    }
    case Kind::step_function: {
      std::vector<double> bp = breakpoints_;
      std::vector<double> levels(params.begin(), params.end());
      f.eval = [bp, levels](const Point& t) {
        const double x = t.x();
        for (std::size_t i = 0; i + 1 < bp.size(); ++i)
          if (x >= bp[i] && x < bp[i + 1]) return levels[i];
        return 0.0;
      };
      f.support = std::pair{bp.front(), bp.back()};
      f.breakpoints = bp;
      break;
    }
    case Kind::gaussian_bump: {
      const double c = params[0], w = std::max(params[1], 1e-12);
      f.eval = [c, w](const Point& t) {
        const double z = (t.x() - c) / w;
        return std::exp(-0.5 * z * z);
      };
      break;
    }
    case Kind::grid_vector: {
      std::vector<double> vals(params.begin(), params.end());
      f.eval = [vals](const Point& t) {
        const long i = t.idx();
        if (i < 0 || static_cast<std::size_t>(i) >= vals.size()) return 0.0;
        return vals[static_cast<std::size_t>(i)];
      };
      break;
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Continuous estimator
// ---------------------------------------------------------------------------

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

struct RatioEvaluator {
  const OperatorInstance& op;
  const TestFamily& family;
  const QuadratureSpec& quad;
  QuadratureSpec inner;  // reduced budget for the Omega integral inside Hf
  int* evals_left;

  RatioEvaluator(const OperatorInstance& o, const TestFamily& fam, const QuadratureSpec& q,
                 int* left)
      : op(o), family(fam), quad(q), inner(q), evals_left(left) {
    inner.node_budget = std::max(q.node_budget / 2, 257);
  }

  double operator()(std::span<const double> params) const {
    if (*evals_left <= 0) return -1.0;
    --*evals_left;
    try {
      const Func f = family.make(params);
      const double den = lp_norm(op.source(), f, op.exponents().q(), quad);
      if (!(den > 0.0) || !std::isfinite(den)) return 0.0;
      Func hf;
      const OperatorInstance* opp = &op;
      const Func* fp = &f;
      const QuadratureSpec* qp = &inner;
      hf.eval = [opp, fp, qp](const Point& x) { return opp->apply(*fp, x, *qp).value; };
      if (f.support) hf.breakpoints = {f.support->first, f.support->second};
      const double num = lp_norm(op.target(), hf, op.exponents().p(), quad);
      if (!std::isfinite(num)) return 0.0;
      return num / den;
    } catch (const Error& e) {
      std::fprintf(stderr, "estimator: candidate skipped (%s)\n", e.what());
      return 0.0;
    }
  }
};

}  // namespace

LowerBound empirical_norm_continuous(const OperatorInstance& op,
                                     const std::vector<TestFamily>& families, int budget,
                                     std::uint64_t seed, const QuadratureSpec& quad) {
  if (families.empty()) throw Error(Errc::empty_family, "no test families supplied");

  // A grid-vector family on a finite-discrete instance optimizes over the
  // same finite space as the matrix path; delegate for exactness.
  for (const TestFamily& fam : families) {
    if (fam.kind() == TestFamily::Kind::grid_vector && op.finite_discrete()) {
      AscentOptions a;
      a.seed = seed;
      LowerBound lb = empirical_norm_discrete(op, a);
      lb.witness_kind = "grid_vector";
      return lb;
    }
  }

  int evals_left = budget;
  LowerBound best;
  int restart_counter = 0;
  for (const TestFamily& fam : families) {
    const std::size_t dims = fam.param_count();
    RatioEvaluator ratio{op, fam, quad, &evals_left};

    // Starts: pinned sweep values first, then a low-discrepancy fill.
    std::vector<std::vector<double>> starts = fam.sweep_starts();
    const int fill = std::max(3, 8 - static_cast<int>(starts.size()));
    const int offset = 1 + static_cast<int>(seed % 64);
    static const int bases[4] = {2, 3, 5, 7};
    for (int s = 0; s < fill; ++s) {
      std::vector<double> th(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        const auto [blo, bhi] = fam.bounds()[d];
        th[d] = blo + (bhi - blo) * halton(offset + s, bases[d % 4]);
      }
      starts.push_back(std::move(th));
    }

    for (auto& th : starts) {
      for (std::size_t d = 0; d < dims; ++d)
        th[d] = std::clamp(th[d], fam.bounds()[d].first, fam.bounds()[d].second);
      double r = ratio(th);
      bool progress = true;
      while (progress && evals_left > 0) {
        progress = false;
        const double r_round = r;
        for (std::size_t d = 0; d < dims && evals_left > 0; ++d) {
          const auto [blo, bhi] = fam.bounds()[d];
          const double range = bhi - blo;
          if (range <= 0.0) continue;
          for (double sign : {+1.0, -1.0}) {
            double step = 1.0;
            for (int ls = 0; ls < 12 && evals_left > 0; ++ls) {
              std::vector<double> cand = th;
              cand[d] = std::clamp(th[d] + sign * step * range, blo, bhi);
              if (cand[d] == th[d]) break;
              const double rc = ratio(cand);
              if (rc > r) {
                th = std::move(cand);
                r = rc;
                break;
              }
              step *= 0.5;
            }
          }
        }
        if (r > r_round * (1.0 + 1e-9)) progress = true;
      }
      if (r > best.value) {
        best.value = r;
        best.witness = th;
        best.witness_kind = fam.name();
        best.restart_index = restart_counter;
      }
      ++restart_counter;
      if (evals_left <= 0) break;
    }
    if (evals_left <= 0) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Divergence probe
// ---------------------------------------------------------------------------

DivergenceReport divergence_probe(const OperatorInstance& op, const Func& f, const Point& x,
                                  std::span<const double> eps_sequence,
                                  const QuadratureSpec& quad) {
  if (eps_sequence.empty())
    throw Error(Errc::invalid_argument, "divergence probe needs a nonempty eps sequence");
  for (std::size_t i = 0; i + 1 < eps_sequence.size(); ++i)
    if (!(eps_sequence[i] > eps_sequence[i + 1]) || !(eps_sequence[i + 1] > 0.0))
      throw Error(Errc::invalid_argument, "eps sequence must be strictly decreasing and positive");

  DivergenceReport rep;
  for (double eps : eps_sequence) {
    QuadratureSpec q = quad;
    const double cap = quad.truncation ? quad.truncation->cap_high : kInf;
    q.truncation = Truncation{eps, cap};
    q.target_rel_tol = std::max(quad.target_rel_tol, 1e-4);
    rep.eps.push_back(eps);
    rep.values.push_back(op.apply(f, x, q).value);
  }
  rep.monotone_growth = rep.values.size() > 1;
  for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
    if (!(std::abs(rep.values[i + 1]) >= std::abs(rep.values[i]) * 1.10))
      rep.monotone_growth = false;
  return rep;
}

}  // namespace hausdorff

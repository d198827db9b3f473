#include <cmath>

#include "doctest.h"
#include "hausdorff/bounds.hpp"
#include "hausdorff/config.hpp"
#include "hausdorff/estimator.hpp"
#include "hausdorff/scenario.hpp"

using namespace hausdorff;

namespace {

Matrix from_rows(std::size_t rows, std::size_t cols, std::vector<double> a) {
  Matrix m;
  m.rows = rows;
  m.cols = cols;
  m.a = std::move(a);
  return m;
}

// Independent spectral oracle: cyclic Jacobi on M^T M (test-only).
double jacobi_sigma_max(const Matrix& m) {
  const std::size_t n = m.cols;
  std::vector<double> g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m.rows; ++r) s += m.at(r, i) * m.at(r, j);
      g[i * n + j] = s;
    }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = g[p * n + q];
        off += apq * apq;
        if (apq == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, g[q * n + q] - g[p * n + p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = g[k * n + p], akq = g[k * n + q];
          g[k * n + p] = c * akp - s * akq;
          g[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = g[p * n + k], aqk = g[q * n + k];
          g[p * n + k] = c * apk - s * aqk;
          g[q * n + k] = s * apk + c * aqk;
        }
      }
    if (off < 1e-28) break;
  }
  double lmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) lmax = std::max(lmax, g[i * n + i]);
  return std::sqrt(std::max(lmax, 0.0));
}

}  // namespace

TEST_CASE("matrix norms: identity and closed forms") {
  Matrix id = from_rows(4, 4, std::vector<double>(16, 0.0));
  for (std::size_t i = 0; i < 4; ++i) id.at(i, i) = 1.0;
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    const auto lb = empirical_norm_matrix(id, p);
    CHECK(lb.value == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Oracle: singular values of [[0,2],[0,0]] are {2, 0}.
  const Matrix nil = from_rows(2, 2, {0.0, 2.0, 0.0, 0.0});
  CHECK(empirical_norm_matrix(nil, 2.0).value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(matrix_norm_one(nil) == 2.0);
  CHECK(matrix_norm_inf(nil) == 2.0);
}

TEST_CASE("row-stochastic nonnegative matrices have sup-norm one") {
  auto cfg = cyclic_group_config(2.0);
  cfg.kernel.values = {0.3, 0.7, 0.0, 0.0};
  const Matrix m = build_instance(cfg).to_matrix();
  CHECK(empirical_norm_matrix(m, kInf).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power iteration cap raises NO_CONVERGENCE") {
  const Matrix m = from_rows(2, 2, {2.0, 1.0, 0.0, 1.0});
  PowerIterationOptions opts;
  opts.max_iters = 1;
  opts.rel_tol = 1e-30;
  CHECK_THROWS_WITH_AS(static_cast<void>(matrix_norm_spectral(m, opts)),
                       doctest::Contains("NO_CONVERGENCE"), Error);
}

TEST_CASE("ascent reaches the closed-form matrix norms (small sweep)") {
  Rng rng(4242);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> entries(25);
    for (auto& v : entries) v = rng.normal();
    const Matrix m = from_rows(5, 5, entries);
    AscentOptions opts;
    opts.seed = 77 + static_cast<std::uint64_t>(t);

    double col = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < 5; ++r) s += std::abs(m.at(r, c));
      col = std::max(col, s);
    }
    double row = 0.0;
    for (std::size_t r = 0; r < 5; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < 5; ++c) s += std::abs(m.at(r, c));
      row = std::max(row, s);
    }
    CHECK(std::abs(matrix_opnorm_ascent_only(m, 1.0, 1.0, opts).value - col) <= 1e-6);
    CHECK(std::abs(matrix_opnorm_ascent_only(m, kInf, kInf, opts).value - row) <= 1e-6);
    CHECK(std::abs(matrix_opnorm_ascent_only(m, 2.0, 2.0, opts).value - jacobi_sigma_max(m)) <=
          1e-6);
  }
}

TEST_CASE("continuous estimator: averaging operator with a fixed witness") {
  // Oracle: with f = t^{-0.45} on (0,1], H f(x) = x^{-0.45}/0.55 on (0,1],
  // so the ratio is at least 1/0.55 = 1.8182 (the tail only adds mass).
  auto cfg = cesaro_config(2.0);
  cfg.estimator.alpha_min = 0.45;
  cfg.estimator.alpha_max = 0.45;
  cfg.estimator.support_hi_max = 1.0;
  cfg.estimator.alpha_sweep = {0.45};
  cfg.estimator.budget = 8;
  const auto op = build_instance(cfg);
  QuadratureSpec quad = cfg.quadrature;
  quad.node_budget = cfg.estimator.node_budget;
  quad.target_rel_tol = 1e-3;
  const auto lb =
      empirical_norm_continuous(op, build_families(cfg, op), cfg.estimator.budget, 0, quad);
  CHECK(lb.value >= 1.8182);
  CHECK(lb.value <= 2.0 + 1e-6);
  CHECK(lb.witness_kind == std::string("truncated_power"));
}

TEST_CASE("estimator returns zero when the operator annihilates the family") {
  // Phi = {1, -1} over two copies of the identity automorphism: H f == 0.
  const auto omega = MeasureSpace::counting({0, 1});
  const auto haar = MeasureSpace::haar_cyclic(3);
  auto fam = MapFamily::custom(
      [](const Point&, const Point& x) { return x; }, [](const Point&) { return 1.0; }, haar, haar);
  auto kernel = Kernel::one_variable(
      [](const Point& u) { return u.idx() == 0 ? 1.0 : -1.0; }, false, "+1/-1");
  const OperatorInstance op(omega, haar, haar, std::move(fam), std::move(kernel),
                            Exponents(2.0, 2.0));
  QuadratureSpec quad;
  const auto lb = empirical_norm_continuous(op, {TestFamily::grid_vector(3)}, 50, 0, quad);
  CHECK(lb.value == 0.0);
}

TEST_CASE("grid-vector family agrees with the matrix oracle") {
  auto cfg = cyclic_group_config(2.0);
  cfg.kernel.values = {0.3, 0.7, 0.0, 0.0};
  const auto op = build_instance(cfg);
  QuadratureSpec quad;
  const auto via_family =
      empirical_norm_continuous(op, {TestFamily::grid_vector(12)}, 100, 0, quad);
  const auto via_matrix = empirical_norm_matrix(op.to_matrix(), 2.0);
  CHECK(std::abs(via_family.value - via_matrix.value) <= 1e-9);
  const auto bound = theoretical_bound(op, quad);
  CHECK(via_family.value <= bound.value + 1e-9);
}

TEST_CASE("empty family list is rejected") {
  auto cfg = cyclic_group_config(2.0);
  const auto op = build_instance(cfg);
  QuadratureSpec quad;
  CHECK_THROWS_WITH_AS(static_cast<void>(empirical_norm_continuous(op, {}, 10, 0, quad)),
                       doctest::Contains("EMPTY_FAMILY"), Error);
}

TEST_CASE("divergence probe on the averaging operator") {
  const auto op = divergence_instance();
  QuadratureSpec quad;
  const std::vector<double> eps{1e-2, 1e-4, 1e-6};

  {
    Func f;
    f.eval = [](const Point& t) { return std::pow(t.x(), -1.25); };
    f.support = std::pair{0.0, 1.0};
    const auto rep = divergence_probe(op, f, Point(1.0), eps, quad);
    REQUIRE(rep.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      // Oracle: antiderivative of u^{-1.25} is -4 u^{-1/4}.
      const double expect = 4.0 * (std::pow(eps[i], -0.25) - 1.0);
      CHECK(rep.values[i] == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(rep.monotone_growth);
  }
  {
    Func f;
    f.eval = [](const Point& t) { return std::pow(t.x(), -0.5); };
    f.support = std::pair{0.0, 1.0};
    const auto rep = divergence_probe(op, f, Point(1.0), eps, quad);
    for (std::size_t i = 0; i < 3; ++i) {
      const double expect = 2.0 * (1.0 - std::sqrt(eps[i]));
      CHECK(rep.values[i] == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK_FALSE(rep.monotone_growth);
  }
  {
    Func f;
    f.eval = [](const Point&) { return 1.0; };
    f.support = std::pair{0.0, 1.0};
    const auto rep = divergence_probe(op, f, Point(1.0), eps, quad);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(rep.values[i] == doctest::Approx(1.0 - eps[i]).epsilon(1e-9));
    CHECK_FALSE(rep.monotone_growth);
  }

  const std::vector<double> bad{1e-4, 1e-2};
  Func f;
  f.eval = [](const Point&) { return 1.0; };
  CHECK_THROWS_AS(static_cast<void>(divergence_probe(op, f, Point(1.0), bad, quad)), Error);
}

TEST_CASE("witness values are reproducible bit for bit under a fixed seed") {
  const auto cfg = two_variable_demo_config();
  const auto op = build_instance(cfg);
  QuadratureSpec quad = cfg.quadrature;
  quad.node_budget = 256;
  quad.target_rel_tol = 1e-2;
  const auto families = build_families(cfg, op);
  const auto a = empirical_norm_continuous(op, families, 25, 42, quad);
  const auto b = empirical_norm_continuous(op, families, 25, 42, quad);
  CHECK(a.value == b.value);
  REQUIRE(a.witness.size() == b.witness.size());
  for (std::size_t i = 0; i < a.witness.size(); ++i) CHECK(a.witness[i] == b.witness[i]);
  CHECK(a.restart_index == b.restart_index);
}

TEST_CASE("witness quality improves as the power approaches the critical exponent") {
  // Sweep alpha = 1/2 - eps for eps in {0.2, 0.1, 0.05, 0.02}: the ratio
  // must increase monotonically toward the sharp constant 2.
  auto cfg = cesaro_config(2.0);
  const auto op = build_instance(cfg);
  QuadratureSpec quad = cfg.quadrature;
  quad.node_budget = cfg.estimator.node_budget;
  quad.target_rel_tol = 1e-3;
  std::vector<double> values;
  for (double eps : {0.2, 0.1, 0.05, 0.02}) {
    auto c = cfg;
    const double alpha = 0.5 - eps;
    c.estimator.alpha_min = alpha;
    c.estimator.alpha_max = alpha;
    c.estimator.support_hi_max = 1.0;
    c.estimator.alpha_sweep = {alpha};
    const auto lb = empirical_norm_continuous(op, build_families(c, op), 6, 0, quad);
    values.push_back(lb.value);
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) CHECK(values[i] < values[i + 1] + 1e-9);
  CHECK(values.back() > 1.95);
  CHECK(values.back() < 2.0);
}

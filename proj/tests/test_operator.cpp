#include <cmath>

#include "doctest.h"
#include "hausdorff/operator.hpp"
#include "hausdorff/scenario.hpp"

using namespace hausdorff;

namespace {

OperatorInstance cesaro_like(double p = 2.0) {
  const auto omega = MeasureSpace::lebesgue_interval(0.0, 1.0, true);
  const auto line = MeasureSpace::lebesgue_interval(0.0, kInf, true);
  auto fam = MapFamily::scalar_dilation(1, line, line);
  QuadratureSpec probe;
  probe.truncation = Truncation{1e-12, 1e6};
  return OperatorInstance(omega, line, line, std::move(fam), Kernel::constant(1.0),
                          Exponents(p, p), probe);
}

OperatorInstance cyclic_instance(int n, std::vector<long> mult, std::vector<double> weights,
                                 double p = 2.0, double q = 2.0) {
  const auto omega = MeasureSpace::counting(mult);
  const auto haar = MeasureSpace::haar_cyclic(n);
  auto fam = MapFamily::cyclic_automorphism(mult, haar, haar);
  std::vector<long> mult_copy = mult;
  auto eval = [mult_copy, weights](const Point& u) {
    for (std::size_t i = 0; i < mult_copy.size(); ++i)
      if (mult_copy[i] == u.idx()) return weights[i];
    return 0.0;
  };
  bool nonneg = true;
  for (double w : weights) nonneg = nonneg && w >= 0.0;
  return OperatorInstance(omega, haar, haar, std::move(fam),
                          Kernel::one_variable(eval, nonneg, "table"), Exponents(p, q));
}

Func from_lambda(std::function<double(const Point&)> f) {
  Func out;
  out.eval = std::move(f);
  return out;
}

}  // namespace

TEST_CASE("apply: averaging operator pointwise values") {
  const auto op = cesaro_like();
  QuadratureSpec quad;
  quad.truncation = Truncation{1e-12, 1e6};
  const auto ones = from_lambda([](const Point&) { return 1.0; });
  CHECK(op.apply(ones, Point(0.7), quad).value == doctest::Approx(1.0).epsilon(1e-9));
  // Oracle: integral of 2u over (0,1) is 1.
  const auto ident = from_lambda([](const Point& t) { return t.x(); });
  CHECK(op.apply(ident, Point(2.0), quad).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("apply on a finite group: fixed point mass") {
  const auto op = cyclic_instance(5, {1, 2}, {0.3, 0.7});
  QuadratureSpec quad;
  const auto indicator0 = from_lambda([](const Point& x) { return x.idx() == 0 ? 1.0 : 0.0; });
  CHECK(op.apply(indicator0, Point::index(0), quad).value == 1.0);
}

TEST_CASE("apply_grid evaluates elementwise and keeps order") {
  const auto op = cesaro_like();
  QuadratureSpec quad;
  quad.truncation = Truncation{1e-12, 1e6};
  const auto ones = from_lambda([](const Point&) { return 1.0; });
  const std::vector<Point> grid{Point(0.5), Point(1.0), Point(2.0)};
  const auto vals = op.apply_grid(ones, grid, quad);
  REQUIRE(vals.size() == 3);
  for (double v : vals) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  const auto ident = from_lambda([](const Point& t) { return t.x(); });
  const std::vector<Point> grid2{Point(1.0), Point(2.0)};
  const auto vals2 = op.apply_grid(ident, grid2, quad);
  CHECK(vals2[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(vals2[1] == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(op.apply_grid(ones, {}, quad).empty());
}

TEST_CASE("to_matrix: identity automorphism gives the identity matrix") {
  const auto op = cyclic_instance(2, {1}, {1.0});
  const Matrix m = op.to_matrix();
  REQUIRE(m.rows == 2);
  REQUIRE(m.cols == 2);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(1, 1) == 1.0);
  CHECK(m.at(0, 1) == 0.0);
  CHECK(m.at(1, 0) == 0.0);
}

TEST_CASE("to_matrix: weighted multipliers on Z_5") {
  const auto op = cyclic_instance(5, {1, 2}, {0.3, 0.7});
  const Matrix m = op.to_matrix();
  // Row x: 0.3 at column x, 0.7 at column 2x mod 5; both land on column 0
  // at x = 0 and the weights add.
  CHECK(m.at(0, 0) == 1.0);
  for (std::size_t x = 1; x < 5; ++x) {
    CHECK(m.at(x, x) == 0.3);
    CHECK(m.at(x, (2 * x) % 5) == 0.7);
  }
}

TEST_CASE("to_matrix: empty parameter set gives the zero matrix") {
  const auto haar = MeasureSpace::haar_cyclic(3);
  const auto omega = MeasureSpace::counting({});
  auto fam = MapFamily::cyclic_automorphism({}, haar, haar);
  const OperatorInstance op(omega, haar, haar, std::move(fam), Kernel::constant(1.0),
                            Exponents(2.0, 2.0));
  const Matrix m = op.to_matrix();
  for (double v : m.a) CHECK(v == 0.0);
  QuadratureSpec quad;
  CHECK(op.apply(from_lambda([](const Point&) { return 1.0; }), Point::index(1), quad).value == 0.0);
}

TEST_CASE("to_matrix requires finite discrete spaces") {
  const auto op = cesaro_like();
  CHECK_THROWS_WITH_AS(static_cast<void>(op.to_matrix()), doctest::Contains("NOT_FINITE_DISCRETE"),
                       Error);
}

TEST_CASE("linearity on discrete parameter sets") {
  const auto op = cyclic_instance(7, {1, 3, 5}, {0.4, 1.1, 0.8});
  QuadratureSpec quad;
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> fv(7), gv(7);
    for (auto& v : fv) v = rng.uniform(0.5, 2.0);
    for (auto& v : gv) v = rng.uniform(0.5, 2.0);
    const double a = rng.uniform(0.5, 2.0), b = rng.uniform(0.5, 2.0);
    auto f = from_lambda([fv](const Point& x) { return fv[static_cast<std::size_t>(x.idx())]; });
    auto g = from_lambda([gv](const Point& x) { return gv[static_cast<std::size_t>(x.idx())]; });
    auto comb = from_lambda([fv, gv, a, b](const Point& x) {
      return a * fv[static_cast<std::size_t>(x.idx())] + b * gv[static_cast<std::size_t>(x.idx())];
    });
    const long x = rng.uniform_int(0, 6);
    const double lhs = op.apply(comb, Point::index(x), quad).value;
    const double rhs =
        a * op.apply(f, Point::index(x), quad).value + b * op.apply(g, Point::index(x), quad).value;
    CHECK(ulp_distance(lhs, rhs) <= 4.0);
  }
}

TEST_CASE("apply agrees with the materialized matrix exactly") {
  const auto op = cyclic_instance(9, {1, 2, 4}, {0.25, 1.5, 0.125});
  const Matrix m = op.to_matrix();
  QuadratureSpec quad;
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> fv(9);
    for (auto& v : fv) v = rng.uniform(-2.0, 2.0);
    auto f = from_lambda([fv](const Point& x) { return fv[static_cast<std::size_t>(x.idx())]; });
    const auto mf = m.apply_to(fv);
    for (long x = 0; x < 9; ++x)
      CHECK(op.apply(f, Point::index(x), quad).value == mf[static_cast<std::size_t>(x)]);
  }
}

TEST_CASE("positivity: nonnegative kernel and function give nonnegative values") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> w{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    const auto op = cyclic_instance(5, {1, 3}, w);
    std::vector<double> fv(5);
    for (auto& v : fv) v = rng.uniform(0.0, 3.0);
    auto f = from_lambda([fv](const Point& x) { return fv[static_cast<std::size_t>(x.idx())]; });
    QuadratureSpec quad;
    for (long x = 0; x < 5; ++x) CHECK(op.apply(f, Point::index(x), quad).value >= 0.0);
  }
}

TEST_CASE("out-of-carrier images propagate from apply") {
  const auto unit = MeasureSpace::lebesgue_interval(0.0, 1.0, true);
  const auto omega = MeasureSpace::lebesgue_interval(0.0, 2.0, true);
  auto fam = MapFamily::scalar_dilation(1, unit, unit);
  const OperatorInstance op(omega, unit, unit, std::move(fam), Kernel::constant(1.0),
                            Exponents(2.0, 2.0));
  QuadratureSpec quad;
  const auto ones = from_lambda([](const Point&) { return 1.0; });
  CHECK_THROWS_WITH_AS(static_cast<void>(op.apply(ones, Point(0.9), quad)),
                       doctest::Contains("OUT_OF_CARRIER"), Error);
}

TEST_CASE("instance construction validates the family wiring") {
  const auto haar5 = MeasureSpace::haar_cyclic(5);
  const auto line = MeasureSpace::lebesgue_interval(0.0, kInf, true);
  auto fam = MapFamily::scalar_dilation(1, line, line);
  CHECK_THROWS_AS(OperatorInstance(MeasureSpace::lebesgue_interval(0.0, 1.0, true), haar5, haar5,
                                   std::move(fam), Kernel::constant(1.0), Exponents(2.0, 2.0)),
                  Error);
}

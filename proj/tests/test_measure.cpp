#include <cmath>

#include "doctest.h"
#include "hausdorff/measure.hpp"

using namespace hausdorff;

namespace {
Func fn(std::function<double(const Point&)> f) {
  Func out;
  out.eval = std::move(f);
  return out;
}
}  // namespace

TEST_CASE("integrate: total mass of the unit interval") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  QuadratureSpec quad;
  const auto r = integrate(space, fn([](const Point&) { return 1.0; }), quad);
  CHECK(std::abs(r.value - 1.0) < 1e-12);
}

TEST_CASE("integrate: inverse square root on (0,1), graded mesh") {
  // Oracle: antiderivative 2*sqrt(u), so the integral over (0,1) is 2.
  const double oracle = 2.0 * std::sqrt(1.0) - 2.0 * std::sqrt(0.0);
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0, true);
  QuadratureSpec quad;
  quad.grading = Grading::geometric;
  const auto r = integrate(space, fn([](const Point& u) { return 1.0 / std::sqrt(u.x()); }), quad);
  CHECK(std::abs(r.value - oracle) < 1e-6);
}

TEST_CASE("integrate: finite counting sums are exact") {
  const auto space = MeasureSpace::counting({-1, 0, 1});
  QuadratureSpec quad;
  const auto r = integrate(
      space, fn([](const Point& k) { return std::abs(static_cast<double>(k.idx())); }), quad);
  CHECK(r.value == 2.0);
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("lp_norm: constants on a probability space") {
  const auto space = MeasureSpace::haar_cyclic(5);
  QuadratureSpec quad;
  for (double p : {1.0, 2.0, 7.5, kInf}) {
    const double v = lp_norm(space, fn([](const Point&) { return -3.25; }), p, quad);
    CHECK(std::abs(v - 3.25) < 1e-13);
  }
}

TEST_CASE("lp_norm: identity on (0,1)") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  QuadratureSpec quad;
  // Oracle: integral of x^2 over (0,1) is 1/3.
  const double l2 = lp_norm(space, fn([](const Point& x) { return x.x(); }), 2.0, quad);
  CHECK(std::abs(l2 - 1.0 / std::sqrt(3.0)) < 1e-6);
  const double linf = lp_norm(space, fn([](const Point& x) { return x.x(); }), kInf, quad);
  CHECK(linf <= 1.0);
  CHECK(linf > 1.0 - 1e-3);
}

TEST_CASE("lp_norm homogeneity") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  QuadratureSpec quad;
  auto f = [](const Point& x) { return std::sin(3.0 * x.x()) + 1.5; };
  const double base = lp_norm(space, fn(f), 2.0, quad);
  // Power-of-two scalings commute with |.|^2 and sqrt exactly.
  for (double c : {2.0, 0.25, -8.0}) {
    const double scaled = lp_norm(space, fn([f, c](const Point& x) { return c * f(x); }), 2.0, quad);
    CHECK(ulp_distance(scaled, std::abs(c) * base) <= 2.0);
  }
  // Arbitrary scalings hold to rounding accumulation.
  for (double c : {3.7, -0.0931}) {
    const double scaled = lp_norm(space, fn([f, c](const Point& x) { return c * f(x); }), 2.0, quad);
    CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-13));
  }
}

TEST_CASE("integrate monotone in the integrand") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 2.0);
  QuadratureSpec quad;
  quad.target_rel_tol = 1.0;  // ordering is what matters here
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(0.0, 3.0), w = rng.uniform(0.5, 6.0);
    auto f = [a, w](const Point& x) { return a * std::sin(w * x.x()); };
    auto g = [f, b](const Point& x) { return f(x) + b; };
    const double vf = integrate(space, fn(f), quad).value;
    const double vg = integrate(space, fn(g), quad).value;
    CHECK(vf <= vg);
  }
}

TEST_CASE("discrete integrate matches the plain sum bit for bit") {
  // Fixed ascending order; blocks of <= 8 sum sequentially.
  const std::vector<long> idx{0, 1, 2, 3, 4};
  const std::vector<double> w{0.3, 1.7, 0.11, 2.9, 0.041};
  const auto space = MeasureSpace::weighted_counting(idx, w);
  QuadratureSpec quad;
  auto f = [](const Point& k) { return 1.0 / (1.0 + static_cast<double>(k.idx())); };
  double plain = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) plain += w[i] * f(Point::index(idx[i]));
  CHECK(integrate(space, fn(f), quad).value == plain);
}

TEST_CASE("normalized Haar mass sums to 1 within an ulp") {
  QuadratureSpec quad;
  for (int n : {5, 7, 12, 16}) {
    const auto space = MeasureSpace::haar_cyclic(n);
    const double mass = integrate(space, fn([](const Point&) { return 1.0; }), quad).value;
    CHECK(ulp_distance(mass, 1.0) <= 1.0);
    CHECK(space.total_mass() == 1.0);
  }
}

TEST_CASE("refinement consistency of the error estimate") {
  // Doubling the budget should move the value by less than the reported
  // estimate in at least 95% of smooth trials.
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  Rng rng(7);
  int ok = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const double a = rng.uniform(0.5, 2.0), w = rng.uniform(5.0, 40.0), ph = rng.uniform(0.0, 6.0);
    auto f = fn([a, w, ph](const Point& x) { return a * std::sin(w * x.x() + ph) + 2.0; });
    QuadratureSpec quad;
    quad.grading = Grading::uniform;
    quad.node_budget = 64;
    quad.target_rel_tol = 1.0;
    const auto coarse = integrate(space, f, quad);
    quad.node_budget = 128;
    const auto fine = integrate(space, f, quad);
    if (std::abs(fine.value - coarse.value) < coarse.error_estimate) ++ok;
  }
  CHECK(ok >= 95);
}

TEST_CASE("tolerance failure raises TOLERANCE_NOT_MET") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  QuadratureSpec quad;
  quad.grading = Grading::uniform;
  quad.node_budget = 24;
  quad.target_rel_tol = 1e-12;
  auto nasty = fn([](const Point& x) { return std::sin(57.0 * x.x() * x.x()); });
  CHECK_THROWS_WITH_AS(static_cast<void>(integrate(space, nasty, quad)),
                       doctest::Contains("TOLERANCE_NOT_MET"), Error);
}

TEST_CASE("non-finite samples raise NON_FINITE_SAMPLE") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, 1.0);
  QuadratureSpec quad;
  auto nan_below_half = fn([](const Point& x) { return std::log(x.x() - 0.5); });
  CHECK_THROWS_WITH_AS(static_cast<void>(integrate(space, nan_below_half, quad)),
                       doctest::Contains("NON_FINITE_SAMPLE"), Error);
}

TEST_CASE("unbounded carriers require truncation") {
  const auto space = MeasureSpace::lebesgue_interval(0.0, kInf, true);
  QuadratureSpec quad;
  auto decay = fn([](const Point& x) { return std::exp(-x.x()); });
  CHECK_THROWS_WITH_AS(static_cast<void>(integrate(space, decay, quad)),
                       doctest::Contains("TRUNCATION_REQUIRED"), Error);
  quad.truncation = Truncation{1e-8, 40.0};
  CHECK(integrate(space, decay, quad).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("carrier invariants are enforced") {
  CHECK_THROWS_AS(static_cast<void>(MeasureSpace::lebesgue_interval(1.0, 1.0)), Error);
  CHECK_THROWS_AS(static_cast<void>(MeasureSpace::weighted_counting({1, 2}, {1.0, -0.5})), Error);
  CHECK_THROWS_AS(static_cast<void>(MeasureSpace::weighted_counting({1}, {1.0, 2.0})), Error);
  CHECK_THROWS_AS(static_cast<void>(MeasureSpace::lebesgue_box({0.0}, {0.0})), Error);
}

TEST_CASE("box integration") {
  const auto space = MeasureSpace::lebesgue_box({0.0, 0.0}, {1.0, 2.0});
  QuadratureSpec quad;
  quad.box_axis_budget = 33;
  // Oracle: integral of x0*x1 over [0,1]x[0,2] = (1/2)*2 = 1.
  const auto r = integrate(space, fn([](const Point& x) { return x[0] * x[1]; }), quad);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(space.total_mass() == 2.0);
}

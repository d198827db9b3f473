// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line each. Exit code is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hausdorff/bounds.hpp"
#include "hausdorff/config.hpp"
#include "hausdorff/estimator.hpp"
#include "hausdorff/scenario.hpp"
#include "instance_gen.hpp"

using namespace hausdorff;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(std::string label) : label_(std::move(label)), start_(clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) {
      ok_ = false;
      if (!failure_.empty()) failure_ += "; ";
      failure_ += detail;
    }
  }

  void finish(const std::string& summary) {
    const double secs =
        std::chrono::duration<double>(clock::now() - start_).count();
    std::printf("[%s] %-28s %s (%.2f s)%s%s\n", ok_ ? "PASS" : "FAIL", label_.c_str(),
                summary.c_str(), secs, ok_ ? "" : " -- ", failure_.c_str());
    std::fflush(stdout);
    if (!ok_) ++g_failures;
  }

  double elapsed() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string label_;
  clock::time_point start_;
  bool ok_ = true;
  std::string failure_;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Sharp averaging-operator bound: p/(p-1) with witnesses approaching it.
// --------------------------------------------------------------------------
void criterion_sharp_bound() {
  Criterion crit("cesaro sharp bound");
  std::string summary;
  const struct {
    double p, bound, lb_floor;
  } cases[] = {{2.0, 2.0, 1.95}, {3.0, 1.5, 1.45}};
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_scenario("cesaro", RunOverrides{.seed = 0, .rel_tol = {}, .p = c.p});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    crit.check(std::abs(r.norm.bound.value - c.bound) <= 1e-3,
               fmt("bound at p=%g off: %.6f", c.p, r.norm.bound.value));
    crit.check(r.norm.empirical.value >= c.lb_floor,
               fmt("lower bound at p=%g too small: %.4f", c.p, r.norm.empirical.value));
    crit.check(r.norm.verdict == Verdict::dominance_ok, "verdict not DOMINANCE_OK");
    crit.check(secs < 10.0, fmt("runtime %.1f s exceeds 10 s at p=%g", secs, c.p));
    summary += fmt("p=%g: bound %.4f", c.p, r.norm.bound.value) +
               fmt(" lb %.4f  ", r.norm.empirical.value);
  }
  crit.finish(summary);
}

// --------------------------------------------------------------------------
// 2. Compact-group equality: matrix norms equal the kernel mass on Z_12.
// --------------------------------------------------------------------------
void criterion_group_equality() {
  Criterion crit("compact-group equality");
  Rng rng(1);
  double worst = 0.0;
  auto cfg = cyclic_group_config(2.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w(4);
    for (auto& v : w) v = rng.uniform(0.0, 2.0);
    cfg.kernel.values = w;
    const auto op = build_instance(cfg);
    const double mass = exact_norm_compact_group(op);
    const Matrix m = op.to_matrix();
    for (double p : {1.0, 2.0, kInf}) {
      const double err = std::abs(empirical_norm_matrix(m, p).value - mass);
      worst = std::max(worst, err);
    }
  }
  crit.check(worst <= 1e-10, fmt("worst |norm - mass| = %.3g", worst));
  crit.check(crit.elapsed() < 5.0, fmt("runtime %.1f s exceeds 5 s", crit.elapsed()));
  crit.finish(fmt("50 draws x {1,2,inf}: worst deviation %.2e", worst));
}

// --------------------------------------------------------------------------
// 3. Dominance across all four exponent regimes on random instances.
// --------------------------------------------------------------------------
void criterion_dominance() {
  Criterion crit("dominance property suite");
  QuadratureSpec quad;
  const char* regime_names[] = {"p<q", "q=inf", "p=q", "p=q=inf"};
  int total = 0;
  double worst_margin = kInf;
  for (int regime = 0; regime < 4; ++regime) {
    Rng rng(5000 + static_cast<std::uint64_t>(regime));
    for (int t = 0; t < 200; ++t) {
      const auto op = testgen::random_instance(rng, regime, t % 2 == 0);
      const BoundResult bound = theoretical_bound(op, quad);
      if (bound.divergent) {
        crit.check(false, fmt("unexpected divergent bound in regime %g", regime));
        continue;
      }
      AscentOptions a;
      a.restarts = 8;
      a.max_iters = 300;
      a.seed = static_cast<std::uint64_t>(regime) * 1000 + static_cast<std::uint64_t>(t);
      const LowerBound lb = empirical_norm_discrete(op, a);
      const double margin = bound.value + 1e-6 - lb.value;
      worst_margin = std::min(worst_margin, margin);
      if (!(lb.value <= bound.value + 1e-6))
        crit.check(false, fmt("violation in regime %s: lb %.9f > bound %.9f",
                              static_cast<double>(regime), lb.value, bound.value) +
                              regime_names[regime]);
      ++total;
    }
  }
  crit.check(total == 800, "instance count");
  crit.check(crit.elapsed() < 120.0, fmt("runtime %.1f s exceeds 2 min", crit.elapsed()));
  crit.finish(fmt("800 instances, min slack+tol %.3g", worst_margin));
}

// --------------------------------------------------------------------------
// 4. Discrete Hausdorff bound: exact sum, dominating a grid discretization.
// --------------------------------------------------------------------------
void criterion_discrete_hausdorff() {
  Criterion crit("discrete Hausdorff bound");
  std::vector<double> phi;
  std::vector<SmallMatrix> mats;
  std::vector<long> index;
  discrete_hausdorff_data(phi, mats, index);

  // Independent oracle: ascending hand sum of 2^{-|k|} * (4^k)^{-1/2};
  // every term is a power of two, so the sum is exact.
  double oracle = 0.0;
  for (long k = -3; k <= 3; ++k)
    oracle += std::ldexp(1.0, -static_cast<int>(std::labs(k))) *
              std::pow(std::ldexp(1.0, 2 * static_cast<int>(k)), -0.5);
  const double bound = discrete_hausdorff_bound(phi, mats, 2.0);
  crit.check(bound == oracle, fmt("bound %.17g != oracle %.17g", bound, oracle));
  crit.check(bound == 4.328125, "frozen value 4.328125 mismatch");

  const RunResult r = run_scenario("discrete-hausdorff", RunOverrides{.seed = 0, .rel_tol = {}, .p = 2.0});
  crit.check(r.norm.empirical.value <= bound, fmt("grid estimate %.9f exceeds the bound", r.norm.empirical.value));
  crit.check(r.norm.verdict == Verdict::dominance_ok, "verdict not DOMINANCE_OK");
  crit.finish(fmt("sum %.6f, grid estimate %.6f", bound, r.norm.empirical.value));
}

// --------------------------------------------------------------------------
// 5. Weak agreement on 100 random (family, u, E) triples per built-in kind.
// --------------------------------------------------------------------------
void criterion_weak_agreement() {
  Criterion crit("weak-agreement verification");
  Rng rng(77);
  const auto line = MeasureSpace::lebesgue_interval(0.0, kInf, true);
  const auto plane = MeasureSpace::lebesgue_box({-kInf, -kInf}, {kInf, kInf});
  double worst_exact = -kInf;

  for (int t = 0; t < 100; ++t) {
    const auto fam = MapFamily::scalar_dilation(1, line, line);
    const auto rep = fam.verify_agreement(Point(rng.uniform(0.05, 8.0)), 1, rng.next());
    worst_exact = std::max(worst_exact, rep.max_violation - rep.noise_bound);
    if (rep.max_violation > rep.noise_bound)
      crit.check(false, fmt("dilation violation %.3g", rep.max_violation));
  }
  for (int t = 0; t < 100; ++t) {
    SmallMatrix m;
    m.d = 2;
    do {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m.at(r, c) = rng.uniform(-2.0, 2.0);
    } while (std::abs(m.det()) < 0.2);
    const auto fam = MapFamily::matrix_dilation({0}, {m}, plane, plane);
    const auto rep = fam.verify_agreement(Point::index(0), 1, rng.next());
    worst_exact = std::max(worst_exact, rep.max_violation - rep.noise_bound);
    if (rep.max_violation > rep.noise_bound)
      crit.check(false, fmt("matrix violation %.3g", rep.max_violation));
  }
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 24));
    std::vector<long> units;
    for (long k = 1; k < n; ++k)
      if (gcd_long(k, n) == 1) units.push_back(k);
    const long k = units[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(units.size()) - 1))];
    const auto haar = MeasureSpace::haar_cyclic(n);
    const auto fam = MapFamily::cyclic_automorphism({k}, haar, haar);
    const auto rep = fam.verify_agreement(Point::index(k), 1, rng.next());
    if (rep.max_violation > rep.noise_bound)
      crit.check(false, fmt("cyclic violation %.3g", rep.max_violation));
  }
  // Monte-Carlo cross-check path with its 3-sigma tolerance.
  for (int t = 0; t < 10; ++t) {
    const auto fam = MapFamily::scalar_dilation(1, line, line);
    const auto rep =
        fam.verify_agreement(Point(rng.uniform(0.2, 4.0)), 1, rng.next(), AgreementMethod::monte_carlo);
    if (rep.max_violation > rep.noise_bound)
      crit.check(false, fmt("monte-carlo violation %.3g > 3 sigma", rep.max_violation));
  }
  crit.check(crit.elapsed() < 30.0, fmt("runtime %.1f s exceeds 30 s", crit.elapsed()));
  crit.finish(fmt("300 exact + 10 MC triples, worst exact excess %.2e", worst_exact));
}

// --------------------------------------------------------------------------
// 6. Divergence for p < 1: truncated values match the antiderivative.
// --------------------------------------------------------------------------
void criterion_divergence() {
  Criterion crit("divergence for p < 1");
  const RunResult r = run_scenario("p-lt-1-divergence");
  const auto& rep = r.divergence;
  bool sizes = rep.eps.size() == 3 && rep.values.size() == 3;
  crit.check(sizes, "expected three eps levels");
  if (sizes) {
    for (std::size_t i = 0; i < 3; ++i) {
      const double expect = 4.0 * (std::pow(rep.eps[i], -0.25) - 1.0);
      crit.check(std::abs(rep.values[i] - expect) <= 0.01 * expect,
                 fmt("value at eps=%.0e off: %.4f vs %.4f", rep.eps[i], rep.values[i], expect));
    }
  }
  crit.check(rep.monotone_growth, "monotone_growth flag not set");
  crit.finish(sizes ? fmt("values %.2f / %.2f / %.2f", rep.values[0], rep.values[1], rep.values[2])
                    : "malformed report");
}

// --------------------------------------------------------------------------
// 7. Oracle equivalence of the general-p ascent at p in {1, 2, inf}.
// --------------------------------------------------------------------------
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

void criterion_oracle_equivalence() {
  Criterion crit("matrix-norm oracle match");
  Rng rng(31337);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Matrix m;
    m.rows = m.cols = 5;
    m.a.resize(25);
    for (auto& v : m.a) v = rng.normal();
    double col = 0.0, row = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < 5; ++r) s += std::abs(m.at(r, c));
      col = std::max(col, s);
    }
    for (std::size_t r = 0; r < 5; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < 5; ++c) s += std::abs(m.at(r, c));
      row = std::max(row, s);
    }
    AscentOptions opts;
    opts.seed = 900 + static_cast<std::uint64_t>(t);
    const double e1 = std::abs(matrix_opnorm_ascent_only(m, 1.0, 1.0, opts).value - col);
    const double e2 =
        std::abs(matrix_opnorm_ascent_only(m, 2.0, 2.0, opts).value - jacobi_sigma_max(m));
    const double einf = std::abs(matrix_opnorm_ascent_only(m, kInf, kInf, opts).value - row);
    worst = std::max({worst, e1, e2, einf});
    if (std::max({e1, e2, einf}) > 1e-6)
      crit.check(false, fmt("trial %g: errors %.2e / %.2e", static_cast<double>(t),
                            std::max({e1, e2, einf})));
  }
  crit.finish(fmt("100 random 5x5, worst error %.2e", worst));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_sharp_bound();
  criterion_group_equality();
  criterion_dominance();
  criterion_discrete_hausdorff();
  criterion_weak_agreement();
  criterion_divergence();
  criterion_oracle_equivalence();
  if (g_failures == 0)
    std::printf("RESULT: all 7 criteria passed\n");
  else
    std::printf("RESULT: %d criteria FAILED\n", g_failures);
  return g_failures;
}

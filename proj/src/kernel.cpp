#include "hausdorff/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hausdorff {

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

Kernel Kernel::two_variable(std::function<double(const Point&, const Point&)> eval,
                            bool nonnegative, std::string description) {
  Kernel k;
  k.eval_ = std::move(eval);
  k.one_variable_ = false;
  k.nonnegative_ = nonnegative;
  k.description_ = std::move(description);
  return k;
}

Kernel Kernel::one_variable(std::function<double(const Point&)> eval, bool nonnegative,
                            std::string description) {
  Kernel k;
  auto fn = std::move(eval);
  k.eval_ = [fn](const Point& u, const Point&) { return fn(u); };
  k.one_variable_ = true;
  k.nonnegative_ = nonnegative;
  k.description_ = std::move(description);
  return k;
}

Kernel Kernel::constant(double c) {
  Kernel k = one_variable([c](const Point&) { return c; }, c >= 0.0, "const");
  return k;
}

namespace {

std::vector<Point> probe_points(const MeasureSpace& space, const QuadratureSpec& quad, int count) {
  std::vector<Point> pts;
  if (space.discrete()) {
    const std::size_t n = space.atom_count();
    const std::size_t step = std::max<std::size_t>(1, n / static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < n; i += step) pts.push_back(space.atom(i));
    return pts;
  }
  if (const auto* iv = std::get_if<Interval>(&space.carrier())) {
    const NodeSet nodes = interval_nodes(*iv, quad, count, {});
    const std::size_t step = std::max<std::size_t>(1, nodes.x.size() / static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < nodes.x.size(); i += step) pts.emplace_back(nodes.x[i]);
    return pts;
  }
  const auto& b = std::get<BoxCarrier>(space.carrier());
  // Corners plus the center are probe enough for flag validation.
  const std::size_t d = b.lo.size();
  std::vector<double> mid(d);
  for (std::size_t i = 0; i < d; ++i) mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
  pts.push_back(Point::from_span(mid));
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<double> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = (mask >> i & 1) ? b.hi[i] : b.lo[i];
    if (std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); }))
      pts.push_back(Point::from_span(c));
  }
  return pts;
}

}  // namespace

void Kernel::spot_check(const MeasureSpace& omega, const MeasureSpace& target,
                        const QuadratureSpec& quad) const {
  const auto us = probe_points(omega, quad, 16);
  const auto xs = probe_points(target, quad, 16);
  if (us.empty() || xs.empty()) return;
  for (const Point& u : us) {
    const double ref = eval_(u, xs.front());
    for (const Point& x : xs) {
      const double v = eval_(u, x);
      if (nonnegative_ && v < 0.0)
        throw Error(Errc::invalid_argument, "kernel flagged nonnegative but probes negative");
      if (one_variable_ && std::abs(v - ref) > 1e-12 * std::max(1.0, std::abs(ref)))
        throw Error(Errc::invalid_argument, "kernel flagged one-variable but depends on x");
    }
  }
}

// ---------------------------------------------------------------------------
// Exponents and conjugacy
// ---------------------------------------------------------------------------

Exponents::Exponents(double p, double q) : p_(p), q_(q) {
  const bool case_finite = q != kInf && q >= p && p >= 1.0;
  const bool case_q_inf = q == kInf && p != kInf && p >= 1.0;
  const bool case_both_inf = q == kInf && p == kInf;
  if (!(case_finite || case_q_inf || case_both_inf) || std::isnan(p) || std::isnan(q))
    throw Error(Errc::invalid_argument,
                "exponents must satisfy inf>q>=p>=1, q=inf>p>=1, or p=q=inf");
}

ConjugacyExponents conjugacy_r(const Exponents& e) {
  if (e.q() == kInf && e.p() != kInf) return {1.0, kInf};
  if (e.p() == e.q()) return {kInf, 1.0};
  const double r = e.q() / (e.q() - e.p());
  return {r, r / (r - 1.0)};
}

const char* norm_regime_name(NormRegime r) {
  switch (r) {
    case NormRegime::mixed_two_var: return "mixed(q>p)";
    case NormRegime::q_infinite: return "q=inf";
    case NormRegime::sup_case: return "p=q=inf";
    case NormRegime::p_equals_q: return "p=q";
  }
  return "?";
}

NormRegime mixed_norm_regime(const Exponents& e) {
  if (e.p() == kInf) return NormRegime::sup_case;
  if (e.q() == kInf) return NormRegime::q_infinite;
  if (e.p() == e.q()) return NormRegime::p_equals_q;
  return NormRegime::mixed_two_var;
}

// ---------------------------------------------------------------------------
// Outer integration with the divergence ladder
// ---------------------------------------------------------------------------

namespace {

double raw_interval_integral(const Interval& iv, const Func& f, const QuadratureSpec& quad,
                             int budget, double eps, double cap) {
  QuadratureSpec q = quad;
  q.truncation = Truncation{eps, cap};
  const NodeSet nodes = interval_nodes(iv, q, budget, f.mesh_hints());
  std::vector<double> terms(nodes.x.size());
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double v = f(Point(nodes.x[i]));
    if (!std::isfinite(v)) throw Error(Errc::non_finite_sample, "outer integrand non-finite");
    terms[i] = nodes.w[i] * v;
  }
  return pairwise_sum(terms);
}

/// Integrates `f` over omega; on continuous omega with a reachable
/// singular/unbounded end, first runs the truncation-deepening ladder and
/// throws Errc::divergent when every refinement grows the value by >= 10%.
double outer_integrate(const MeasureSpace& omega, const Func& f, const QuadratureSpec& quad,
                       const MixedNormOptions& opts) {
  if (omega.discrete()) return integrate(omega, f, quad).value;
  const auto* iv = std::get_if<Interval>(&omega.carrier());
  if (iv == nullptr) return integrate(omega, f, quad).value;  // box: no ladder

  const double lo = iv->lo, hi = iv->hi;
  double eps_user = quad.truncation ? std::max(lo, quad.truncation->eps_low) : lo;
  double cap_user = quad.truncation ? std::min(hi, quad.truncation->cap_high) : hi;
  const bool deepen_low = lo == 0.0 && eps_user >= 0.0;
  const bool deepen_high = !std::isfinite(hi) && std::isfinite(cap_user);

  if (deepen_low || deepen_high) {
    const int budget = std::min(quad.node_budget, 512);
    const double width = cap_user - lo;
    // Ladder endpoints in log scale: from a coarse window to the user's.
    const double eps_fine = deepen_low ? (eps_user > 0.0 ? eps_user : width * 1e-16) : eps_user;
    const double eps_coarse = deepen_low ? std::max(width * 1e-2, eps_fine) : eps_user;
    const double cap_fine = cap_user;
    const double cap_coarse =
        deepen_high ? std::min(cap_fine, std::max(cap_user * 1e-6, eps_coarse * 16.0)) : cap_user;

    std::vector<double> ladder;
    for (int j = 0; j <= opts.deepen_steps; ++j) {
      const double t = static_cast<double>(j) / opts.deepen_steps;
      double eps_j = eps_user, cap_j = cap_user;
      if (deepen_low)
        eps_j = std::exp(std::log(eps_coarse) + t * (std::log(eps_fine) - std::log(eps_coarse)));
      if (deepen_high)
        cap_j = std::exp(std::log(cap_coarse) + t * (std::log(cap_fine) - std::log(cap_coarse)));
      ladder.push_back(raw_interval_integral(*iv, f, quad, budget, eps_j, cap_j));
    }
    bool all_grow = true;
    for (std::size_t j = 0; j + 1 < ladder.size(); ++j)
      if (!(std::abs(ladder[j + 1]) >= std::abs(ladder[j]) * (1.0 + opts.growth_threshold)))
        all_grow = false;
    if (all_grow && ladder.size() > 1) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "outer integral grows >= %.0f%% under each truncation refinement "
                    "(last values %.6g -> %.6g)",
                    opts.growth_threshold * 100.0, ladder[ladder.size() - 2], ladder.back());
      throw Error(Errc::divergent, buf);
    }
  }
  return integrate(omega, f, quad).value;
}

}  // namespace

// ---------------------------------------------------------------------------
// mixed_norm / one_var_norm
// ---------------------------------------------------------------------------

namespace {

// || Phi(u, .) ||_{L^s(nu)} for finite s, with the constant-in-x shortcut.
double slice_lp(const Kernel& k, const MeasureSpace& s_space, const Point& u, double s,
                const QuadratureSpec& quad) {
  if (k.is_one_variable()) {
    const double phi = std::abs(k(u, Point(0.0)));
    const double mass = s_space.total_mass();
    if (!std::isfinite(mass)) {
      if (phi == 0.0) return 0.0;
      throw Error(Errc::divergent,
                  "one-variable kernel has infinite L^s slice norm on an infinite-mass target");
    }
    return phi * std::pow(mass, 1.0 / s);
  }
  Func fx;
  fx.eval = [&k, &u](const Point& x) { return k(u, x); };
  QuadratureSpec inner = quad;
  inner.node_budget = std::min(quad.node_budget, 1024);
  return lp_norm(s_space, fx, s, inner);
}

// || Phi(u, .) ||_{L^inf(nu)}: grid max (exact on discrete carriers).
double slice_sup(const Kernel& k, const MeasureSpace& s_space, const Point& u,
                 const QuadratureSpec& quad, int grid_limit) {
  if (k.is_one_variable()) return std::abs(k(u, Point(0.0)));
  Func fx;
  fx.eval = [&k, &u](const Point& x) { return k(u, x); };
  QuadratureSpec inner = quad;
  inner.node_budget = std::min(quad.node_budget, grid_limit);
  return lp_norm(s_space, fx, kInf, inner);
}

}  // namespace

double mixed_norm(const Kernel& k, const MeasureSpace& omega, const MeasureSpace& s,
                  const std::function<double(const Point&)>& m, const Exponents& e,
                  const QuadratureSpec& quad, const MixedNormOptions& opts) {
  const NormRegime regime = mixed_norm_regime(e);
  const ConjugacyExponents conj = conjugacy_r(e);

  switch (regime) {
    case NormRegime::mixed_two_var: {
      const double pr = e.p() * conj.r;
      const double inv_q = 1.0 / e.q();
      Func outer;
      outer.eval = [&, pr, inv_q](const Point& u) {
        return slice_lp(k, s, u, pr, quad) * std::pow(m(u), -inv_q);
      };
      return outer_integrate(omega, outer, quad, opts);
    }
    case NormRegime::q_infinite: {
      Func outer;
      outer.eval = [&](const Point& u) { return slice_lp(k, s, u, e.p(), quad); };
      return outer_integrate(omega, outer, quad, opts);
    }
    case NormRegime::p_equals_q: {
      const double inv_p = 1.0 / e.p();
      Func outer;
      outer.eval = [&, inv_p](const Point& u) {
        return slice_sup(k, s, u, quad, opts.sup_grid_limit) * std::pow(m(u), -inv_p);
      };
      return outer_integrate(omega, outer, quad, opts);
    }
    case NormRegime::sup_case: {
      // sup over x of the Omega-integral of |Phi(u, x)|.
      if (k.is_one_variable()) {
        Func outer;
        outer.eval = [&](const Point& u) { return std::abs(k(u, Point(0.0))); };
        return outer_integrate(omega, outer, quad, opts);
      }
      std::vector<Point> grid;
      if (s.discrete()) {
        for (std::size_t i = 0; i < s.atom_count(); ++i) grid.push_back(s.atom(i));
      } else if (const auto* iv = std::get_if<Interval>(&s.carrier())) {
        const NodeSet nodes = interval_nodes(*iv, quad, opts.sup_grid_limit, {});
        for (double x : nodes.x) grid.emplace_back(x);
      } else {
        throw Error(Errc::invalid_argument, "sup-regime probe grid needs interval or discrete S");
      }
      double best = 0.0;
      for (const Point& x : grid) {
        Func outer;
        outer.eval = [&k, &x](const Point& u) { return std::abs(k(u, x)); };
        best = std::max(best, outer_integrate(omega, outer, quad, opts));
      }
      return best;
    }
  }
  throw Error(Errc::invalid_argument, "unreachable regime");
}

double one_var_norm(const Kernel& k, const MeasureSpace& omega,
                    const std::function<double(const Point&)>& m, double p,
                    const QuadratureSpec& quad, const MixedNormOptions& opts) {
  if (!k.is_one_variable())
    throw Error(Errc::invalid_argument, "one_var_norm needs a one-variable kernel");
  Func outer;
  if (p == kInf) {
    outer.eval = [&k](const Point& u) { return std::abs(k(u, Point(0.0))); };
  } else {
    if (!(p >= 1.0)) throw Error(Errc::invalid_argument, "p must be >= 1 or inf");
    const double inv_p = 1.0 / p;
    outer.eval = [&k, &m, inv_p](const Point& u) {
      return std::abs(k(u, Point(0.0))) * std::pow(m(u), -inv_p);
    };
  }
  return outer_integrate(omega, outer, quad, opts);
}

}  // namespace hausdorff

#include "hausdorff/bounds.hpp"

#include <cmath>
#include <cstdio>

namespace hausdorff {

BoundResult theoretical_bound(const OperatorInstance& op, const QuadratureSpec& quad,
                              const MixedNormOptions& opts) {
  BoundResult out;
  out.regime = mixed_norm_regime(op.exponents());
  const MapFamily& fam = op.family();
  const auto m = [&fam](const Point& u) { return fam.agreement_factor(u); };
  char buf[128];
  switch (out.regime) {
    case NormRegime::mixed_two_var:
      std::snprintf(buf, sizeof buf,
                    "int ||Phi(u,.)||_{L^pr(nu)} m(u)^{-1/q} dmu, pr = %g",
                    op.exponents().p() * conjugacy_r(op.exponents()).r);
      break;
    case NormRegime::q_infinite:
      std::snprintf(buf, sizeof buf, "int ||Phi(u,.)||_{L^p(nu)} dmu, p = %g", op.exponents().p());
      break;
    case NormRegime::sup_case:
      std::snprintf(buf, sizeof buf, "sup_x int |Phi(u,x)| dmu");
      break;
    case NormRegime::p_equals_q:
      std::snprintf(buf, sizeof buf, "int ||Phi(u,.)||_{L^inf(nu)} m(u)^{-1/p} dmu, p = %g",
                    op.exponents().p());
      break;
  }
  out.formula = buf;
  try {
    out.value = mixed_norm(op.kernel(), op.omega(), op.target(), m, op.exponents(), quad, opts);
  } catch (const Error& e) {
    if (e.code() != Errc::divergent) throw;
    out.divergent = true;
    out.value = kInf;
    out.formula += " [finiteness hypothesis fails; no bound claimed]";
  }
  return out;
}

double discrete_hausdorff_bound(std::span<const double> phi, std::span<const SmallMatrix> matrices,
                                double p) {
  if (phi.size() != matrices.size())
    throw Error(Errc::invalid_argument, "one matrix per phi weight required");
  if (!(p >= 1.0)) throw Error(Errc::invalid_argument, "p must be >= 1 or inf");
  std::vector<double> terms(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double det = matrices[k].det();
    if (det == 0.0 || !std::isfinite(det))
      throw Error(Errc::singular_matrix, "discrete Hausdorff bound needs invertible matrices");
    terms[k] = p == kInf ? std::abs(phi[k]) : std::abs(phi[k]) * std::pow(std::abs(det), -1.0 / p);
  }
  return pairwise_sum(terms);
}

double majorant_bound(const OperatorInstance& op,
                      const std::function<double(const Point&)>& majorant,
                      const QuadratureSpec& quad) {
  if (op.exponents().p() != op.exponents().q() || op.exponents().p() == kInf)
    throw Error(Errc::hypotheses_violated, "majorant bound applies to finite p = q");
  // Probe-grid domination check, same sampling as the kernel spot check.
  const Kernel probe = Kernel::two_variable(
      [&op, &majorant](const Point& u, const Point& x) {
        return majorant(u) - std::abs(op.kernel()(u, x));
      },
      true, "majorant slack");
  try {
    probe.spot_check(op.omega(), op.target(), quad);
  } catch (const Error&) {
    throw Error(Errc::hypotheses_violated, "declared majorant does not dominate |Phi| on probes");
  }
  const Kernel phi = Kernel::one_variable(majorant, true, "majorant");
  const MapFamily& fam = op.family();
  return one_var_norm(phi, op.omega(), [&fam](const Point& u) { return fam.agreement_factor(u); },
                      op.exponents().p(), quad);
}

double exact_norm_compact_group(const OperatorInstance& op) {
  const bool haar_both = op.source().kind() == MeasureKind::normalized_haar_finite &&
                         op.target().kind() == MeasureKind::normalized_haar_finite;
  if (!haar_both)
    throw Error(Errc::hypotheses_violated,
                "exact norm needs normalized Haar measure on source and target");
  if (!op.kernel().is_one_variable())
    throw Error(Errc::hypotheses_violated, "exact norm needs a one-variable kernel");
  if (!op.kernel().is_nonnegative())
    throw Error(Errc::hypotheses_violated, "exact norm needs a nonnegative kernel");
  const auto kind = op.family().kind();
  if (kind != MapFamily::Kind::cyclic_automorphism && kind != MapFamily::Kind::custom)
    throw Error(Errc::hypotheses_violated, "exact norm needs a group automorphism family");
  // ||Phi||_{L^1(mu)}; the kernel is nonnegative so this is its plain
  // integral, exact for discrete Omega.
  Func abs_phi;
  const Kernel& k = op.kernel();
  abs_phi.eval = [&k](const Point& u) { return std::abs(k(u, Point(0.0))); };
  QuadratureSpec quad;
  return integrate(op.omega(), abs_phi, quad).value;
}

}  // namespace hausdorff

#include "hausdorff/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hausdorff {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::dominance_ok: return "DOMINANCE_OK";
    case Verdict::dominance_violated: return "DOMINANCE_VIOLATED";
    case Verdict::bound_divergent: return "BOUND_DIVERGENT";
  }
  return "?";
}

int verdict_exit_code(Verdict v) { return v == Verdict::dominance_violated ? 2 : 0; }

namespace {
std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

NormReport assemble_report(std::string scenario, std::string instance_echo,
                           const BoundResult& bound, const LowerBound* empirical, double rel_tol) {
  NormReport r;
  r.scenario = std::move(scenario);
  r.instance_echo = std::move(instance_echo);
  r.bound = bound;
  r.rel_tol = rel_tol;
  if (empirical != nullptr) {
    r.has_empirical = true;
    r.empirical = *empirical;
  }
  if (bound.divergent) {
    r.verdict = Verdict::bound_divergent;
    r.slack = kInf;
    return r;
  }
  if (r.has_empirical) {
    r.combined_tol = rel_tol * std::max(1.0, std::abs(bound.value)) + 1e-9;
    r.slack = bound.value - r.empirical.value;
    r.verdict = r.empirical.value > bound.value + r.combined_tol ? Verdict::dominance_violated
                                                                 : Verdict::dominance_ok;
  } else {
    r.slack = kInf;
    r.verdict = Verdict::dominance_ok;
  }
  return r;
}

std::string format_report(const NormReport& r) {
  std::ostringstream os;
  os << "report = norm\n";
  os << "scenario = " << (r.scenario.empty() ? "-" : r.scenario) << "\n";
  if (!r.instance_echo.empty()) os << r.instance_echo;
  os << "regime = " << norm_regime_name(r.bound.regime) << "\n";
  os << "formula = " << r.bound.formula << "\n";
  os << "theoretical_bound = " << (r.bound.divergent ? "divergent" : num(r.bound.value)) << "\n";
  if (r.has_empirical) {
    os << "empirical_lower_bound = " << num(r.empirical.value) << "\n";
    os << "witness_kind = " << r.empirical.witness_kind << "\n";
    os << "witness =";
    // Long vectors are summarized; parameter vectors print in full.
    if (r.empirical.witness.size() <= 16) {
      for (double w : r.empirical.witness) os << " " << num(w);
    } else {
      os << " [" << r.empirical.witness.size() << " values]";
    }
    os << "\n";
    os << "slack = " << num(r.slack) << "\n";
  }
  os << "rel_tol = " << num(r.rel_tol) << "\n";
  os << "combined_tol = " << num(r.combined_tol) << "\n";
  os << "verdict = " << verdict_name(r.verdict) << "\n";
  os << "wall_time_ms = " << std::llround(r.wall_ms) << "\n";
  return os.str();
}

std::string format_divergence_report(const std::string& scenario, const DivergenceReport& rep,
                                     double wall_ms) {
  std::ostringstream os;
  os << "report = divergence\n";
  os << "scenario = " << scenario << "\n";
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    os << "value_at_eps." << num(rep.eps[i]) << " = " << num(rep.values[i]) << "\n";
  os << "monotone_growth = " << (rep.monotone_growth ? "true" : "false") << "\n";
  os << "wall_time_ms = " << std::llround(wall_ms) << "\n";
  return os.str();
}

}  // namespace hausdorff

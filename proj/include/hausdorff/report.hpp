#pragma once

#include "hausdorff/bounds.hpp"
#include "hausdorff/estimator.hpp"

namespace hausdorff {

enum class Verdict { dominance_ok, dominance_violated, bound_divergent };
const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

/// Machine-parseable verification report: key = value lines, one block.
/// Bodies are byte-deterministic for a fixed config and seed except the
/// wall_time_ms line, which is emitted last.
struct NormReport {
  std::string scenario;
  std::string instance_echo;  // "instance.<key> = <value>" lines
  BoundResult bound;
  bool has_empirical = false;
  LowerBound empirical;
  double slack = 0.0;
  Verdict verdict = Verdict::dominance_ok;
  double rel_tol = 1e-6;
  double combined_tol = 0.0;
  double wall_ms = 0.0;
};

/// Combines a bound and an optional empirical estimate into the verdict:
/// DOMINANCE_VIOLATED iff empirical > bound + combined tolerance (which
/// would indicate an implementation bug, never a property of a valid
/// instance); BOUND_DIVERGENT when no bound is claimed.
NormReport assemble_report(std::string scenario, std::string instance_echo,
                           const BoundResult& bound, const LowerBound* empirical, double rel_tol);

std::string format_report(const NormReport& r);
std::string format_divergence_report(const std::string& scenario, const DivergenceReport& rep,
                                     double wall_ms);

}  // namespace hausdorff

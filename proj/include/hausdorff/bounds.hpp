#pragma once

#include "hausdorff/operator.hpp"

namespace hausdorff {

struct BoundResult {
  double value = 0.0;
  NormRegime regime = NormRegime::p_equals_q;
  bool divergent = false;  // finiteness hypothesis failed; no bound claimed
  std::string formula;
};

/// The mixed-norm upper bound on ||H||_{L^q(nu') -> L^p(nu)} for the
/// instance's exponent regime, using the family's agreement factor. A
/// divergent mixed norm is reported as an explicit no-bound result rather
/// than an error.
BoundResult theoretical_bound(const OperatorInstance& op, const QuadratureSpec& quad,
                              const MixedNormOptions& opts = {});

/// Discrete Hausdorff bound: sum over k of |phi(k)| |det A_k|^{-1/p}
/// (plain sum of |phi| for p = inf). Throws singular_matrix on det 0.
double discrete_hausdorff_bound(std::span<const double> phi, std::span<const SmallMatrix> matrices,
                                double p);

/// Exact operator norm on a finite group with normalized Haar measure, a
/// nonnegative one-variable kernel, and an automorphism family: the L^1(mu)
/// norm of the kernel. Throws hypotheses_violated otherwise.
double exact_norm_compact_group(const OperatorInstance& op);

/// p = q bound from a user-declared one-variable majorant phi with
/// |Phi(u,x)| <= phi(u): validates the domination on a probe grid
/// (hypotheses_violated on failure), then returns the one-variable norm
/// of the majorant.
double majorant_bound(const OperatorInstance& op,
                      const std::function<double(const Point&)>& majorant,
                      const QuadratureSpec& quad);

}  // namespace hausdorff

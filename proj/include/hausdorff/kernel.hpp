#pragma once

#include <functional>
#include <string>

#include "hausdorff/measure.hpp"

namespace hausdorff {

/// The kernel Phi(u, x), or Phi(u) when the one-variable flag is set.
/// Declared flags are spot-checked on a probe grid when the kernel is
/// bound into an operator instance.
class Kernel {
 public:
  static Kernel two_variable(std::function<double(const Point&, const Point&)> eval,
                             bool nonnegative, std::string description);
  static Kernel one_variable(std::function<double(const Point&)> eval, bool nonnegative,
                             std::string description);
  static Kernel constant(double c);

  double operator()(const Point& u, const Point& x) const { return eval_(u, x); }
  bool is_one_variable() const { return one_variable_; }
  bool is_nonnegative() const { return nonnegative_; }
  const std::string& description() const { return description_; }

  /// Probe-grid validation of the declared flags against sampled (u, x)
  /// pairs. Throws invalid_argument on a violation.
  void spot_check(const MeasureSpace& omega, const MeasureSpace& target,
                  const QuadratureSpec& quad) const;

 private:
  std::function<double(const Point&, const Point&)> eval_;
  bool one_variable_ = false;
  bool nonnegative_ = false;
  std::string description_;
};

/// Admissible exponent pair per the boundedness theorem:
/// inf > q >= p >= 1, or q = inf > p >= 1, or p = q = inf.
class Exponents {
 public:
  Exponents(double p, double q);
  double p() const { return p_; }
  double q() const { return q_; }
  bool p_finite() const { return p_ != kInf; }
  bool q_finite() const { return q_ != kInf; }

 private:
  double p_, q_;
};

/// r(p,q) and its conjugate: r = q/(q-p) for p != q, inf for p = q, and
/// r(p, inf) = 1; 1/r + 1/r' = 1 with p r' = q for finite q.
struct ConjugacyExponents {
  double r;
  double r_conjugate;
};
ConjugacyExponents conjugacy_r(const Exponents& e);

enum class NormRegime {
  mixed_two_var,  // inf > q > p: integral of L^{pr} slices, weight m^{-1/q}
  q_infinite,     // q = inf > p: integral of L^p slices
  sup_case,       // p = q = inf: sup over x of the L^1(mu) slice
  p_equals_q,     // p = q finite: integral of L^inf slices, weight m^{-1/p}
};
const char* norm_regime_name(NormRegime r);

struct MixedNormOptions {
  /// Truncation-deepening ladder used to flag divergence: the outer
  /// integral is evaluated at successively deeper truncations and flagged
  /// DIVERGENT when three successive refinements each grow it by >= 10%.
  double deepen_factor = 1e-4;
  int deepen_steps = 3;
  double growth_threshold = 0.10;
  int sup_grid_limit = 513;  // probe-grid cap for sup-type inner norms
};

/// The regime-dispatched mixed norm of Phi over (Omega, mu) x (S, nu) with
/// agreement factor m. Throws Errc::divergent when the deepening ladder
/// keeps growing (finiteness hypothesis fails) and propagates quadrature
/// failures.
double mixed_norm(const Kernel& k, const MeasureSpace& omega, const MeasureSpace& s,
                  const std::function<double(const Point&)>& m, const Exponents& e,
                  const QuadratureSpec& quad, const MixedNormOptions& opts = {});

NormRegime mixed_norm_regime(const Exponents& e);

/// One-variable norm: the integral of |phi(u)| m(u)^{-1/p} d mu(u); for
/// p = inf this is the plain L^1(mu) norm.
double one_var_norm(const Kernel& k, const MeasureSpace& omega,
                    const std::function<double(const Point&)>& m, double p,
                    const QuadratureSpec& quad, const MixedNormOptions& opts = {});

}  // namespace hausdorff

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hausdorff/measure.hpp"

namespace hausdorff {

/// Dense d x d real matrix, d <= 4. Enough linear algebra for dilation
/// families: determinant and solve via partial-pivot elimination.
struct SmallMatrix {
  int d = 1;
  std::array<double, 16> a{};  // row-major

  double& at(int r, int c) { return a[static_cast<std::size_t>(r * d + c)]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r * d + c)]; }

  static SmallMatrix identity(int d);
  static SmallMatrix scalar(int d, double s);
  static SmallMatrix from_rows(int d, std::span<const double> entries);

  double det() const;
  Point apply(const Point& x) const;
  Point solve(const Point& b) const;  // A^{-1} b; throws singular_matrix
};

/// Axis-aligned box used as a random test set E in agreement checks.
struct BoxSet {
  std::vector<double> lo, hi;
  double volume() const;
};

struct AgreementReport {
  double max_violation = 0.0;  // max over trials of nu(A^{-1}E) - m^{-1} nu'(E)
  int samples = 0;
  double noise_bound = 0.0;  // 3-sigma for Monte-Carlo paths, ulp-scale for exact ones
  std::string method;
};

enum class AgreementMethod { exact, monte_carlo };

/// A parameterized family of maps A(u): S -> S' together with its
/// agreement factor m(u). Built-in kinds carry closed-form preimage
/// measures; anything else goes through `custom`.
class MapFamily {
 public:
  enum class Kind { scalar_dilation, matrix_dilation, cyclic_automorphism, custom };

  /// A(u)(x) = u * x on a d-dimensional Euclidean carrier, u scalar > 0.
  static MapFamily scalar_dilation(int dim, MeasureSpace domain, MeasureSpace codomain);

  /// A(k)(x) = A_k x for k running over `omega_index`; all A_k invertible.
  static MapFamily matrix_dilation(std::vector<long> omega_index, std::vector<SmallMatrix> matrices,
                                   MeasureSpace domain, MeasureSpace codomain);

  /// A(k)(x) = k*x mod n on Z_n; every multiplier must be a unit mod n.
  static MapFamily cyclic_automorphism(std::vector<long> multipliers, MeasureSpace domain,
                                       MeasureSpace codomain);

  static MapFamily custom(std::function<Point(const Point&, const Point&)> apply,
                          std::function<double(const Point&)> m, MeasureSpace domain,
                          MeasureSpace codomain,
                          std::function<double(const Point&, const BoxSet&)> preimage_measure = {});

  Kind kind() const { return kind_; }
  const MeasureSpace& domain() const { return domain_; }
  const MeasureSpace& codomain() const { return codomain_; }

  /// A(u)(x). Throws out_of_carrier when the image leaves the declared
  /// codomain carrier; cyclic results are reduced into {0..n-1}.
  Point apply(const Point& u, const Point& x) const;

  /// The exact pushforward constant m(u) for built-in kinds (|u|^d,
  /// |det A_k|, 1 for group automorphisms), or the user-supplied m.
  double agreement_factor(const Point& u) const;

  /// Draws random finite-measure test sets E and checks
  /// nu(A(u)^{-1} E) <= m(u)^{-1} nu'(E), plus the integral form on random
  /// nonnegative simple functions. Built-in kinds use closed-form preimage
  /// measures; the Monte-Carlo method estimates the preimage mass by
  /// counting instead.
  AgreementReport verify_agreement(const Point& u, int trials, std::uint64_t seed,
                                   AgreementMethod method = AgreementMethod::exact) const;

  /// Mesh boundaries in the Omega parameter induced by a 1-D support of f
  /// composed with A(u)(x), when the family structure provides them
  /// (scalar dilations: support/x). Empty otherwise.
  std::vector<double> omega_breakpoints(const Point& x,
                                        const std::optional<std::pair<double, double>>& f_support) const;

  // Introspection used by bounds/config code.
  const std::vector<long>& multipliers() const { return multipliers_; }
  const std::vector<SmallMatrix>& matrices() const { return matrices_; }
  int dilation_dim() const { return dilation_dim_; }

 private:
  MapFamily(Kind k, MeasureSpace domain, MeasureSpace codomain);

  double preimage_mass(const Point& u, const BoxSet& e) const;
  double codomain_set_mass(const BoxSet& e) const;

  Kind kind_;
  MeasureSpace domain_;
  MeasureSpace codomain_;
  int dilation_dim_ = 1;
  std::vector<long> omega_index_;
  std::vector<SmallMatrix> matrices_;
  std::vector<long> multipliers_;
  int group_order_ = 0;
  std::function<Point(const Point&, const Point&)> custom_apply_;
  std::function<double(const Point&)> custom_m_;
  std::function<double(const Point&, const BoxSet&)> custom_preimage_;
};

long gcd_long(long a, long b);

}  // namespace hausdorff

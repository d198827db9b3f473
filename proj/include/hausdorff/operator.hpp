#pragma once

#include <span>
#include <vector>

#include "hausdorff/kernel.hpp"
#include "hausdorff/maps.hpp"

namespace hausdorff {

/// Dense row-major matrix; rows index S atoms, columns index S' atoms.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  /// Row-times-vector with the library's pairwise reduction, so results
  /// match the operator's discrete evaluation path bit for bit.
  double row_dot(std::size_t r, std::span<const double> f) const;
  std::vector<double> apply_to(std::span<const double> f) const;
  double max_abs_row_sum() const;
  double max_abs_col_sum() const;
};

/// The operator instance: (H f)(x) = integral over Omega of
/// Phi(u, x) f(A(u)(x)) d mu(u), mapping functions on (S', nu') to
/// functions on (S, nu), with exponents for the L^q(nu') -> L^p(nu)
/// norm question.
class OperatorInstance {
 public:
  OperatorInstance(MeasureSpace omega, MeasureSpace source, MeasureSpace target, MapFamily family,
                   Kernel kernel, Exponents exponents, const QuadratureSpec& probe_quad = {});

  const MeasureSpace& omega() const { return omega_; }
  const MeasureSpace& source() const { return source_; }  // (S', nu')
  const MeasureSpace& target() const { return target_; }  // (S,  nu)
  const MapFamily& family() const { return family_; }
  const Kernel& kernel() const { return kernel_; }
  const Exponents& exponents() const { return exponents_; }

  /// Pointwise evaluation. Discrete Omega gives the exact finite sum
  /// (assembled exactly like a to_matrix row); continuous Omega uses
  /// quadrature with an attached error estimate.
  IntegrationResult apply(const Func& f, const Point& x, const QuadratureSpec& quad) const;

  std::vector<double> apply_grid(const Func& f, std::span<const Point> grid,
                                 const QuadratureSpec& quad) const;

  /// Finite materialization M[x, x'] = sum over {u : A(u)(x) = x'} of
  /// Phi(u, x) mu({u}); requires all three spaces finite discrete.
  Matrix to_matrix() const;

  bool finite_discrete() const;

 private:
  std::vector<double> assemble_row(const Point& x) const;

  MeasureSpace omega_, source_, target_;
  MapFamily family_;
  Kernel kernel_;
  Exponents exponents_;
};

}  // namespace hausdorff

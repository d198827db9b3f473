#pragma once

#include <utility>

#include "hausdorff/operator.hpp"

namespace hausdorff {

struct LowerBound {
  double value = 0.0;
  std::vector<double> witness;  // family parameters, or the vector itself
  std::string witness_kind;
  int restart_index = -1;
};

struct PowerIterationOptions {
  int max_iters = 20000;
  double rel_tol = 1e-12;
};

struct AscentOptions {
  int restarts = 16;
  int max_iters = 2000;
  double improve_tol = 1e-9;  // stop on relative improvement below this
  std::uint64_t seed = 0;
};

/// Exact matrix norms: max column / row absolute sum, and the largest
/// singular value by power iteration on M^T M (throws no_convergence when
/// the iteration cap is hit before the value settles to rel_tol).
double matrix_norm_one(const Matrix& m);
double matrix_norm_inf(const Matrix& m);
double matrix_norm_spectral(const Matrix& m, const PowerIterationOptions& opts = {});

/// Lower bound on sup ||M f||_p / ||f||_q by gradient ascent of the ratio
/// with backtracking line search (halving from 1), multi-started from unit
/// vectors, sign patterns, and seeded random directions. Any feasible
/// iterate is a valid lower bound; ties across restarts resolve to the
/// lowest restart index. Exact closed forms where they exist (q = 1,
/// p = inf, p = q in {1, 2, inf}) short-circuit the ascent.
LowerBound matrix_opnorm_lower(const Matrix& m, double p, double q,
                               const AscentOptions& opts = {});

/// Matrix p-norm lower bound (p = q), exact at p in {1, 2, inf}.
LowerBound empirical_norm_matrix(const Matrix& m, double p, const AscentOptions& opts = {},
                                 const PowerIterationOptions& pi = {});

/// Ascent-only variant (no exact shortcuts); the oracle-equivalence tests
/// compare this against the closed forms.
LowerBound matrix_opnorm_ascent_only(const Matrix& m, double p, double q,
                                     const AscentOptions& opts = {});

/// Certified lower bound on the L^q(nu') -> L^p(nu) norm of a finite
/// discrete instance: conjugates the materialized matrix by the measure
/// weights and dispatches to the matrix routines.
LowerBound empirical_norm_discrete(const OperatorInstance& op, const AscentOptions& opts = {});

/// Parametric witness families for the continuous estimator.
class TestFamily {
 public:
  enum class Kind { truncated_power, step_function, gaussian_bump, grid_vector };

  /// f(t) = t^{-alpha} on [support_lo, hi], 0 outside. Parameters are
  /// (alpha, hi); `alpha_sweep` pins explicit ascent starts.
  static TestFamily truncated_power(double support_lo, std::pair<double, double> alpha_bounds,
                                    std::pair<double, double> hi_bounds,
                                    std::vector<double> alpha_sweep);
  /// Piecewise-constant levels between fixed breakpoints.
  static TestFamily step_function(std::vector<double> breakpoints,
                                  std::pair<double, double> level_bounds);
  static TestFamily gaussian_bump(std::pair<double, double> center_bounds,
                                  std::pair<double, double> width_bounds);
  /// Values on the atoms of a finite discrete source space.
  static TestFamily grid_vector(std::size_t size);

  Kind kind() const { return kind_; }
  std::size_t param_count() const { return bounds_.size(); }
  const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }
  const std::vector<std::vector<double>>& sweep_starts() const { return sweep_starts_; }
  Func make(std::span<const double> params) const;
  const char* name() const;

 private:
  Kind kind_;
  std::vector<std::pair<double, double>> bounds_;
  std::vector<std::vector<double>> sweep_starts_;
  double support_lo_ = 0.0;
  std::vector<double> breakpoints_;
};

/// Maximizes lp_norm(target, Hf, p) / lq_norm(source, f, q) over the
/// family parameters by coordinate ascent within bounds, multi-started
/// from the pinned sweeps plus a seeded low-discrepancy fill. The result
/// is a true lower bound up to quadrature tolerance. `budget` caps the
/// number of ratio evaluations.
LowerBound empirical_norm_continuous(const OperatorInstance& op,
                                     const std::vector<TestFamily>& families, int budget,
                                     std::uint64_t seed, const QuadratureSpec& quad);

struct DivergenceReport {
  std::vector<double> eps;
  std::vector<double> values;
  bool monotone_growth = false;
};

/// Truncated evaluation of the defining integral at x for each eps in a
/// decreasing sequence; monotone_growth is set when every refinement grows
/// the value by >= 10% (the divergence criterion shared with mixed_norm).
DivergenceReport divergence_probe(const OperatorInstance& op, const Func& f, const Point& x,
                                  std::span<const double> eps_sequence,
                                  const QuadratureSpec& quad);

}  // namespace hausdorff

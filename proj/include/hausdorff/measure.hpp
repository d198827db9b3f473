#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hausdorff/common.hpp"

namespace hausdorff {

// ---------------------------------------------------------------------------
// Carriers and measure spaces
// ---------------------------------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool open_endpoints = false;
};

struct BoxCarrier {
  std::vector<double> lo, hi;  // dimension = lo.size(), <= Point::kMaxDim
};

/// Finite list of integer indices, optionally embedded as points of R^d
/// (one coordinate tuple per index). The embedding is what lets matrix
/// dilations act on discretized Euclidean point clouds.
struct CountableIndex {
  std::vector<long> indices;
  std::vector<Point> coords;  // empty, or one entry per index
};

struct FiniteGroupCarrier {
  int order = 1;  // elements are 0..order-1 under addition mod order
};

using Carrier = std::variant<Interval, BoxCarrier, CountableIndex, FiniteGroupCarrier>;

bool same_carrier(const Carrier& a, const Carrier& b);

enum class MeasureKind { lebesgue, counting, weighted_counting, normalized_haar_finite };

const char* measure_kind_name(MeasureKind k);

/// A carrier set together with a measure on it. Immutable after
/// construction; all operations are pure.
class MeasureSpace {
 public:
  static MeasureSpace lebesgue_interval(double lo, double hi, bool open_endpoints = false);
  static MeasureSpace lebesgue_box(std::vector<double> lo, std::vector<double> hi);
  static MeasureSpace counting(std::vector<long> indices);
  static MeasureSpace weighted_counting(std::vector<long> indices, std::vector<double> weights);
  /// Weighted counting measure on an embedded point cloud in R^d.
  static MeasureSpace weighted_point_cloud(std::vector<long> indices, std::vector<Point> coords,
                                           std::vector<double> weights);
  /// Normalized Haar measure (total mass 1) on the cyclic group Z_n.
  static MeasureSpace haar_cyclic(int order);

  const Carrier& carrier() const { return carrier_; }
  MeasureKind kind() const { return kind_; }
  bool sigma_finite() const { return sigma_finite_; }

  bool discrete() const;
  int dim() const;

  // Discrete access: atoms in fixed ascending-index order.
  std::size_t atom_count() const;
  Point atom(std::size_t i) const;
  double atom_weight(std::size_t i) const;
  /// Index of an atom by exact match (integer value, group element, or
  /// bit-identical embedded coordinates). Returns npos when absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_atom(const Point& p) const;

  /// Total mass, computed analytically (may be +inf for unbounded
  /// Lebesgue carriers).
  double total_mass() const;

  /// Carrier membership (measure-independent).
  bool contains(const Point& p) const;

  std::string describe() const;

 private:
  MeasureSpace(Carrier c, MeasureKind k, std::vector<double> weights);

  Carrier carrier_;
  MeasureKind kind_;
  std::vector<double> weights_;  // per-atom masses for discrete kinds
  bool sigma_finite_ = true;
};

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class Grading { uniform, geometric };

struct Truncation {
  double eps_low = 0.0;
  double cap_high = kInf;
};

struct QuadratureSpec {
  int node_budget = 4096;     // 1-D interval budget
  int box_axis_budget = 256;  // per-axis budget for boxes
  Grading grading = Grading::geometric;
  double grading_ratio = 0.5;  // in (0,1); segment scale toward the singular end
  std::optional<Truncation> truncation;
  double target_rel_tol = 1e-6;
};

/// A scalar function on a carrier. An optional box support makes the
/// function vanish outside it; 1-D breakpoints let the quadrature section
/// its mesh where the integrand is non-smooth.
struct Func {
  std::function<double(const Point&)> eval;
  std::optional<std::pair<double, double>> support;  // 1-D support [lo, hi]
  std::vector<double> breakpoints;                   // extra 1-D mesh boundaries

  double operator()(const Point& p) const {
    if (support && p.dim() == 1 && (p.x() < support->first || p.x() > support->second)) return 0.0;
    return eval(p);
  }

  std::vector<double> mesh_hints() const {
    std::vector<double> h = breakpoints;
    if (support) {
      h.push_back(support->first);
      h.push_back(support->second);
    }
    return h;
  }
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;  // Richardson comparison vs. half budget; 0 for discrete
  std::size_t nodes = 0;
};

/// Integral of `f` against the space's measure. Discrete kinds are exact
/// finite sums; continuous kinds use composite Simpson meshes (uniform,
/// dyadically graded toward a singular endpoint, or log-spaced when the
/// domain is truncated away from zero / capped).
///
/// Throws: tolerance_not_met when the Richardson estimate exceeds
/// target_rel_tol * |value|; non_finite_sample when the integrand returns
/// NaN/inf at a node; truncation_required on unbounded carriers without a
/// truncation.
IntegrationResult integrate(const MeasureSpace& space, const Func& f, const QuadratureSpec& quad);

/// (∫ |f|^p dnu)^{1/p}; for p = inf, the max of |f| over quadrature nodes
/// (a grid approximation of the essential sup from below) or over all
/// atoms of a discrete space (exact there).
double lp_norm(const MeasureSpace& space, const Func& f, double p, const QuadratureSpec& quad);

/// Interval quadrature nodes/weights, exposed for grid evaluation (the
/// probe grids of sup-type norms reuse them).
struct NodeSet {
  std::vector<double> x, w;
};
NodeSet interval_nodes(const Interval& iv, const QuadratureSpec& quad, int budget,
                       std::span<const double> mesh_hints);

}  // namespace hausdorff

#include "hausdorff/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace hausdorff {

const char* measure_kind_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::lebesgue: return "lebesgue";
    case MeasureKind::counting: return "counting";
    case MeasureKind::weighted_counting: return "weighted_counting";
    case MeasureKind::normalized_haar_finite: return "haar";
  }
  return "?";
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::tolerance_not_met: return "TOLERANCE_NOT_MET";
    case Errc::non_finite_sample: return "NON_FINITE_SAMPLE";
    case Errc::out_of_carrier: return "OUT_OF_CARRIER";
    case Errc::preimage_unavailable: return "PREIMAGE_UNAVAILABLE";
    case Errc::not_finite_discrete: return "NOT_FINITE_DISCRETE";
    case Errc::singular_matrix: return "SINGULAR_MATRIX";
    case Errc::hypotheses_violated: return "HYPOTHESES_VIOLATED";
    case Errc::no_convergence: return "NO_CONVERGENCE";
    case Errc::empty_family: return "EMPTY_FAMILY";
    case Errc::config_invalid: return "CONFIG_INVALID";
    case Errc::divergent: return "DIVERGENT";
    case Errc::truncation_required: return "TRUNCATION_REQUIRED";
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// MeasureSpace
// ---------------------------------------------------------------------------

MeasureSpace::MeasureSpace(Carrier c, MeasureKind k, std::vector<double> weights)
    : carrier_(std::move(c)), kind_(k), weights_(std::move(weights)) {}

MeasureSpace MeasureSpace::lebesgue_interval(double lo, double hi, bool open_endpoints) {
  if (!(lo < hi)) throw Error(Errc::invalid_argument, "interval requires lo < hi");
  return MeasureSpace(Interval{lo, hi, open_endpoints}, MeasureKind::lebesgue, {});
}

MeasureSpace MeasureSpace::lebesgue_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size() || lo.size() > Point::kMaxDim)
    throw Error(Errc::invalid_argument, "box requires matching lo/hi of dimension 1..4");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) throw Error(Errc::invalid_argument, "box requires lo < hi per axis");
  return MeasureSpace(BoxCarrier{std::move(lo), std::move(hi)}, MeasureKind::lebesgue, {});
}

MeasureSpace MeasureSpace::counting(std::vector<long> indices) {
  std::vector<double> w(indices.size(), 1.0);
  return MeasureSpace(CountableIndex{std::move(indices), {}}, MeasureKind::counting, std::move(w));
}

MeasureSpace MeasureSpace::weighted_counting(std::vector<long> indices, std::vector<double> weights) {
  if (indices.size() != weights.size())
    throw Error(Errc::invalid_argument, "weighted counting needs one weight per index");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(Errc::invalid_argument, "weighted counting weights must be positive and finite");
  return MeasureSpace(CountableIndex{std::move(indices), {}}, MeasureKind::weighted_counting,
                      std::move(weights));
}

MeasureSpace MeasureSpace::weighted_point_cloud(std::vector<long> indices, std::vector<Point> coords,
                                                std::vector<double> weights) {
  if (indices.size() != weights.size() || indices.size() != coords.size())
    throw Error(Errc::invalid_argument, "point cloud needs one coord and weight per index");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(Errc::invalid_argument, "point cloud weights must be positive and finite");
  return MeasureSpace(CountableIndex{std::move(indices), std::move(coords)},
                      MeasureKind::weighted_counting, std::move(weights));
}

MeasureSpace MeasureSpace::haar_cyclic(int order) {
  if (order < 1) throw Error(Errc::invalid_argument, "group order must be positive");
  std::vector<double> w(static_cast<std::size_t>(order), 1.0 / order);
  return MeasureSpace(FiniteGroupCarrier{order}, MeasureKind::normalized_haar_finite, std::move(w));
}

bool MeasureSpace::discrete() const {
  return std::holds_alternative<CountableIndex>(carrier_) ||
         std::holds_alternative<FiniteGroupCarrier>(carrier_);
}

int MeasureSpace::dim() const {
  if (const auto* b = std::get_if<BoxCarrier>(&carrier_)) return static_cast<int>(b->lo.size());
  if (const auto* ci = std::get_if<CountableIndex>(&carrier_))
    return ci->coords.empty() ? 1 : ci->coords.front().dim();
  return 1;
}

std::size_t MeasureSpace::atom_count() const {
  if (const auto* ci = std::get_if<CountableIndex>(&carrier_)) return ci->indices.size();
  if (const auto* g = std::get_if<FiniteGroupCarrier>(&carrier_))
    return static_cast<std::size_t>(g->order);
  throw Error(Errc::not_finite_discrete, "atoms requested on a continuous space");
}

Point MeasureSpace::atom(std::size_t i) const {
  if (const auto* ci = std::get_if<CountableIndex>(&carrier_)) {
    if (!ci->coords.empty()) return ci->coords[i];
    return Point::index(ci->indices[i]);
  }
  if (std::holds_alternative<FiniteGroupCarrier>(carrier_))
    return Point::index(static_cast<long>(i));
  throw Error(Errc::not_finite_discrete, "atoms requested on a continuous space");
}

double MeasureSpace::atom_weight(std::size_t i) const { return weights_[i]; }

namespace {
std::uint64_t point_key(const Point& p) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(p.dim());
  for (double c : p.coords()) {
    std::uint64_t b = std::bit_cast<std::uint64_t>(c == 0.0 ? 0.0 : c);  // fold -0.0 into +0.0
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
}  // namespace

std::size_t MeasureSpace::find_atom(const Point& p) const {
  if (const auto* g = std::get_if<FiniteGroupCarrier>(&carrier_)) {
    const long k = p.idx();
    if (k < 0 || k >= g->order) return npos;
    return static_cast<std::size_t>(k);
  }
  const auto* ci = std::get_if<CountableIndex>(&carrier_);
  if (ci == nullptr) return npos;
  if (ci->coords.empty()) {
    const long k = p.idx();
    for (std::size_t i = 0; i < ci->indices.size(); ++i)
      if (ci->indices[i] == k) return i;
    return npos;
  }
  // Embedded point cloud: exact (bitwise) coordinate match.
  for (std::size_t i = 0; i < ci->coords.size(); ++i)
    if (point_key(ci->coords[i]) == point_key(p) && ci->coords[i] == p) return i;
  return npos;
}

double MeasureSpace::total_mass() const {
  switch (kind_) {
    case MeasureKind::lebesgue: {
      if (const auto* iv = std::get_if<Interval>(&carrier_)) return iv->hi - iv->lo;
      const auto& b = std::get<BoxCarrier>(carrier_);
      double v = 1.0;
      for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
      return v;
    }
    case MeasureKind::counting:
      return static_cast<double>(atom_count());
    case MeasureKind::weighted_counting:
      return pairwise_sum(weights_);
    case MeasureKind::normalized_haar_finite:
      return 1.0;
  }
  return 0.0;
}

bool MeasureSpace::contains(const Point& p) const {
  if (const auto* iv = std::get_if<Interval>(&carrier_)) {
    if (p.dim() != 1) return false;
    return iv->open_endpoints ? (p.x() > iv->lo && p.x() < iv->hi)
                              : (p.x() >= iv->lo && p.x() <= iv->hi);
  }
  if (const auto* b = std::get_if<BoxCarrier>(&carrier_)) {
    if (static_cast<std::size_t>(p.dim()) != b->lo.size()) return false;
    for (std::size_t i = 0; i < b->lo.size(); ++i)
      if (p[static_cast<int>(i)] < b->lo[i] || p[static_cast<int>(i)] > b->hi[i]) return false;
    return true;
  }
  return find_atom(p) != npos;
}

bool same_carrier(const Carrier& a, const Carrier& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ia = std::get_if<Interval>(&a)) {
    const auto& ib = std::get<Interval>(b);
    return ia->lo == ib.lo && ia->hi == ib.hi && ia->open_endpoints == ib.open_endpoints;
  }
  if (const auto* ba = std::get_if<BoxCarrier>(&a)) {
    const auto& bb = std::get<BoxCarrier>(b);
    return ba->lo == bb.lo && ba->hi == bb.hi;
  }
  if (const auto* ca = std::get_if<CountableIndex>(&a)) {
    const auto& cb = std::get<CountableIndex>(b);
    return ca->indices == cb.indices && ca->coords == cb.coords;
  }
  return std::get<FiniteGroupCarrier>(a).order == std::get<FiniteGroupCarrier>(b).order;
}

std::string MeasureSpace::describe() const {
  char buf[160];
  if (const auto* iv = std::get_if<Interval>(&carrier_)) {
    std::snprintf(buf, sizeof buf, "interval(%g,%g)%s %s", iv->lo, iv->hi,
                  iv->open_endpoints ? " open" : "", measure_kind_name(kind_));
  } else if (const auto* b = std::get_if<BoxCarrier>(&carrier_)) {
    std::snprintf(buf, sizeof buf, "box(d=%zu) %s", b->lo.size(), measure_kind_name(kind_));
  } else if (const auto* ci = std::get_if<CountableIndex>(&carrier_)) {
    std::snprintf(buf, sizeof buf, "index(n=%zu%s) %s", ci->indices.size(),
                  ci->coords.empty() ? "" : ", embedded", measure_kind_name(kind_));
  } else {
    const auto& g = std::get<FiniteGroupCarrier>(carrier_);
    std::snprintf(buf, sizeof buf, "Z_%d %s", g.order, measure_kind_name(kind_));
  }
  return buf;
}

// ---------------------------------------------------------------------------
// Interval meshes
// ---------------------------------------------------------------------------

namespace {

int odd_at_least(int n, int floor_n) { return std::max(n | 1, floor_n | 1); }

// Sections are split at integrand breakpoints, so endpoint nodes are
// nudged one ulp-scale step into the section: a jump sitting exactly on a
// section edge is then always sampled from the correct side.
constexpr double kEdgeNudge = 1e-13;

// Composite Simpson nodes/weights on [a, b] with n (odd, >= 3) nodes.
void append_simpson(std::vector<double>& xs, std::vector<double>& ws, double a, double b, int n) {
  n = odd_at_least(n, 3);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    double x = (i == 0) ? a + (b - a) * kEdgeNudge
                        : (i == n - 1 ? b - (b - a) * kEdgeNudge : a + i * h);
    double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    xs.push_back(x);
    ws.push_back(c * h / 3.0);
  }
}

// Simpson in y = ln x on [a, b] (0 < a < b); weights carry the Jacobian x.
void append_log_simpson(std::vector<double>& xs, std::vector<double>& ws, double a, double b, int n) {
  n = odd_at_least(n, 3);
  const double ya = std::log(a), yb = std::log(b);
  const double h = (yb - ya) / (n - 1);
  for (int i = 0; i < n; ++i) {
    double x = (i == 0) ? a * (1.0 + kEdgeNudge)
                        : (i == n - 1 ? b * (1.0 - kEdgeNudge) : std::exp(ya + i * h));
    double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    xs.push_back(x);
    ws.push_back(c * h / 3.0 * x);
  }
}

// Dyadic-style ladder on [0, b]: rungs [b*rho^{k+1}, b*rho^k] down to the
// relative floor 2^-52, each integrated by a small Simpson rule. The sliver
// [0, b*rho^L] is dropped, which truncates integrable endpoint
// singularities at machine scale.
void append_graded_ladder(std::vector<double>& xs, std::vector<double>& ws, double b, int n,
                          double rho) {
  const int levels = std::max(4, static_cast<int>(std::ceil(52.0 * std::log(2.0) / -std::log(rho))));
  const int per_rung = odd_at_least(n / levels, 5);
  std::vector<double> edges(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k)
    edges[static_cast<std::size_t>(k)] = b * std::pow(rho, levels - k);
  for (int k = 0; k < levels; ++k)
    append_simpson(xs, ws, edges[static_cast<std::size_t>(k)], edges[static_cast<std::size_t>(k) + 1],
                   per_rung);
}

}  // namespace

NodeSet interval_nodes(const Interval& iv, const QuadratureSpec& quad, int budget,
                       std::span<const double> mesh_hints) {
  double a = iv.lo, b = iv.hi;
  if (quad.truncation) {
    a = std::max(a, quad.truncation->eps_low);
    b = std::min(b, quad.truncation->cap_high);
  }
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(Errc::truncation_required,
                "unbounded interval requires a truncation [eps_low, cap_high]");
  NodeSet out;
  if (!(a < b)) return out;

  // Section boundaries: domain ends plus any interior mesh hints.
  std::vector<double> bounds{a, b};
  for (double h : mesh_hints)
    if (h > a && h < b) bounds.push_back(h);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  const bool geometric = quad.grading == Grading::geometric && a >= 0.0;

  // Budget split: proportional to each section's resolution demand
  // (log-width for geometric sections, plain width otherwise).
  const std::size_t nsec = bounds.size() - 1;
  std::vector<double> demand(nsec, 1.0);
  double total_demand = 0.0;
  for (std::size_t s = 0; s < nsec; ++s) {
    const double sa = bounds[s], sb = bounds[s + 1];
    if (geometric) {
      demand[s] = (sa == 0.0) ? 52.0 * std::log(2.0) : std::log(sb / sa) + 1.0;
    } else {
      demand[s] = sb - sa;
    }
    total_demand += demand[s];
  }

  for (std::size_t s = 0; s < nsec; ++s) {
    const double sa = bounds[s], sb = bounds[s + 1];
    const int n = std::max(17, static_cast<int>(budget * demand[s] / total_demand));
    if (!geometric) {
      append_simpson(out.x, out.w, sa, sb, n);
    } else if (sa == 0.0) {
      append_graded_ladder(out.x, out.w, sb, n, quad.grading_ratio);
    } else {
      append_log_simpson(out.x, out.w, sa, sb, n);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// integrate / lp_norm
// ---------------------------------------------------------------------------

namespace {

double sum_nodes(const MeasureSpace& space, const NodeSet& nodes, const Func& f) {
  std::vector<double> terms(nodes.x.size());
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const Point p(nodes.x[i]);
    const double v = f(p);
    if (!std::isfinite(v)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "integrand non-finite at node %.17g", nodes.x[i]);
      throw Error(Errc::non_finite_sample, buf);
    }
    terms[i] = nodes.w[i] * v;
  }
  (void)space;
  return pairwise_sum(terms);
}

IntegrationResult integrate_interval(const MeasureSpace& space, const Interval& iv, const Func& f,
                                     const QuadratureSpec& quad) {
  const auto hints = f.mesh_hints();
  const NodeSet full = interval_nodes(iv, quad, quad.node_budget, hints);
  const NodeSet half = interval_nodes(iv, quad, std::max(quad.node_budget / 2, 16), hints);
  IntegrationResult r;
  r.value = sum_nodes(space, full, f);
  // Richardson estimate for the fine value: the rules are all fourth
  // order, so the budget/2 comparison overstates its error by ~15x.
  r.error_estimate = std::abs(r.value - sum_nodes(space, half, f)) / 15.0;
  r.nodes = full.x.size();
  if (r.error_estimate > quad.target_rel_tol * std::max(std::abs(r.value), 1e-12)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "richardson estimate %.3g exceeds rel tol %.3g (value %.6g)",
                  r.error_estimate, quad.target_rel_tol, r.value);
    throw Error(Errc::tolerance_not_met, buf);
  }
  return r;
}

double box_pass(const BoxCarrier& box, const Func& f, int per_axis) {
  const int d = static_cast<int>(box.lo.size());
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(d)), ws(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    append_simpson(xs[static_cast<std::size_t>(k)], ws[static_cast<std::size_t>(k)],
                   box.lo[static_cast<std::size_t>(k)], box.hi[static_cast<std::size_t>(k)],
                   per_axis);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> terms;
  terms.reserve(xs[0].size());
  Point p = Point::from_span(std::vector<double>(static_cast<std::size_t>(d), 0.0));
  for (;;) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      p[k] = xs[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
      w *= ws[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]];
    }
    const double v = f(p);
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_sample, "integrand non-finite at a box node");
    terms.push_back(w * v);
    int k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == xs[static_cast<std::size_t>(k)].size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return pairwise_sum(terms);
}

IntegrationResult integrate_box(const BoxCarrier& box, const Func& f, const QuadratureSpec& quad) {
  for (double v : box.lo)
    if (!std::isfinite(v)) throw Error(Errc::truncation_required, "unbounded box carrier");
  for (double v : box.hi)
    if (!std::isfinite(v)) throw Error(Errc::truncation_required, "unbounded box carrier");
  IntegrationResult r;
  r.value = box_pass(box, f, quad.box_axis_budget);
  const double coarse = box_pass(box, f, std::max(quad.box_axis_budget / 2, 5));
  r.error_estimate = std::abs(r.value - coarse) / 15.0;
  r.nodes = static_cast<std::size_t>(
      std::pow(static_cast<double>(quad.box_axis_budget | 1), box.lo.size()));
  if (r.error_estimate > quad.target_rel_tol * std::max(std::abs(r.value), 1e-12))
    throw Error(Errc::tolerance_not_met, "box quadrature tolerance not met");
  return r;
}

}  // namespace

IntegrationResult integrate(const MeasureSpace& space, const Func& f, const QuadratureSpec& quad) {
  if (space.discrete()) {
    const std::size_t n = space.atom_count();
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = f(space.atom(i));
      if (!std::isfinite(v))
        throw Error(Errc::non_finite_sample, "integrand non-finite at a discrete atom");
      terms[i] = space.atom_weight(i) * v;
    }
    return IntegrationResult{pairwise_sum(terms), 0.0, n};
  }
  if (const auto* iv = std::get_if<Interval>(&space.carrier()))
    return integrate_interval(space, *iv, f, quad);
  return integrate_box(std::get<BoxCarrier>(space.carrier()), f, quad);
}

double lp_norm(const MeasureSpace& space, const Func& f, double p, const QuadratureSpec& quad) {
  if (!(p >= 1.0)) throw Error(Errc::invalid_argument, "lp_norm requires p >= 1");
  if (p == kInf) {
    double m = 0.0;
    if (space.discrete()) {
      for (std::size_t i = 0; i < space.atom_count(); ++i)
        m = std::max(m, std::abs(f(space.atom(i))));
      return m;
    }
    if (const auto* iv = std::get_if<Interval>(&space.carrier())) {
      const NodeSet nodes = interval_nodes(*iv, quad, quad.node_budget, f.mesh_hints());
      for (double x : nodes.x) m = std::max(m, std::abs(f(Point(x))));
      return m;
    }
    throw Error(Errc::invalid_argument, "sup norm on boxes is not supported");
  }
  // |f|^p inherits f's support clamp through the inner call; the support
  // edges survive as mesh hints so sections still break there.
  Func powf;
  const Func* base = &f;
  powf.eval = [base, p](const Point& x) { return std::pow(std::abs((*base)(x)), p); };
  powf.breakpoints = f.mesh_hints();
  const double v = integrate(space, powf, quad).value;
  return std::pow(v, 1.0 / p);
}

}  // namespace hausdorff

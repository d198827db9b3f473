#include "hausdorff/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hausdorff {

long gcd_long(long a, long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------------------
// SmallMatrix
// ---------------------------------------------------------------------------

SmallMatrix SmallMatrix::identity(int d) {
  SmallMatrix m;
  m.d = d;
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::scalar(int d, double s) {
  SmallMatrix m;
  m.d = d;
  for (int i = 0; i < d; ++i) m.at(i, i) = s;
  return m;
}

SmallMatrix SmallMatrix::from_rows(int d, std::span<const double> entries) {
  if (d < 1 || d > Point::kMaxDim || entries.size() != static_cast<std::size_t>(d) * d)
    throw Error(Errc::invalid_argument, "matrix entries must be d*d with d in [1,4]");
  SmallMatrix m;
  m.d = d;
  std::copy(entries.begin(), entries.end(), m.a.begin());
  return m;
}

double SmallMatrix::det() const {
  std::array<double, 16> u = a;
  auto at = [&](int r, int c) -> double& { return u[static_cast<std::size_t>(r * d + c)]; };
  double det = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int r = k + 1; r < d; ++r)
      if (std::abs(at(r, k)) > std::abs(at(piv, k))) piv = r;
    if (at(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int c = k; c < d; ++c) std::swap(at(piv, c), at(k, c));
      det = -det;
    }
    det *= at(k, k);
    for (int r = k + 1; r < d; ++r) {
      const double f = at(r, k) / at(k, k);
      for (int c = k; c < d; ++c) at(r, c) -= f * at(k, c);
    }
  }
  return det;
}

Point SmallMatrix::apply(const Point& x) const {
  if (x.dim() != d) throw Error(Errc::invalid_argument, "matrix/point dimension mismatch");
  Point y = x;
  for (int r = 0; r < d; ++r) {
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += at(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Point SmallMatrix::solve(const Point& b) const {
  if (b.dim() != d) throw Error(Errc::invalid_argument, "matrix/point dimension mismatch");
  std::array<double, 16> u = a;
  std::array<double, 4> rhs{};
  for (int i = 0; i < d; ++i) rhs[static_cast<std::size_t>(i)] = b[i];
  auto at = [&](int r, int c) -> double& { return u[static_cast<std::size_t>(r * d + c)]; };
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int r = k + 1; r < d; ++r)
      if (std::abs(at(r, k)) > std::abs(at(piv, k))) piv = r;
    if (at(piv, k) == 0.0) throw Error(Errc::singular_matrix, "singular matrix in solve");
    if (piv != k) {
      for (int c = k; c < d; ++c) std::swap(at(piv, c), at(k, c));
      std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(k)]);
    }
    for (int r = k + 1; r < d; ++r) {
      const double f = at(r, k) / at(k, k);
      for (int c = k; c < d; ++c) at(r, c) -= f * at(k, c);
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(k)];
    }
  }
  Point x = b;
  for (int r = d - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < d; ++c) s -= at(r, c) * x[c];
    x[r] = s / at(r, r);
  }
  return x;
}

double BoxSet::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

// ---------------------------------------------------------------------------
// MapFamily
// ---------------------------------------------------------------------------

MapFamily::MapFamily(Kind k, MeasureSpace domain, MeasureSpace codomain)
    : kind_(k), domain_(std::move(domain)), codomain_(std::move(codomain)) {}

MapFamily MapFamily::scalar_dilation(int dim, MeasureSpace domain, MeasureSpace codomain) {
  if (dim < 1 || dim > Point::kMaxDim)
    throw Error(Errc::invalid_argument, "dilation dimension must be in [1,4]");
  MapFamily f(Kind::scalar_dilation, std::move(domain), std::move(codomain));
  f.dilation_dim_ = dim;
  return f;
}

MapFamily MapFamily::matrix_dilation(std::vector<long> omega_index,
                                     std::vector<SmallMatrix> matrices, MeasureSpace domain,
                                     MeasureSpace codomain) {
  if (omega_index.size() != matrices.size())
    throw Error(Errc::invalid_argument, "one matrix per omega index required");
  for (const auto& m : matrices)
    if (m.det() == 0.0 || !std::isfinite(m.det()))
      throw Error(Errc::singular_matrix, "matrix dilation requires invertible matrices");
  MapFamily f(Kind::matrix_dilation, std::move(domain), std::move(codomain));
  f.dilation_dim_ = matrices.front().d;
  f.omega_index_ = std::move(omega_index);
  f.matrices_ = std::move(matrices);
  return f;
}

MapFamily MapFamily::cyclic_automorphism(std::vector<long> multipliers, MeasureSpace domain,
                                         MeasureSpace codomain) {
  const auto* g = std::get_if<FiniteGroupCarrier>(&domain.carrier());
  if (g == nullptr)
    throw Error(Errc::invalid_argument, "cyclic automorphisms need a finite group carrier");
  const int n = g->order;
  for (long k : multipliers)
    if (gcd_long(k, n) != 1)
      throw Error(Errc::invalid_argument, "multiplier must be a unit mod group order");
  MapFamily f(Kind::cyclic_automorphism, std::move(domain), std::move(codomain));
  f.group_order_ = n;
  f.multipliers_ = std::move(multipliers);
  return f;
}

MapFamily MapFamily::custom(std::function<Point(const Point&, const Point&)> apply,
                            std::function<double(const Point&)> m, MeasureSpace domain,
                            MeasureSpace codomain,
                            std::function<double(const Point&, const BoxSet&)> preimage_measure) {
  MapFamily f(Kind::custom, std::move(domain), std::move(codomain));
  f.custom_apply_ = std::move(apply);
  f.custom_m_ = std::move(m);
  f.custom_preimage_ = std::move(preimage_measure);
  return f;
}

namespace {
const SmallMatrix& matrix_for(const std::vector<long>& index, const std::vector<SmallMatrix>& mats,
                              long k) {
  for (std::size_t i = 0; i < index.size(); ++i)
    if (index[i] == k) return mats[i];
  throw Error(Errc::invalid_argument, "omega index has no matrix");
}

Point scale_point(const Point& x, double s) {
  Point p = x;
  for (int i = 0; i < x.dim(); ++i) p[i] = s * x[i];
  return p;
}
}  // namespace

Point MapFamily::apply(const Point& u, const Point& x) const {
  Point y;
  switch (kind_) {
    case Kind::scalar_dilation: {
      y = x;
      for (int i = 0; i < x.dim(); ++i) y[i] = u.x() * x[i];
      break;
    }
    case Kind::matrix_dilation: {
      y = matrix_for(omega_index_, matrices_, u.idx()).apply(x);
      break;
    }
    case Kind::cyclic_automorphism: {
      const long n = group_order_;
      y = Point::index((((u.idx() % n) * (x.idx() % n)) % n + n) % n);
      break;
    }
    case Kind::custom:
      y = custom_apply_(u, x);
      break;
  }
  if (!codomain_.contains(y)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "image left the codomain carrier (enlarge it or give f explicit support)");
    throw Error(Errc::out_of_carrier, buf);
  }
  return y;
}

double MapFamily::agreement_factor(const Point& u) const {
  switch (kind_) {
    case Kind::scalar_dilation:
      return std::pow(std::abs(u.x()), dilation_dim_);
    case Kind::matrix_dilation:
      return std::abs(matrix_for(omega_index_, matrices_, u.idx()).det());
    case Kind::cyclic_automorphism:
      return 1.0;
    case Kind::custom: {
      const double m = custom_m_(u);
      if (!(m > 0.0) || !std::isfinite(m))
        throw Error(Errc::invalid_argument, "custom agreement factor must be positive");
      return m;
    }
  }
  return 1.0;
}

std::vector<double> MapFamily::omega_breakpoints(
    const Point& x, const std::optional<std::pair<double, double>>& f_support) const {
  std::vector<double> bps;
  if (kind_ == Kind::scalar_dilation && f_support && x.dim() == 1 && x.x() > 0.0) {
    bps.push_back(f_support->first / x.x());
    bps.push_back(f_support->second / x.x());
  }
  return bps;
}

// ---------------------------------------------------------------------------
// Weak-agreement verification
// ---------------------------------------------------------------------------

namespace {

struct Window {
  std::vector<double> lo, hi;
};

// Bounded probe window inside a (possibly unbounded) Euclidean carrier.
Window probe_window(const MeasureSpace& space) {
  Window w;
  if (const auto* iv = std::get_if<Interval>(&space.carrier())) {
    w.lo = {std::max(iv->lo, -16.0)};
    w.hi = {std::min(iv->hi, 16.0)};
  } else if (const auto* b = std::get_if<BoxCarrier>(&space.carrier())) {
    for (std::size_t i = 0; i < b->lo.size(); ++i) {
      w.lo.push_back(std::max(b->lo[i], -16.0));
      w.hi.push_back(std::min(b->hi[i], 16.0));
    }
  } else {
    throw Error(Errc::invalid_argument, "probe window needs a Euclidean carrier");
  }
  return w;
}

BoxSet random_box(Rng& rng, const Window& w) {
  BoxSet e;
  for (std::size_t i = 0; i < w.lo.size(); ++i) {
    const double c1 = rng.uniform(w.lo[i], w.hi[i]);
    const double c2 = rng.uniform(w.lo[i], w.hi[i]);
    e.lo.push_back(std::min(c1, c2));
    e.hi.push_back(std::max(c1, c2));
  }
  return e;
}

// Lebesgue measure of box intersected with an interval/box carrier.
double clipped_volume(const BoxSet& e, const MeasureSpace& space) {
  double v = 1.0;
  if (const auto* iv = std::get_if<Interval>(&space.carrier())) {
    const double lo = std::max(e.lo[0], iv->lo), hi = std::min(e.hi[0], iv->hi);
    return std::max(0.0, hi - lo);
  }
  const auto& b = std::get<BoxCarrier>(space.carrier());
  for (std::size_t i = 0; i < e.lo.size(); ++i) {
    const double lo = std::max(e.lo[i], b.lo[i]), hi = std::min(e.hi[i], b.hi[i]);
    if (!(hi > lo)) return 0.0;
    v *= hi - lo;
  }
  return v;
}

bool in_box(const BoxSet& e, const Point& p) {
  for (std::size_t i = 0; i < e.lo.size(); ++i)
    if (p[static_cast<int>(i)] < e.lo[i] || p[static_cast<int>(i)] > e.hi[i]) return false;
  return true;
}

bool unbounded_euclidean(const MeasureSpace& s) {
  if (const auto* b = std::get_if<BoxCarrier>(&s.carrier())) {
    for (std::size_t i = 0; i < b->lo.size(); ++i)
      if (std::isfinite(b->lo[i]) || std::isfinite(b->hi[i])) return false;
    return true;
  }
  return false;
}

}  // namespace

double MapFamily::codomain_set_mass(const BoxSet& e) const { return clipped_volume(e, codomain_); }

double MapFamily::preimage_mass(const Point& u, const BoxSet& e) const {
  switch (kind_) {
    case Kind::scalar_dilation: {
      // Preimage of a box under x -> u x is the box scaled by 1/u.
      const double s = u.x();
      BoxSet pre;
      for (std::size_t i = 0; i < e.lo.size(); ++i) {
        const double a = e.lo[i] / s, b = e.hi[i] / s;
        pre.lo.push_back(std::min(a, b));
        pre.hi.push_back(std::max(a, b));
      }
      return clipped_volume(pre, domain_);
    }
    case Kind::matrix_dilation: {
      if (!unbounded_euclidean(domain_))
        throw Error(Errc::preimage_unavailable,
                    "matrix-dilation preimage measure needs a full Euclidean domain");
      return e.volume() / std::abs(matrix_for(omega_index_, matrices_, u.idx()).det());
    }
    case Kind::custom:
      if (!custom_preimage_)
        throw Error(Errc::preimage_unavailable, "custom family lacks a closed-form preimage");
      return custom_preimage_(u, e);
    case Kind::cyclic_automorphism:
      throw Error(Errc::invalid_argument, "box preimage undefined on group carriers");
  }
  return 0.0;
}

AgreementReport MapFamily::verify_agreement(const Point& u, int trials, std::uint64_t seed,
                                            AgreementMethod method) const {
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
  Rng rng(seed);
  AgreementReport rep;
  rep.samples = trials;
  rep.method = method == AgreementMethod::exact ? "exact" : "monte_carlo";
  const double m = agreement_factor(u);
  const double eps = std::numeric_limits<double>::epsilon();

  if (domain_.discrete()) {
    // Random subsets of the discrete codomain; preimages by enumeration.
    for (int t = 0; t < trials; ++t) {
      std::vector<bool> in(codomain_.atom_count());
      double rhs_mass = 0.0;
      for (std::size_t j = 0; j < in.size(); ++j) {
        in[j] = (rng.next() & 1u) != 0;
        if (in[j]) rhs_mass += codomain_.atom_weight(j);
      }
      double pre_mass = 0.0;
      for (std::size_t i = 0; i < domain_.atom_count(); ++i) {
        const std::size_t j = codomain_.find_atom(apply(u, domain_.atom(i)));
        if (j != MeasureSpace::npos && in[j]) pre_mass += domain_.atom_weight(i);
      }
      const double rhs = rhs_mass / m;
      rep.max_violation = std::max(rep.max_violation, pre_mass - rhs);
      rep.noise_bound =
          std::max(rep.noise_bound, 4.0 * eps * std::max(std::abs(pre_mass), std::abs(rhs)));

      // Integral form with a random nonnegative g on the codomain atoms.
      double lhs_g = 0.0, rhs_g = 0.0;
      std::vector<double> g(codomain_.atom_count());
      for (auto& v : g) v = rng.uniform(0.0, 2.0);
      for (std::size_t j = 0; j < g.size(); ++j) rhs_g += g[j] * codomain_.atom_weight(j);
      for (std::size_t i = 0; i < domain_.atom_count(); ++i) {
        const std::size_t j = codomain_.find_atom(apply(u, domain_.atom(i)));
        if (j != MeasureSpace::npos) lhs_g += g[j] * domain_.atom_weight(i);
      }
      rhs_g /= m;
      rep.max_violation = std::max(rep.max_violation, lhs_g - rhs_g);
      rep.noise_bound =
          std::max(rep.noise_bound, 4.0 * eps * static_cast<double>(g.size()) *
                                        std::max(std::abs(lhs_g), std::abs(rhs_g)));
    }
    return rep;
  }

  const Window w = probe_window(codomain_);
  const int mc_samples = 20000;
  for (int t = 0; t < trials; ++t) {
    const BoxSet e = random_box(rng, w);
    const double rhs = codomain_set_mass(e) / m;
    double lhs = 0.0;
    if (method == AgreementMethod::exact) {
      lhs = preimage_mass(u, e);
      rep.noise_bound =
          std::max(rep.noise_bound, 4.0 * eps * std::max(std::abs(lhs), std::abs(rhs)));
    } else {
      // Count uniform samples of the preimage bounding box that land in E.
      BoxSet bb;
      if (kind_ == Kind::scalar_dilation || kind_ == Kind::matrix_dilation) {
        // Map the corners of E back through A(u)^{-1} and take their hull.
        const int d = static_cast<int>(e.lo.size());
        bb.lo.assign(e.lo.size(), kInf);
        bb.hi.assign(e.lo.size(), -kInf);
        for (int mask = 0; mask < (1 << d); ++mask) {
          Point corner = Point::from_span(std::vector<double>(e.lo.size(), 0.0));
          for (int i = 0; i < d; ++i)
            corner[i] = (mask >> i & 1) ? e.hi[static_cast<std::size_t>(i)]
                                        : e.lo[static_cast<std::size_t>(i)];
          const Point pre = kind_ == Kind::scalar_dilation
                                ? scale_point(corner, 1.0 / u.x())
                                : matrix_for(omega_index_, matrices_, u.idx()).solve(corner);
          for (int i = 0; i < d; ++i) {
            bb.lo[static_cast<std::size_t>(i)] = std::min(bb.lo[static_cast<std::size_t>(i)], pre[i]);
            bb.hi[static_cast<std::size_t>(i)] = std::max(bb.hi[static_cast<std::size_t>(i)], pre[i]);
          }
        }
      } else {
        throw Error(Errc::preimage_unavailable, "monte-carlo path needs an affine built-in family");
      }
      const double vol = bb.volume();
      int hits = 0;
      for (int s = 0; s < mc_samples; ++s) {
        Point x = Point::from_span(std::vector<double>(e.lo.size(), 0.0));
        for (std::size_t i = 0; i < e.lo.size(); ++i)
          x[static_cast<int>(i)] = rng.uniform(bb.lo[i], bb.hi[i]);
        if (!domain_.contains(x)) continue;
        const Point y = kind_ == Kind::scalar_dilation
                            ? scale_point(x, u.x())
                            : matrix_for(omega_index_, matrices_, u.idx()).apply(x);
        if (in_box(e, y)) ++hits;
      }
      const double frac = static_cast<double>(hits) / mc_samples;
      lhs = vol * frac;
      const double sigma = vol * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) / mc_samples);
      rep.noise_bound = std::max(rep.noise_bound, 3.0 * sigma);
    }
    rep.max_violation = std::max(rep.max_violation, lhs - rhs);

    if (method == AgreementMethod::exact) {
      // Integral form: random nonnegative simple function built from boxes.
      double lhs_g = 0.0, rhs_g = 0.0, scale = 0.0;
      for (int j = 0; j < 3; ++j) {
        const BoxSet ej = random_box(rng, w);
        const double c = rng.uniform(0.0, 2.0);
        lhs_g += c * preimage_mass(u, ej);
        rhs_g += c * codomain_set_mass(ej);
        scale += c * codomain_set_mass(ej);
      }
      rhs_g /= m;
      rep.max_violation = std::max(rep.max_violation, lhs_g - rhs_g);
      rep.noise_bound = std::max(rep.noise_bound, 16.0 * eps * std::max(scale / m, lhs_g));
    }
  }
  return rep;
}

}  // namespace hausdorff

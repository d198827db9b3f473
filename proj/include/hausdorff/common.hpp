#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace hausdorff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Error codes surfaced by the library. Every failure mode carries one of
/// these so callers (and the CLI) can react without string matching.
enum class Errc {
  tolerance_not_met,
  non_finite_sample,
  out_of_carrier,
  preimage_unavailable,
  not_finite_discrete,
  singular_matrix,
  hypotheses_violated,
  no_convergence,
  empty_family,
  config_invalid,
  divergent,
  truncation_required,
  invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string("[") + errc_name(code) + "] " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// A point of a carrier set: a scalar, a small real vector (dim <= 4), or a
/// discrete index stored as an exactly-representable integer value.
class Point {
 public:
  static constexpr int kMaxDim = 4;

  Point() = default;
  explicit Point(double x) : n_(1) { c_[0] = x; }
  Point(std::initializer_list<double> xs) {
    if (xs.size() == 0 || xs.size() > kMaxDim)
      throw Error(Errc::invalid_argument, "point dimension must be in [1,4]");
    n_ = static_cast<int>(xs.size());
    int i = 0;
    for (double v : xs) c_[i++] = v;
  }
  static Point from_span(std::span<const double> xs) {
    Point p;
    if (xs.empty() || xs.size() > kMaxDim)
      throw Error(Errc::invalid_argument, "point dimension must be in [1,4]");
    p.n_ = static_cast<int>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) p.c_[i] = xs[i];
    return p;
  }
  static Point index(long k) { return Point(static_cast<double>(k)); }

  int dim() const { return n_; }
  double x() const { return c_[0]; }
  long idx() const { return static_cast<long>(std::llround(c_[0])); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(n_)}; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.c_[static_cast<std::size_t>(i)] != b.c_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

/// Ascending-index pairwise tree reduction. All integration sums in the
/// library go through this, so serial and (hypothetically) parallel runs
/// produce identical bits. Chunks of <= 8 are summed sequentially.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// xoshiro256** with splitmix64 seeding; self-contained so seeded runs are
/// reproducible across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive. Modulo bias is negligible for
  /// the small ranges used here and keeps the stream deterministic.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    // Marsaglia polar method, one cached deviate.
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cache_ = v * f;
    have_cache_ = true;
    return u * f;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double cache_ = 0.0;
  bool have_cache_ = false;
};

/// Distance in units-in-last-place between two doubles of the same sign.
inline double ulp_distance(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / std::ldexp(std::numeric_limits<double>::epsilon(), std::ilogb(scale));
}

}  // namespace hausdorff

#pragma once

// Shared small utilities: fixed-capacity coordinate vectors with runtime
// dimension, deterministic counter-based random streams, pairwise summation
// and a plain adaptive Simpson rule.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlpt {

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.14159265358979323846;

// Coordinates live in std::array<double,kMaxDim>; entries past the active
// dimension must stay zero so norms and dot products can ignore `dim`.
using Vec = std::array<double, kMaxDim>;

inline Vec make_vec(std::initializer_list<double> xs) {
  if (xs.size() > kMaxDim) throw std::invalid_argument("make_vec: dimension > 3");
  Vec v{0.0, 0.0, 0.0};
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vec vec_from(const std::vector<double>& xs) {
  if (xs.size() > kMaxDim) throw std::invalid_argument("vec_from: dimension > 3");
  Vec v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = xs[i];
  return v;
}

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double distance(const Vec& a, const Vec& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// |y - x|^{-(dim+1)}, the interaction kernel of the pair energy.
inline double pair_kernel(double r, int dim) {
  double p = r;
  for (int i = 0; i < dim; ++i) p *= r;
  return 1.0 / p;
}

// ---------------------------------------------------------------------------
// Deterministic counter-based random stream.  Every draw is a pure function
// of (seed, counter), so parallel consumers and reruns agree bit for bit.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(splitmix64(seed ^ splitmix64(stream * 0x9E3779B97F4A7C15ull + 1))) {}

  std::uint64_t next_u64() { return splitmix64(seed_ ^ splitmix64(counter_++)); }

  // Uniform in [0,1).
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

  // Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Pairwise (cascade) summation: accumulation order independent of chunking,
// error O(log n) ulp instead of O(n).

inline double pairwise_sum(const double* xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs, half) + pairwise_sum(xs + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& xs) {
  return pairwise_sum(xs.data(), xs.size());
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature for smooth 1-D integrands.

namespace detail {
inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = detail::simpson(a, b, fa, fm, fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

inline double relative_deviation(double value, double reference) {
  if (reference == 0.0) return std::abs(value);
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace nlpt

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace morsecover {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Malformed or inconsistent input (dimension mismatch, degenerate shape, bad
// parameter range).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented precondition or postcondition was violated at runtime.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// The requested shape/measure combination has no supported evaluation path.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

template <int D>
using Point = std::array<double, D>;

template <int D>
constexpr Point<D> zero_point() {
  Point<D> p{};
  p.fill(0.0);
  return p;
}

// Arithmetic on std::array<double, N>; templated on std::size_t so that
// deduction works for every Point<D>.
template <std::size_t N>
constexpr std::array<double, N> operator+(const std::array<double, N>& a,
                                          const std::array<double, N>& b) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
constexpr std::array<double, N> operator-(const std::array<double, N>& a,
                                          const std::array<double, N>& b) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
constexpr std::array<double, N> operator*(double s, const std::array<double, N>& a) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <int D>
constexpr double dot(const Point<D>& a, const Point<D>& b) {
  double s = 0.0;
  for (int i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <int D>
double euclidean(const Point<D>& a) {
  return std::sqrt(dot<D>(a, a));
}

// a + t (b - a)
template <int D>
constexpr Point<D> lerp(const Point<D>& a, const Point<D>& b, double t) {
  Point<D> r{};
  for (int i = 0; i < D; ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

template <int D>
bool all_finite(const Point<D>& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

// Relative geometric tolerance; predicates multiply it by the inner radius of
// the set they evaluate so that they are scale-invariant.
inline constexpr double kGeomTol = 1e-9;

// a <= b up to tol (ties count as equality).
inline bool leq_tol(double a, double b, double tol) { return a <= b + tol; }
// a < b, where |a - b| <= tol counts as equality.
inline bool lt_tol(double a, double b, double tol) { return a < b - tol; }

// ---------------------------------------------------------------------------
// Compensated summation (Neumaier)
// ---------------------------------------------------------------------------

class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Deterministic low-discrepancy samples
// ---------------------------------------------------------------------------

inline double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

inline constexpr std::array<unsigned, 8> kHaltonBases = {2, 3, 5, 7, 11, 13, 17, 19};

// Halton point in [0,1)^K; index 0 is skipped by callers that want to avoid
// the origin.
template <int K>
std::array<double, K> halton(std::uint64_t index) {
  static_assert(K <= static_cast<int>(kHaltonBases.size()));
  std::array<double, K> r{};
  for (int i = 0; i < K; ++i) r[i] = radical_inverse(index, kHaltonBases[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Output formatting
// ---------------------------------------------------------------------------

// All user-facing numbers go through this: 12 significant digits.
inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Value rounded to 12 significant digits (for structured output).
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt12(v));
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace morsecover

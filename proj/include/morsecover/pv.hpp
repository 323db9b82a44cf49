#pragma once

// Principal-value counterexample on the line: A_n = U((-1)^n/n, 1/(2n²)),
// Ω = ∪ A_n ∪ {0}, μ = Dirac(0) + Lebesgue on Ω, f = ((-1)^n/n)/μ(A_n) on A_n
// and f(0) = 0. A closed central ball B(0, ρ) absorbs the atom and every A_n
// it contains; the rest of each A_n is covered a.e. by closed balls inside it.

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <vector>

#include "morsecover/morse_set.hpp"

namespace morsecover {

struct PvRow {
  long n_balls = 0;
  double central_radius = 0.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  double outside_length = 0.0;  // Lebesgue mass covered outside the central ball
  double central_mass = 0.0;    // μ(B(0, ρ) ∩ Ω), atom included
};

namespace detail {

inline double pv_center(long n) { return (n % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n); }
inline double pv_radius(long n) { return 0.5 / (static_cast<double>(n) * static_cast<double>(n)); }
inline double pv_value(long n) { return (n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n); }

// Σ_{n > N} μ(A_n) = Σ_{n > N} 1/n² = ψ'(N + 1).
inline double pv_tail_mass(long n_balls) { return boost::math::trigamma(static_cast<double>(n_balls + 1)); }

// Part of A_n outside [-ρ, ρ] (A_n lies on one side of 0).
inline std::pair<double, double> pv_outside(long n, double rho) {
  const double c = pv_center(n), r = pv_radius(n);
  double a = c - r, b = c + r;
  if (c > 0.0) a = std::max(a, rho);
  else b = std::min(b, -rho);
  return {a, b};
}

}  // namespace detail

// Smallest central radius whose ball contains every A_n with n > n_balls.
inline double pv_tail_radius(long n_balls) {
  const double m = static_cast<double>(n_balls + 1);
  return 1.0 / m + 0.5 / (m * m);
}

inline void pv_check(long n_balls, double rho) {
  if (n_balls < 1) throw InputError("n_balls must be >= 1");
  if (!(rho > 0.0) || !(rho <= 1.0)) throw InputError("central radius must lie in (0,1]");
  if (rho < pv_tail_radius(n_balls) * (1.0 - 1e-15))
    throw ContractError("central ball of radius " + fmt12(rho) + " leaves A_n with n > " + std::to_string(n_balls) +
                        " uncovered (needs >= " + fmt12(pv_tail_radius(n_balls)) + ")");
  for (long n = 1; n <= n_balls; ++n) {
    const double gap = std::abs(detail::pv_center(n) - detail::pv_center(n + 2)) - detail::pv_radius(n) -
                       detail::pv_radius(n + 2);
    if (!(gap > 0.0)) throw ContractError("balls A_" + std::to_string(n) + " and A_" + std::to_string(n + 2) + " overlap");
  }
}

// Riemann sum of the a.e. cover in closed form: on A_n \ B(0, ρ) the value
// is constant, so every a.e. cover of that interval contributes f times its
// length.
inline PvRow pv_counterexample(long n_balls, double central_radius) {
  pv_check(n_balls, central_radius);
  PvRow row;
  row.n_balls = n_balls;
  row.central_radius = central_radius;
  CompensatedSum s, a, len, inside;
  inside.add(1.0);
  for (long n = 1; n <= n_balls; ++n) {
    const auto [lo, hi] = detail::pv_outside(n, central_radius);
    const double l = std::max(0.0, hi - lo);
    const double v = detail::pv_value(n);
    s.add(v * l);
    a.add(std::abs(v) * l);
    len.add(l);
    inside.add(2.0 * detail::pv_radius(n) - l);
  }
  row.sum = s.value();
  row.abs_sum = a.value();
  row.outside_length = len.value();
  row.central_mass = inside.value() + detail::pv_tail_mass(n_balls);
  return row;
}

// Rows for central radii r0, r0/2, ..., r0/2^halvings.
inline std::vector<PvRow> pv_halving(long n_balls, double r0, int halvings) {
  std::vector<PvRow> rows;
  double r = r0;
  for (int k = 0; k <= halvings; ++k, r *= 0.5) rows.push_back(pv_counterexample(n_balls, r));
  return rows;
}

struct PvCover {
  std::vector<MorseSet<1>> sets;
  std::vector<double> masses;  // μ(S)
  std::vector<double> values;  // f(tag)
};

// Explicit finite cover: the central ball plus, in each A_n \ B(0, ρ), closed
// balls at the midpoints of the remaining gaps shrunk by `theta`, `depth`
// levels deep; the uncovered length per piece is theta^depth of it.
inline PvCover pv_cover(long n_balls, double central_radius, int depth, double theta = 0.25) {
  pv_check(n_balls, central_radius);
  const Space<1> line;
  PvCover c;
  c.sets.push_back(MorseSet<1>::closed_ball(line, {0.0}, central_radius));
  c.values.push_back(0.0);
  double central = 1.0;
  for (long n = 1; n <= n_balls; ++n) {
    const auto [lo, hi] = detail::pv_outside(n, central_radius);
    central += 2.0 * detail::pv_radius(n) - std::max(0.0, hi - lo);
    if (!(hi > lo)) continue;
    std::vector<std::pair<double, double>> gaps{{lo, hi}};
    for (int d = 0; d < depth; ++d) {
      std::vector<std::pair<double, double>> next;
      for (const auto& [g0, g1] : gaps) {
        const double m = 0.5 * (g0 + g1), h = 0.5 * (g1 - g0) * (1.0 - theta);
        c.sets.push_back(MorseSet<1>::closed_ball(line, {m}, h));
        c.masses.push_back(2.0 * h);
        c.values.push_back(detail::pv_value(n));
        next.emplace_back(g0, m - h);
        next.emplace_back(m + h, g1);
      }
      gaps.swap(next);
    }
  }
  c.masses.insert(c.masses.begin(), central + detail::pv_tail_mass(n_balls));
  return c;
}

}  // namespace morsecover

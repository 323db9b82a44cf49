#pragma once

// Differentiation-basis and approximate-continuity diagnostics.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "morsecover/family.hpp"
#include "morsecover/measure.hpp"

namespace morsecover {

struct DiffRatio {
  double radius = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  double ratio = 0.0;   // NaN when flagged
  bool flagged = false; // μ(S) = 0
};

struct DiffQuotient {
  std::vector<DiffRatio> ratios;
  bool unbounded = false;  // ratios increase by more than 1e3 over the run
};

// ν(S)/μ(S) for family sets tagged at `a` with the given shrinking bounds.
template <int D>
DiffQuotient diff_quotient(const RadonMeasure<D>& nu, const RadonMeasure<D>& mu, const std::type_identity_t<Point<D>>& a,
                           const MorseFamily<D>& family, const std::vector<double>& shrink_radii) {
  DiffQuotient out;
  for (std::size_t i = 0; i < shrink_radii.size(); ++i) {
    if (i > 0 && !(shrink_radii[i] < shrink_radii[i - 1])) throw InputError("shrink radii must decrease");
    const MorseSet<D> s = family.make(a, shrink_radii[i]);
    DiffRatio r;
    r.radius = shrink_radii[i];
    r.nu = measure_of(nu, s).value;
    r.mu = measure_of(mu, s).value;
    r.flagged = !(r.mu > 0.0);
    r.ratio = r.flagged ? std::numeric_limits<double>::quiet_NaN() : r.nu / r.mu;
    out.ratios.push_back(r);
  }
  bool increasing = out.ratios.size() >= 2;
  for (std::size_t i = 1; i < out.ratios.size(); ++i)
    if (out.ratios[i].flagged || !(out.ratios[i].ratio > out.ratios[i - 1].ratio)) increasing = false;
  out.unbounded = increasing && out.ratios.back().ratio > 1e3 * std::max(out.ratios.front().ratio, 1e-300);
  return out;
}

struct Defect {
  double fraction = 0.0;  // μ(E(x,η)) / μ(S)
  double std_error = 0.0; // conservative stratified standard error
  std::size_t samples = 0;
};

// Estimates μ({y ∈ S : |f(x) - f(y)| > η}) / μ(S), x the tag of S. Atoms are
// exact; the density part uses one seeded sample per stratum of a grid over
// the bounding box.
template <int D>
Defect approx_cont_defect(const std::function<double(const Point<D>&)>& f, const RadonMeasure<D>& mu,
                          const MorseSet<D>& s, double eta, std::uint64_t seed = 0, int strata_per_axis = 0) {
  const double total = measure_of(mu, s).value;
  if (!(total > 0.0)) throw ContractError("defect undefined: the set has zero measure");
  if (strata_per_axis <= 0) strata_per_axis = D == 1 ? 4096 : D == 2 ? 96 : D == 3 ? 24 : 8;
  const double fx = f(s.tag());
  auto bad = [&](const Point<D>& y) { return std::abs(f(y) - fx) > eta; };

  double bad_mass = 0.0;
  for (const auto& a : mu.atoms())
    if (s.contains(a.at) && bad(a.at)) bad_mass += a.weight;

  const Box<D> bb = s.bounding_box();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point<D> step{};
  double cell_vol = 1.0;
  for (int i = 0; i < D; ++i) {
    step[i] = (bb.hi[i] - bb.lo[i]) / strata_per_axis;
    cell_vol *= step[i];
  }
  double var = 0.0;
  std::size_t n = 0;
  std::array<int, D> idx{};
  for (;;) {
    Point<D> y;
    for (int i = 0; i < D; ++i) y[i] = bb.lo[i] + step[i] * (idx[i] + u(rng));
    const double w = mu.density_at(y) * cell_vol;
    if (w > 0.0 && s.contains(y)) {
      if (bad(y)) bad_mass += w;
      var += 0.25 * w * w;
    }
    ++n;
    int i = D - 1;
    while (i >= 0 && idx[i] + 1 == strata_per_axis) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  Defect d;
  d.fraction = std::clamp(bad_mass / total, 0.0, 1.0);
  d.std_error = std::sqrt(var) / total;
  d.samples = n;
  return d;
}

}  // namespace morsecover

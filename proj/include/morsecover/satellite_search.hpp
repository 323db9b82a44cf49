#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "morsecover/covering.hpp"

namespace morsecover {

template <int D>
struct SatelliteSearchResult {
  SatelliteConfig<D> config;
  std::uint64_t kappa = 0;     // Morse bound the size is checked against
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

// Randomised constructive search for large satellite configurations of
// λ-Morse balls. The last set is B(0,1) tagged at 0; each proposal is a ball
// meeting it, with its tag offset inside the admissible ratio
// (λ-1)/(λ+1), inserted by decreasing diameter and kept only if the whole
// configuration still verifies.
template <int D>
SatelliteSearchResult<D> satellite_search(const Space<D>& space, double lambda, double tau,
                                          std::uint64_t budget, std::uint64_t seed = 0) {
  check_tau(tau);
  SatelliteSearchResult<D> res;
  res.kappa = kappa_bound(space, lambda, KappaMode::Morse);
  res.config.tau = tau;
  const auto last = MorseSet<D>::closed_ball(space, zero_point<D>(), 1.0, lambda);
  res.config.ordered.push_back(last);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double max_offset = (lambda - 1.0) / (lambda + 1.0);
  auto direction = [&]() {
    for (;;) {
      Point<D> u{};
      for (int i = 0; i < D; ++i) u[i] = gauss(rng);
      if (space.norm(u) > 1e-9) return space.normalize(u);
    }
  };

  const double rmin = 1.0 / tau, rmax = 4.0;
  for (std::uint64_t it = 0; it < budget; ++it) {
    ++res.proposals;
    const double R = rmin * std::exp(unit(rng) * std::log(rmax / rmin)) * (1.0 + 1e-9);
    const Point<D> c = (R + unit(rng)) * direction();
    const double w = max_offset * 0.999 * unit(rng);
    const Point<D> tag = c + (w * R) * direction();
    MorseSet<D> cand = MorseSet<D>::tagged_ball(space, c, R, tag, false, lambda);

    auto trial = res.config;
    auto& v = trial.ordered;
    std::size_t pos = 0;
    while (pos + 1 < v.size() && v[pos].diameter() >= cand.diameter()) ++pos;
    v.insert(v.begin() + static_cast<long>(pos), cand);
    if (is_satellite_config(trial).ok) {
      res.config = std::move(trial);
      ++res.accepted;
    }
  }
  if (res.config.ordered.size() > res.kappa)
    throw ContractError("satellite configuration of size " + std::to_string(res.config.ordered.size()) +
                        " exceeds the bound " + std::to_string(res.kappa));
  return res;
}

}  // namespace morsecover

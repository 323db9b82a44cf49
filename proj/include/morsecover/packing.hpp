#pragma once

// Packing numbers: the largest number of points that fit into a closed ball
// (or onto its sphere) with a prescribed minimal pairwise distance. Lower
// bounds come from a reproducible greedy + perturbation search and carry a
// witness; upper bounds come from the volume argument.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "morsecover/core.hpp"
#include "morsecover/space.hpp"

namespace morsecover {

template <int D>
struct PackingWitness {
  std::vector<Point<D>> points;
  double min_pairwise_distance = 0.0;
  double container_radius = 0.0;
  bool anchored = false;
  bool surface_only = false;
};

template <int D>
struct PackingResult {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  PackingWitness<D> witness;
};

namespace detail {

inline std::uint64_t floor_count(double v) {
  if (!(v < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::floor(v + 1e-9));
}

// Spatial hash over points with cell size equal to the minimal distance, so
// conflicts can only come from the 3^D neighbouring cells.
template <int D>
class ConflictGrid {
 public:
  ConflictGrid(const Space<D>& space, double min_dist)
      : space_(space), cell_(min_dist * space.max_coord_extent()), min_dist_(min_dist) {}

  std::vector<std::size_t> conflicts(const Point<D>& p, const std::vector<Point<D>>& pts,
                                     std::size_t skip = static_cast<std::size_t>(-1)) const {
    std::vector<std::size_t> out;
    const auto base = key_of(p);
    std::array<long long, D> k{};
    for (int c = 0; c < ipow3(); ++c) {
      int t = c;
      for (int i = 0; i < D; ++i) {
        k[i] = base[i] + (t % 3) - 1;
        t /= 3;
      }
      auto it = cells_.find(hash(k));
      if (it == cells_.end()) continue;
      for (std::size_t idx : it->second)
        if (idx != skip && space_.dist(pts[idx], p) < min_dist_) out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void insert(const Point<D>& p, std::size_t idx) { cells_[hash(key_of(p))].push_back(idx); }

  void erase(const Point<D>& p, std::size_t idx) {
    auto& v = cells_[hash(key_of(p))];
    v.erase(std::remove(v.begin(), v.end(), idx), v.end());
  }

 private:
  static constexpr int ipow3() {
    int r = 1;
    for (int i = 0; i < D; ++i) r *= 3;
    return r;
  }
  std::array<long long, D> key_of(const Point<D>& p) const {
    std::array<long long, D> k{};
    for (int i = 0; i < D; ++i) k[i] = static_cast<long long>(std::floor(p[i] / cell_));
    return k;
  }
  static std::uint64_t hash(const std::array<long long, D>& k) {
    std::uint64_t h = 1469598103934665603ull;
    for (long long v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  Space<D> space_;
  double cell_;
  double min_dist_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace detail

// Volume-argument upper bound: balls of radius m/2 around the points are
// disjoint and lie in B(0, R + m/2) (in the shell R - m/2 .. R + m/2 for
// points on the sphere).
template <int D>
std::uint64_t packing_upper_bound(double container_r, double min_dist, bool surface_only) {
  if (!(min_dist > 0.0)) throw InputError("minimal distance must be positive");
  if (!(container_r >= 0.0)) throw InputError("container radius must be nonnegative");
  const double h = 0.5 * min_dist;
  const double outer = std::pow((container_r + h) / h, D);
  if (!surface_only) return detail::floor_count(outer);
  const double inner = std::pow(std::max(0.0, container_r - h) / h, D);
  return detail::floor_count(outer - inner);
}

// Exact re-verification of a witness.
template <int D>
bool verify_packing(const Space<D>& space, const PackingWitness<D>& w) {
  const double R = w.container_radius;
  bool has_origin = false;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    const double n = space.norm(w.points[i]);
    if (w.surface_only ? std::abs(n - R) > 1e-12 * std::max(1.0, R) : n > R) return false;
    if (w.points[i] == zero_point<D>()) has_origin = true;
    for (std::size_t j = i + 1; j < w.points.size(); ++j)
      if (space.dist(w.points[i], w.points[j]) < w.min_pairwise_distance) return false;
  }
  return !w.anchored || has_origin;
}

// Greedy seeding over a lexicographic grid of spacing min_dist / 2^k (the
// origin first when anchored), then `budget` rounds of seeded perturbation:
// propose a random point, accept it outright when it conflicts with nothing,
// or relocate its single conflicting neighbour when that makes room.
template <int D>
PackingResult<D> packing_count(const Space<D>& space, double container_r, double min_dist,
                               bool anchored, bool surface_only, std::uint64_t budget,
                               std::uint64_t seed = 0, std::size_t grid_cap = 200000) {
  if (!(min_dist > 0.0)) throw InputError("minimal distance must be positive");
  if (!(container_r > 0.0)) throw InputError("container radius must be positive");
  if (anchored && surface_only) throw InputError("an anchored packing cannot be surface-only");

  PackingResult<D> res;
  res.upper = packing_upper_bound<D>(container_r, min_dist, surface_only);
  auto& w = res.witness;
  w.min_pairwise_distance = min_dist;
  w.container_radius = container_r;
  w.anchored = anchored;
  w.surface_only = surface_only;
  auto& pts = w.points;
  detail::ConflictGrid<D> grid(space, min_dist);

  auto try_add = [&](const Point<D>& p) {
    if (!grid.conflicts(p, pts).empty()) return false;
    grid.insert(p, pts.size());
    pts.push_back(p);
    return true;
  };

  auto project = [&](Point<D> p) -> std::optional<Point<D>> {
    if (surface_only) {
      const double n = space.norm(p);
      if (!(n > 0.0)) return std::nullopt;
      return (container_r / n) * p;
    }
    if (space.norm(p) > container_r) return std::nullopt;
    return p;
  };

  if (anchored) try_add(zero_point<D>());

  // Grid spacing: the finest dyadic refinement of min_dist within the cap.
  std::array<double, D> extent{};
  for (int i = 0; i < D; ++i) extent[i] = container_r * space.coord_extent(i);
  double h = min_dist;
  auto grid_points = [&](double step) {
    double n = 1.0;
    for (int i = 0; i < D; ++i) n *= 2.0 * std::floor(extent[i] / step) + 1.0;
    return n;
  };
  for (int k = 0; k < 30 && grid_points(h / 2) <= static_cast<double>(grid_cap); ++k) h /= 2;

  std::array<long long, D> lim{};
  for (int i = 0; i < D; ++i) lim[i] = static_cast<long long>(std::floor(extent[i] / h));
  std::array<long long, D> idx{};
  for (int i = 0; i < D; ++i) idx[i] = -lim[i];
  for (;;) {
    Point<D> p{};
    for (int i = 0; i < D; ++i) p[i] = static_cast<double>(idx[i]) * h;
    bool on_shell = true;
    if (surface_only && D > 1) {
      // Candidates from the surface of the coordinate cube, pushed radially.
      on_shell = false;
      for (int i = 0; i < D; ++i)
        if (std::abs(idx[i]) == lim[i]) on_shell = true;
    }
    if (on_shell)
      if (auto q = project(p)) try_add(*q);
    int i = D - 1;
    while (i >= 0 && idx[i] == lim[i]) {
      idx[i] = -lim[i];
      --i;
    }
    if (i < 0) break;
    ++idx[i];
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_point = [&]() -> Point<D> {
    for (;;) {
      Point<D> p{};
      for (int i = 0; i < D; ++i) p[i] = unit(rng) * extent[i];
      if (auto q = project(p)) return *q;
    }
  };
  const std::size_t anchor_index = anchored ? 0 : static_cast<std::size_t>(-1);
  for (std::uint64_t it = 0; it < budget; ++it) {
    const Point<D> p = random_point();
    const auto c = grid.conflicts(p, pts);
    if (c.empty()) {
      try_add(p);
      continue;
    }
    if (c.size() != 1 || c[0] == anchor_index) continue;
    const std::size_t q = c[0];
    const Point<D> old = pts[q];
    for (int attempt = 0; attempt < 8; ++attempt) {
      Point<D> cand = old;
      for (int i = 0; i < D; ++i) cand[i] += unit(rng) * min_dist * space.coord_extent(i);
      auto proj = project(cand);
      if (!proj) continue;
      if (space.dist(*proj, p) < min_dist) continue;
      if (!grid.conflicts(*proj, pts, q).empty()) continue;
      grid.erase(old, q);
      pts[q] = *proj;
      grid.insert(*proj, q);
      try_add(p);
      break;
    }
  }

  if (!verify_packing(space, w)) throw ContractError("packing witness failed re-verification");
  res.lower = pts.size();
  if (res.lower > res.upper) throw ContractError("packing lower bound exceeds the volume bound");
  return res;
}

// N(gamma): points in B(0,1) at pairwise distance >= 1/gamma (volume bound).
template <int D>
std::uint64_t packing_number_upper(double gamma) {
  return packing_upper_bound<D>(1.0, 1.0 / gamma, false);
}

// N_S(gamma): the same on the unit sphere (shell bound).
template <int D>
std::uint64_t sphere_packing_number_upper(double gamma) {
  return packing_upper_bound<D>(1.0, 1.0 / gamma, true);
}

enum class KappaMode { Balls, Morse };

// Upper bound on the size of satellite configurations: the ball constant K
// (volume bound for 1-separated points in B(0,2), at most 5^d) or the Morse
// bound N(64 λ^3) + N(8 λ^2) N_S(16 λ).
template <int D>
std::uint64_t kappa_bound(const Space<D>& /*space*/, double lambda, KappaMode mode) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw InputError("lambda must be >= 1");
  if (mode == KappaMode::Balls) return packing_upper_bound<D>(2.0, 1.0, false);
  const double l2 = lambda * lambda, l3 = l2 * lambda;
  return saturating_add(packing_number_upper<D>(64.0 * l3),
                        saturating_mul(packing_number_upper<D>(8.0 * l2),
                                       sphere_packing_number_upper<D>(16.0 * lambda)));
}

}  // namespace morsecover

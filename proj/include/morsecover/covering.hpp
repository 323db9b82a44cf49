#pragma once

// Covering machinery for finite tagged families: satellite-configuration
// verification, greedy maximal-diameter selection, the sweep partition into
// internally disjoint subfamilies, and the heavy-subfamily selector.

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "morsecover/intersect.hpp"
#include "morsecover/morse_set.hpp"
#include "morsecover/packing.hpp"

namespace morsecover {

inline constexpr double kDefaultTau = 1.2;

inline void check_tau(double tau) {
  if (!(tau > 1.0 && tau <= 2.0)) throw InputError("tau must lie in (1,2], got " + fmt12(tau));
}

// ---------------------------------------------------------------------------
// Tagged families

// Finite family of λ-Morse sets sharing one space and one λ; each set is
// tagged at its own tag.
template <int D>
class TaggedFamily {
 public:
  TaggedFamily(const Space<D>& space, double lambda,
               double diam_bound = std::numeric_limits<double>::infinity())
      : space_(space), lambda_(lambda), diam_bound_(diam_bound) {
    if (!(lambda >= 1.0)) throw InputError("lambda must be >= 1");
    if (!(diam_bound > 0.0)) throw InputError("diameter bound must be positive");
  }

  void add(const MorseSet<D>& s) {
    if (!(s.space() == space_)) throw InputError("family member lives in a different space");
    if (s.lambda() != lambda_) throw InputError("family members must share one lambda");
    if (s.diameter() > diam_bound_) throw InputError("family member exceeds the diameter bound");
    sets_.push_back(s);
  }

  const Space<D>& space() const { return space_; }
  double lambda() const { return lambda_; }
  double diam_bound() const { return diam_bound_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const MorseSet<D>& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<MorseSet<D>>& sets() const { return sets_; }

  // Closed balls tagged at their centres (λ = 1 in the Morse sense).
  bool centered_balls() const {
    return std::all_of(sets_.begin(), sets_.end(), [](const MorseSet<D>& s) {
      const auto* b = std::get_if<Ball<D>>(&s.shape());
      return b && b->center == s.tag();
    });
  }

 private:
  Space<D> space_;
  double lambda_;
  double diam_bound_;
  std::vector<MorseSet<D>> sets_;
};

// Adjacency lists of sets whose bounding boxes overlap, built with a uniform
// hash grid. Sets that are known to be pairwise disjoint can skip this and
// use empty lists.
template <int D>
std::vector<std::vector<std::uint32_t>> overlap_neighbors(const std::vector<MorseSet<D>>& sets) {
  const std::size_t n = sets.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  if (n < 2) return adj;
  std::vector<Box<D>> boxes(n);
  double top = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    boxes[i] = sets[i].bounding_box();
    top = std::max(top, boxes[i].max_extent());
  }
  // One hash grid per size level; cells at level L have side base 2^(L+1),
  // so a box of that level meets at most 2^D of them.
  double base = std::numeric_limits<double>::infinity();
  for (const auto& b : boxes)
    if (b.max_extent() > 0.0) base = std::min(base, b.max_extent());
  if (!std::isfinite(base)) base = 1.0;
  base = std::max(base, top * 1e-15);
  std::vector<int> level(n);
  int levels = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = boxes[i].max_extent();
    level[i] = e > base ? std::max(0, static_cast<int>(std::floor(std::log2(e / base)))) : 0;
    while (boxes[i].max_extent() > base * std::ldexp(2.0, level[i])) ++level[i];
    levels = std::max(levels, level[i] + 1);
  }

  auto key = [](int lv, const std::array<long long, D>& k) {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(lv);
    for (long long v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
    return h;
  };
  auto for_cells = [&](const Box<D>& b, int lv, auto&& fn) {
    const double cell = base * std::ldexp(2.0, lv);
    std::array<long long, D> lo{}, hi{}, k{};
    for (int i = 0; i < D; ++i) {
      lo[i] = static_cast<long long>(std::floor(b.lo[i] / cell));
      hi[i] = static_cast<long long>(std::floor(b.hi[i] / cell));
    }
    k = lo;
    for (;;) {
      fn(key(lv, k));
      int i = D - 1;
      while (i >= 0 && k[i] == hi[i]) {
        k[i] = lo[i];
        --i;
      }
      if (i < 0) break;
      ++k[i];
    }
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  std::vector<char> used(static_cast<std::size_t>(levels), 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    used[static_cast<std::size_t>(level[i])] = 1;
    for_cells(boxes[i], level[i], [&](std::uint64_t h) { grid[h].push_back(i); });
  }

  std::vector<std::uint32_t> cand;
  for (std::uint32_t i = 0; i < n; ++i) {
    cand.clear();
    for (int lv = level[i]; lv < levels; ++lv) {
      if (!used[static_cast<std::size_t>(lv)]) continue;
      for_cells(boxes[i], lv, [&](std::uint64_t h) {
        auto it = grid.find(h);
        if (it != grid.end()) cand.insert(cand.end(), it->second.begin(), it->second.end());
      });
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::uint32_t j : cand) {
      if (j == i || level[j] < level[i] || !boxes[i].overlaps(boxes[j])) continue;
      adj[i].push_back(j);
      if (level[j] > level[i]) adj[j].push_back(i);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

// ---------------------------------------------------------------------------
// Satellite configurations

template <int D>
struct SatelliteConfig {
  std::vector<MorseSet<D>> ordered;
  double tau = kDefaultTau;
};

struct SatelliteVerdict {
  bool ok = true;
  std::string violation;  // first violated clause, 1-based indices
};

// (i) every S_i meets S_n; (ii) for i < j: a_j ∉ int(S_i) and Δ(S_j) < τ Δ(S_i).
template <int D>
SatelliteVerdict is_satellite_config(const SatelliteConfig<D>& cfg) {
  check_tau(cfg.tau);
  const auto& s = cfg.ordered;
  SatelliteVerdict v;
  if (s.empty()) return v;
  for (const auto& x : s)
    if (!(x.space() == s.front().space())) throw InputError("satellite configuration mixes spaces");
  const std::size_t n = s.size();
  auto name = [](std::size_t i) { return "S" + std::to_string(i + 1); };
  for (std::size_t i = 0; i < n; ++i)
    if (!intersects(s[i], s[n - 1])) {
      v.ok = false;
      v.violation = name(i) + "∩" + name(n - 1) + "=∅";
      return v;
    }
  std::vector<double> diam(n);
  for (std::size_t i = 0; i < n; ++i) diam[i] = s[i].diameter();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i].interior_contains(s[j].tag())) {
        v.ok = false;
        v.violation = "a" + std::to_string(j + 1) + "∈int(" + name(i) + ")";
        return v;
      }
      if (!(diam[j] < cfg.tau * diam[i])) {
        v.ok = false;
        v.violation = "Δ(" + name(j) + ")≥τΔ(" + name(i) + ")";
        return v;
      }
    }
  return v;
}

// ---------------------------------------------------------------------------
// Greedy selection

// Repeatedly choose a remaining set of maximal diameter (lowest index on
// ties) and discard every remaining tag inside its interior.
template <int D>
std::vector<std::size_t> greedy_select(const std::vector<MorseSet<D>>& sets, double tau,
                                       const std::vector<std::vector<std::uint32_t>>* neighbors = nullptr) {
  check_tau(tau);
  const std::size_t n = sets.size();
  std::vector<std::size_t> by_diam(n);
  std::iota(by_diam.begin(), by_diam.end(), std::size_t{0});
  std::vector<double> diam(n);
  for (std::size_t i = 0; i < n; ++i) diam[i] = sets[i].diameter();
  std::stable_sort(by_diam.begin(), by_diam.end(),
                   [&](std::size_t a, std::size_t b) { return diam[a] > diam[b]; });
  std::vector<std::vector<std::uint32_t>> own;
  if (!neighbors) {
    own = overlap_neighbors(sets);
    neighbors = &own;
  }
  std::vector<char> gone(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t i : by_diam) {
    if (gone[i]) continue;
    gone[i] = 1;
    order.push_back(i);
    for (std::uint32_t j : (*neighbors)[i])
      if (!gone[j] && sets[i].interior_contains(sets[j].tag())) gone[j] = 1;
  }
  return order;
}

template <int D>
std::vector<std::size_t> greedy_select(const TaggedFamily<D>& fam, double tau = kDefaultTau) {
  return greedy_select(fam.sets(), tau);
}

// ---------------------------------------------------------------------------
// Partition into disjoint subfamilies

struct Partition {
  std::vector<std::vector<std::size_t>> families;  // entry indices, in selection order
  std::vector<std::size_t> selection_order;
  std::uint64_t kappa = 0;                         // bound the family count is compared against
};

inline void check_order(std::size_t n, const std::vector<std::size_t>& order) {
  std::vector<char> seen(n, 0);
  for (std::size_t i : order) {
    if (i >= n) throw InputError("selection order refers to a missing entry " + std::to_string(i));
    if (seen[i]) throw InputError("selection order repeats entry " + std::to_string(i));
    seen[i] = 1;
  }
}

// Sweep the order repeatedly; each sweep opens a family and adds every
// unassigned set that is disjoint from the members already in it.
template <int D>
Partition partition_disjoint(const std::vector<MorseSet<D>>& sets, const std::vector<std::size_t>& order,
                             std::uint64_t kappa,
                             const std::vector<std::vector<std::uint32_t>>* neighbors = nullptr) {
  check_order(sets.size(), order);
  std::vector<std::vector<std::uint32_t>> own;
  if (!neighbors) {
    own = overlap_neighbors(sets);
    neighbors = &own;
  }
  Partition p;
  p.selection_order = order;
  p.kappa = kappa;
  std::vector<int> family(sets.size(), -1);
  std::size_t assigned = 0;
  while (assigned < order.size()) {
    const int f = static_cast<int>(p.families.size());
    p.families.emplace_back();
    for (std::size_t i : order) {
      if (family[i] >= 0) continue;
      bool ok = true;
      for (std::uint32_t j : (*neighbors)[i])
        if (family[j] == f && intersects(sets[i], sets[j])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      family[i] = f;
      p.families.back().push_back(i);
      ++assigned;
    }
  }
  return p;
}

template <int D>
std::uint64_t family_kappa(const TaggedFamily<D>& fam) {
  return kappa_bound(fam.space(), fam.lambda(),
                     fam.centered_balls() ? KappaMode::Balls : KappaMode::Morse);
}

template <int D>
Partition partition_disjoint(const TaggedFamily<D>& fam, const std::vector<std::size_t>& order) {
  return partition_disjoint(fam.sets(), order, family_kappa(fam));
}

// ---------------------------------------------------------------------------
// Heavy subfamily

struct HeavyChoice {
  std::size_t family = 0;          // 0-based index of the chosen family
  std::vector<std::size_t> prefix; // A_μ: minimal prefix holding half the family mass
  double prefix_mass = 0.0;
  double family_mass = 0.0;
};

// `mass[i]` is μ(int S_i). Picks the first family of maximal total mass and
// its shortest prefix (in selection order) carrying at least half of it.
inline HeavyChoice heavy_subfamily(const Partition& part, const std::vector<double>& mass) {
  HeavyChoice h;
  if (part.families.empty()) return h;
  double best = -1.0;
  for (std::size_t f = 0; f < part.families.size(); ++f) {
    CompensatedSum s;
    for (std::size_t i : part.families[f]) {
      if (i >= mass.size() || !std::isfinite(mass[i]) || mass[i] < 0.0)
        throw InputError("measure is not finite on the union of the family");
      s.add(mass[i]);
    }
    if (s.value() > best) {
      best = s.value();
      h.family = f;
    }
  }
  h.family_mass = best;
  CompensatedSum pre;
  for (std::size_t i : part.families[h.family]) {
    h.prefix.push_back(i);
    pre.add(mass[i]);
    if (pre.value() >= 0.5 * best) break;
  }
  h.prefix_mass = pre.value();
  return h;
}

// ---------------------------------------------------------------------------
// Posterior checks used by tests and reports

// For α < β in the order: tag_β ∉ int(S_α) and Δ_β < τ Δ_α. Returns the
// first offending pair or {-1,-1}.
template <int D>
std::pair<long, long> check_selection_order(const std::vector<MorseSet<D>>& sets,
                                            const std::vector<std::size_t>& order, double tau) {
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& sa = sets[order[a]];
      const auto& sb = sets[order[b]];
      if (sa.interior_contains(sb.tag()) || !(sb.diameter() < tau * sa.diameter()))
        return {static_cast<long>(order[a]), static_cast<long>(order[b])};
    }
  return {-1, -1};
}

// Every input tag lies in the interior of some selected set.
template <int D>
bool tags_covered(const std::vector<MorseSet<D>>& sets, const std::vector<std::size_t>& selected) {
  for (const auto& s : sets) {
    bool hit = false;
    for (std::size_t i : selected)
      if (sets[i].interior_contains(s.tag())) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

template <int D>
bool families_disjoint(const std::vector<MorseSet<D>>& sets, const Partition& p) {
  for (const auto& fam : p.families)
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b)
        if (intersects(sets[fam[a]], sets[fam[b]])) return false;
  return true;
}

}  // namespace morsecover

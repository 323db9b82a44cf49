#pragma once

// μ-a.e. covers by exhaustion. Each round proposes δ-fine candidate sets
// inside the cells of an adaptive tiling of the uncovered part of Ω (atoms
// first, each inside its own small ball), runs them through greedy
// selection, the disjoint partition and the heavy-subfamily choice, appends
// the chosen family and subtracts its mass. What a box-shaped set leaves of
// its cell is carried to the next round as slabs; other sets stay behind as
// obstacles in the halves of their cell.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "morsecover/covering.hpp"
#include "morsecover/family.hpp"
#include "morsecover/measure.hpp"

namespace morsecover {

template <int D>
struct AeCover {
  std::vector<MorseSet<D>> sequence;  // empty when the sets were streamed
  std::vector<double> masses;         // μ(S ∩ Ω), aligned with `sequence`
  std::size_t count = 0;
  double omega_mass = 0.0;
  double omega_mass_err = 0.0;
  double covered = 0.0;               // Σ μ(S ∩ Ω)
  double covered_err = 0.0;
  double residual = 0.0;              // μ(Ω) - covered
  double excess = 0.0;                // Σ μ(S \ Ω), measured
  double excess_bound = 0.0;          // sum of the per-round dilation budgets
  double dropped = 0.0;               // mass of cells abandoned as negligible
  std::vector<double> residual_history;  // [0] = μ(Ω), then after each round
  std::vector<std::size_t> round_counts;
  std::uint64_t kappa = 0;
  int rounds = 0;
  bool converged = false;
  double eps = 0.0;
  double tol = 0.0;

  double decay_factor() const { return 1.0 - 1.0 / (2.0 * static_cast<double>(kappa)); }
  // Rounds the exhaustion bound allows for reaching tol.
  long round_bound() const {
    if (omega_mass <= tol || kappa == 0) return 0;
    return static_cast<long>(std::ceil(std::log(tol / omega_mass) / std::log(decay_factor())));
  }
};

template <int D>
struct CoverOptions {
  std::uint64_t seed = 0;
  double tau = kDefaultTau;
  int max_rounds = 60;
  std::size_t batch = 1u << 16;
  std::size_t max_sets = 200'000'000;
  std::size_t boundary_budget = 1u << 12;    // grid cells per boundary-set measurement
  std::function<bool(const Point<D>&)> tag_ok;  // cells whose centre fails are split
};

namespace detail {

template <int D>
struct Cell {
  Box<D> box;
  std::vector<std::uint32_t> obstacles;
};

// Per-seed variation: root resolution and subdivision slack.
inline std::pair<int, double> cover_variation(std::uint64_t seed) {
  const int roots = 1 + static_cast<int>(seed % 4);
  const double q = 0.8 + 0.15 * radical_inverse(seed + 1, 2);
  return {roots, q};
}

// a minus b as at most 2D boxes.
template <int D>
void subtract_box(const Box<D>& a, const Box<D>& b, std::vector<Box<D>>& out) {
  const Box<D> in = a.intersect(b);
  if (in.empty() || !(in.volume() > 0.0)) {
    out.push_back(a);
    return;
  }
  Box<D> rest = a;
  for (int i = 0; i < D; ++i) {
    if (in.lo[i] > rest.lo[i]) {
      Box<D> s = rest;
      s.hi[i] = in.lo[i];
      out.push_back(s);
      rest.lo[i] = in.lo[i];
    }
    if (in.hi[i] < rest.hi[i]) {
      Box<D> s = rest;
      s.lo[i] = in.hi[i];
      out.push_back(s);
      rest.hi[i] = in.hi[i];
    }
  }
}

}  // namespace detail

// Streams every selected set to `sink(set, mass_in_omega)`. `delta` is the
// gauge; it must be strictly positive at every tag it is asked about.
template <int D, class Gauge, class Sink>
AeCover<D> ae_cover_stream(const RadonMeasure<D>& mu, const Region<D>& omega, const MorseFamily<D>& family,
                           Gauge&& delta, double eps, double tol, Sink&& sink,
                           const CoverOptions<D>& opt = {}) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  check_tau(opt.tau);
  const Space<D>& space = family.space();
  if (!(omega.space() == space)) throw InputError("region and family live in different spaces");

  AeCover<D> out;
  out.eps = eps;
  out.kappa = family.kappa();
  const Measured om = measure_of(mu, omega);
  out.omega_mass = om.value;
  out.omega_mass_err = om.err;
  out.tol = tol > 0.0 ? tol : 1e-6 * om.value;
  tol = out.tol;
  out.residual_history.push_back(om.value);

  const auto restricted = restrict_measure(mu, omega);
  RadonMeasure<D> dens;
  for (const auto& p : mu.pieces()) dens.add_density(p.box, p.value, p.slope);
  const double gap = std::clamp(1e-3 * tol / std::max(om.value, 1e-300), 1e-14, 1e-8);
  const auto [root_count, q] = detail::cover_variation(opt.seed);

  auto gauge_at = [&](const Point<D>& x) {
    const double d = delta(x);
    if (!(d > 0.0) || !std::isfinite(d))
      throw ContractError("gauge is not strictly positive at " + MorseFamily<D>::describe_point(x) + " (value " +
                          fmt12(d) + ")");
    return d;
  };

  // Largest dilation whose extra density mass stays within the round budget.
  const Measured dens_omega = measure_of(dens, omega);
  double eta = 1.0;
  if (const auto sb = dens.support_box()) eta = std::max(eta, sb->max_extent());
  auto dilation_for = [&](int round) {
    if (omega.whole_space() && omega.minus().empty()) return std::numeric_limits<double>::infinity();
    const double budget = eps / std::ldexp(1.0, round + 1);
    for (int it = 0; it < 80; ++it) {
      const Measured m = measure_of(dens, omega.dilated(eta));
      if (m.value + m.err - dens_omega.value <= budget) return eta;
      eta *= 0.5;
    }
    eta = 0.0;
    return 0.0;
  };

  CompensatedSum covered, excess;
  double covered_err = 0.0;
  std::vector<MorseSet<D>> obstacles;
  std::vector<MorseSet<D>> batch;
  std::vector<double> batch_mass;
  std::vector<std::vector<std::uint32_t>> empty_lists;

  auto mass_in = [&](const MorseSet<D>& s) {
    Measured m = restricted ? measure_of(*restricted, s)
                            : measure_in(mu, restricted, s, omega, Part::Whole, opt.boundary_budget);
    covered_err += m.err;
    if (!(omega.whole_space() && omega.minus().empty()) && omega.inner_distance(s.tag()) < s.outer_radius()) {
      const Measured full = measure_of(mu, s);
      excess.add(std::max(0.0, full.value - m.value));
    }
    return m.value;
  };

  // Selection pipeline on one batch of pairwise disjoint candidates.
  auto flush = [&](int round) {
    if (batch.empty()) return;
    empty_lists.assign(batch.size(), {});
    const auto order = greedy_select(batch, opt.tau, &empty_lists);
    const Partition part = partition_disjoint(batch, order, out.kappa, &empty_lists);
    const HeavyChoice h = heavy_subfamily(part, batch_mass);
    for (std::size_t i : part.families[h.family]) {
      sink(batch[i], batch_mass[i]);
      covered.add(batch_mass[i]);
      ++out.count;
    }
    out.round_counts[static_cast<std::size_t>(round - 1)] += part.families[h.family].size();
    batch.clear();
    batch_mass.clear();
    if (out.count > opt.max_sets) throw ContractError("cover exceeds the configured set limit");
  };
  auto propose = [&](MorseSet<D> s, double m, int round) {
    batch.push_back(std::move(s));
    batch_mass.push_back(m);
    if (batch.size() >= opt.batch) flush(round);
  };

  // --- round 1, atom phase ---------------------------------------------------
  out.rounds = 1;
  out.round_counts.push_back(0);
  std::vector<Point<D>> outside_atoms;
  {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
      if (omega.contains(mu.atoms()[i].at)) inside.push_back(i);
      else outside_atoms.push_back(mu.atoms()[i].at);
    }
    const double atom_budget = inside.empty() ? 0.0 : eps / (4.0 * static_cast<double>(inside.size()));
    for (std::size_t i : inside) {
      const Point<D>& a = mu.atoms()[i].at;
      double R = gauge_at(a);
      for (std::size_t j = 0; j < mu.atoms().size(); ++j)
        if (j != i) R = std::min(R, 0.49 * space.dist(a, mu.atoms()[j].at));
      // Keep the density overflow of straddling atom sets within budget.
      for (int it = 0; it < 200; ++it) {
        if (omega.inner_distance(a) >= R) break;
        const auto trial = family.make(a, R);
        const Measured full = measure_of(dens, trial);
        const Measured in = restricted ? measure_of(*restricted, trial)
                                       : measure_in(dens, std::optional<RadonMeasure<D>>{}, trial, omega,
                                                    Part::Whole, opt.boundary_budget);
        if (full.value + full.err - (in.value - in.err) <= atom_budget) break;
        R *= 0.5;
      }
      // Scale search: sidestep scales that put an atom on the boundary.
      std::optional<MorseSet<D>> chosen;
      for (int j = 0; j < 64 && !chosen; ++j) {
        auto s = family.make(a, R * (1.0 - j / 97.0));
        bool clash = false;
        for (const auto& b : mu.atoms())
          if (s.on_boundary(b.at)) clash = true;
        if (!clash) chosen = std::move(s);
      }
      if (!chosen) throw ContractError("no admissible scale at atom " + MorseFamily<D>::describe_point(a));
      obstacles.push_back(*chosen);
      const double m = mass_in(*chosen);
      propose(std::move(*chosen), m, 1);
    }
    flush(1);
  }

  // --- cell phase ----------------------------------------------------------
  const bool plain_omega = omega.whole_space() && omega.minus().empty();
  const RadonMeasure<D>& local = restricted ? *restricted : dens;
  auto box_of = [](const MorseSet<D>& s) -> std::optional<Box<D>> {
    if (const auto f = detail::as_faced_box(s)) return f->box;
    return std::nullopt;
  };
  std::vector<detail::Cell<D>> queue;
  {
    std::optional<Box<D>> work = dens.support_box();
    if (work && !(omega.whole_space())) {
      const double e = dilation_for(1);
      auto ob = omega.dilated(std::isfinite(e) ? e : 0.0).bounding_box();
      if (ob) *work = work->intersect(*ob);
    }
    if (work && !work->empty() && work->volume() > 0.0) {
      double longest = 0.0;
      for (int i = 0; i < D; ++i) longest = std::max(longest, (work->hi[i] - work->lo[i]) / space.coord_extent(i));
      const double side = longest / root_count;
      std::array<long, D> n{};
      for (int i = 0; i < D; ++i)
        n[i] = std::max(1L, std::lround((work->hi[i] - work->lo[i]) / space.coord_extent(i) / side));
      std::vector<Box<D>> tiles;
      std::array<long, D> idx{};
      for (;;) {
        Box<D> b;
        for (int i = 0; i < D; ++i) {
          const double w = (work->hi[i] - work->lo[i]) / static_cast<double>(n[i]);
          b.lo[i] = work->lo[i] + w * static_cast<double>(idx[i]);
          b.hi[i] = idx[i] + 1 == n[i] ? work->hi[i] : work->lo[i] + w * static_cast<double>(idx[i] + 1);
        }
        tiles.push_back(b);
        int i = D - 1;
        while (i >= 0 && idx[i] + 1 == n[i]) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
      }
      // Box-shaped atom sets are cut out exactly; the others stay obstacles.
      std::vector<std::uint32_t> curved;
      for (std::uint32_t k = 0; k < obstacles.size(); ++k) {
        const auto ob = box_of(obstacles[k]);
        if (!ob) {
          curved.push_back(k);
          continue;
        }
        std::vector<Box<D>> cut;
        for (const auto& t : tiles) detail::subtract_box(t, *ob, cut);
        tiles.swap(cut);
      }
      for (const auto& t : tiles) {
        detail::Cell<D> c;
        c.box = t;
        for (std::uint32_t k : curved)
          if (obstacles[k].bounding_box().overlaps(t)) c.obstacles.push_back(k);
        queue.push_back(std::move(c));
      }
    }
  }

  const double drop_threshold = 1e-4 * tol;
  // Bounding box of the member with λ r = 1 tagged at the origin.
  const std::optional<Box<D>> unit_box = box_of(family.fit(zero_point<D>(), 1.0));
  const int kcap = D == 1 ? 4096 : D == 2 ? 64 : D == 3 ? 16 : 4;
  const double kcap_total = std::pow(static_cast<double>(kcap), D);
  CompensatedSum dropped;

  // k[i] pieces along axis i; all but the last have width unit[i] (default
  // an even split).
  auto split = [&](const detail::Cell<D>& c, const std::array<long, D>& k, std::vector<detail::Cell<D>>& to,
                   const std::array<double, D>* unit = nullptr) {
    std::array<long, D> idx{};
    for (;;) {
      detail::Cell<D> child;
      for (int i = 0; i < D; ++i) {
        const double w = unit ? (*unit)[i] : (c.box.hi[i] - c.box.lo[i]) / static_cast<double>(k[i]);
        child.box.lo[i] = c.box.lo[i] + w * static_cast<double>(idx[i]);
        child.box.hi[i] = idx[i] + 1 == k[i] ? c.box.hi[i] : c.box.lo[i] + w * static_cast<double>(idx[i] + 1);
      }
      for (std::uint32_t o : c.obstacles)
        if (obstacles[o].bounding_box().overlaps(child.box)) child.obstacles.push_back(o);
      to.push_back(std::move(child));
      int i = D - 1;
      while (i >= 0 && idx[i] + 1 == k[i]) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  };
  auto capped_split = [&](const detail::Cell<D>& c, std::array<long, D> k, std::vector<detail::Cell<D>>& to) {
    double total = 1.0;
    for (int i = 0; i < D; ++i) total *= static_cast<double>(k[i]);
    if (total > kcap_total) {
      const double shrink = std::pow(kcap_total / total, 1.0 / D);
      for (int i = 0; i < D; ++i) k[i] = std::max(1L, static_cast<long>(std::floor(static_cast<double>(k[i]) * shrink)));
    }
    if (*std::max_element(k.begin(), k.end()) < 2) {
      int widest = 0;
      for (int i = 1; i < D; ++i)
        if ((c.box.hi[i] - c.box.lo[i]) / space.coord_extent(i) >
            (c.box.hi[widest] - c.box.lo[widest]) / space.coord_extent(widest))
          widest = i;
      k[widest] = 2;
    }
    split(c, k, to);
  };
  auto halve = [&](const detail::Cell<D>& c, std::vector<detail::Cell<D>>& to) {
    std::array<long, D> k;
    k.fill(2);
    split(c, k, to);
  };
  auto pending = [&] {
    double s = covered.value();
    for (double m : batch_mass) s += m;
    return s;
  };

  bool done = false;
  for (int round = 1; !queue.empty() && !done; ++round) {
    if (round > 1) {
      out.rounds = round;
      out.round_counts.push_back(0);
    }
    const double eta_round = dilation_for(round);
    std::vector<detail::Cell<D>> next, stack;
    std::size_t qi = 0;
    for (; qi < queue.size() && !done; ++qi) {
      stack.push_back(std::move(queue[qi]));
      while (!stack.empty()) {
        detail::Cell<D> c = std::move(stack.back());
        stack.pop_back();
        const double cell_mass = local.density_integral(c.box);
        if (!(cell_mass > 0.0)) continue;
        if (!restricted && omega.classify(c.box) == CellClass::Outside) continue;
        // Obstacles are disjoint cover members, so their masses inside the
        // cell add up.
        double open_mass = cell_mass;
        if (!c.obstacles.empty()) {
          bool swallowed = false;
          const RadonMeasure<D> in_cell = local.density_in(c.box);
          for (std::uint32_t o : c.obstacles) {
            if (classify_set(obstacles[o], c.box) == CellClass::Inside) swallowed = true;
            else open_mass -= measure_of(in_cell, obstacles[o]).value;
          }
          if (swallowed) continue;
        }
        if (open_mass <= drop_threshold) {
          dropped.add(std::max(0.0, open_mass));
          continue;
        }
        // Near-cubic cells only.
        {
          std::array<double, D> side{};
          for (int i = 0; i < D; ++i) side[i] = (c.box.hi[i] - c.box.lo[i]) / space.coord_extent(i);
          const double lo_side = *std::min_element(side.begin(), side.end());
          const double hi_side = *std::max_element(side.begin(), side.end());
          if (hi_side > 2.0 * lo_side * (1.0 + 1e-12)) {
            // Whole cubes of the short side, the remainder folded into the
            // last piece.
            std::array<long, D> k{};
            std::array<double, D> unit{};
            double total = 1.0;
            for (int i = 0; i < D; ++i) {
              k[i] = std::max(1L, static_cast<long>(std::floor(side[i] / lo_side)));
              unit[i] = k[i] > 1 ? lo_side * space.coord_extent(i) : c.box.hi[i] - c.box.lo[i];
              total *= static_cast<double>(k[i]);
            }
            if (total <= kcap_total) split(c, k, stack, &unit);
            else capped_split(c, k, stack);
            continue;
          }
        }
        auto face_room = [&](const Point<D>& t) {
          double h = std::numeric_limits<double>::infinity();
          for (int i = 0; i < D; ++i)
            h = std::min(h, std::min(t[i] - c.box.lo[i], c.box.hi[i] - t[i]) / space.coord_extent(i));
          return h * (1.0 - gap);
        };
        auto clearance_at = [&](const Point<D>& t) {
          double cl = std::numeric_limits<double>::infinity();
          for (std::uint32_t o : c.obstacles) cl = std::min(cl, distance_to_set(obstacles[o], t));
          for (const auto& a : outside_atoms) cl = std::min(cl, space.dist(t, a));
          double mag = 1.0;
          for (int i = 0; i < D; ++i) mag = std::max(mag, std::abs(t[i]));
          return cl * (1.0 - gap) - 1e-13 * mag;
        };
        Point<D> tag = c.box.center();
        if (!omega.contains(tag) || (opt.tag_ok && !opt.tag_ok(tag))) {
          halve(c, stack);
          continue;
        }
        const double d_center = gauge_at(tag);
        if (d_center < face_room(tag)) {
          std::array<long, D> k{};
          for (int i = 0; i < D; ++i) {
            const double side = (c.box.hi[i] - c.box.lo[i]) / space.coord_extent(i);
            k[i] = std::max(1L, static_cast<long>(std::ceil(side / (2.0 * q * d_center))));
          }
          capped_split(c, k, stack);
          continue;
        }
        // Box-shaped members go into the low corner, as large as the cell and
        // the gauge allow.
        std::optional<MorseSet<D>> placed;
        if (unit_box && c.obstacles.empty()) {
          double t = std::numeric_limits<double>::infinity();
          for (int i = 0; i < D; ++i)
            t = std::min(t, (c.box.hi[i] - c.box.lo[i]) * (1.0 - 2.0 * gap) / (unit_box->hi[i] - unit_box->lo[i]));
          bool ok = false;
          Point<D> at{};
          for (int it = 0; it < 8 && t > 0.0; ++it) {
            for (int i = 0; i < D; ++i) at[i] = c.box.lo[i] + gap * (c.box.hi[i] - c.box.lo[i]) - t * unit_box->lo[i];
            if (!omega.contains(at) || (opt.tag_ok && !opt.tag_ok(at))) break;
            const double lim = std::min(
                gauge_at(at), plain_omega ? std::numeric_limits<double>::infinity() : omega.inner_distance(at) + eta_round);
            if (t <= lim) {
              ok = true;
              break;
            }
            t = lim * (1.0 - 1e-12);
          }
          if (ok) {
            MorseSet<D> cand = family.fit(at, t);
            bool clean = c.box.contains(cand.bounding_box());
            for (const auto& a : outside_atoms)
              if (cand.contains(a) || cand.on_boundary(a)) clean = false;
            if (clean) placed = std::move(cand);
          }
        }
        double room = placed ? 0.0 : std::min(face_room(tag), clearance_at(tag));
        if (!placed && (!c.obstacles.empty() || !outside_atoms.empty())) {
          // Move the tag to the lattice point of the cell with the most room.
          std::array<int, D> g{};
          for (;;) {
            Point<D> t{};
            for (int i = 0; i < D; ++i) t[i] = c.box.lo[i] + (c.box.hi[i] - c.box.lo[i]) * (g[i] + 1) / 4.0;
            const double r = std::min(face_room(t), clearance_at(t));
            if (r > room && r >= 1e-3 * face_room(c.box.center()) && omega.contains(t) &&
                (!opt.tag_ok || opt.tag_ok(t))) {
              room = r;
              tag = t;
            }
            int i = D - 1;
            while (i >= 0 && g[i] == 2) g[i--] = 0;
            if (i < 0) break;
            ++g[i];
          }
        }
        if (!placed) {
          if (!(room > 1e-3 * face_room(c.box.center()))) {
            halve(c, stack);
            continue;
          }
          const double d = tag == c.box.center() ? d_center : gauge_at(tag);
          const double inner =
              plain_omega ? std::numeric_limits<double>::infinity() : omega.inner_distance(tag) + eta_round;
          const double R = std::min({d, room, inner});
          if (!(R > 0.0)) {
            halve(c, stack);
            continue;
          }
          placed = family.fit(tag, R);
        }
        MorseSet<D> s = std::move(*placed);
        // s avoids every atom and lies inside the cell.
        const double m = mass_in(s);
        const double set_mass = restricted ? m : measure_of(dens, s).value;
        const bool leftover = open_mass - set_mass > 4.0 * D * gap * cell_mass + drop_threshold;
        if (leftover) {
          const auto sb = box_of(s);
          if (sb && c.obstacles.empty()) {
            // Exact remainder: slabs around the set, with the thin frames
            // left by the face gap absorbed into the set.
            Box<D> claimed = *sb;
            double h = 0.0;
            for (int i = 0; i < D; ++i) h = std::max(h, c.box.hi[i] - c.box.lo[i]);
            const double snap = 4.0 * gap * h + 1e-13;
            for (int i = 0; i < D; ++i) {
              if (claimed.lo[i] - c.box.lo[i] <= snap) claimed.lo[i] = c.box.lo[i];
              if (c.box.hi[i] - claimed.hi[i] <= snap) claimed.hi[i] = c.box.hi[i];
            }
            std::vector<Box<D>> rest;
            detail::subtract_box(c.box, claimed, rest);
            double kept = 0.0;
            for (const auto& b : rest) {
              kept += local.density_integral(b);
              next.push_back(detail::Cell<D>{b, {}});
            }
            dropped.add(std::max(0.0, open_mass - set_mass - kept));
          } else {
            obstacles.push_back(s);
            detail::Cell<D> rest = c;
            rest.obstacles.push_back(static_cast<std::uint32_t>(obstacles.size() - 1));
            halve(rest, next);
          }
        }
        propose(std::move(s), m, round);
      }
      if (om.value - pending() <= 0.5 * tol) done = true;
    }
    flush(round);
    out.residual_history.push_back(std::max(0.0, om.value - covered.value()));
    if (done) break;
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(next.size());
    for (std::size_t i = 0; i < next.size(); ++i) order.emplace_back(local.density_integral(next[i].box), i);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    queue.clear();
    queue.reserve(next.size());
    for (const auto& [w, i] : order) queue.push_back(std::move(next[i]));
    if (out.residual_history.back() <= tol || round >= opt.max_rounds) {
      for (const auto& c : queue) dropped.add(local.density_integral(c.box));
      break;
    }
  }
  if (out.residual_history.size() == 1) out.residual_history.push_back(std::max(0.0, om.value - covered.value()));

  out.covered = covered.value();
  out.covered_err = covered_err;
  out.residual = std::max(0.0, om.value - out.covered);
  out.excess = excess.value();
  for (int k = 1; k <= out.rounds; ++k) out.excess_bound += eps / std::ldexp(1.0, k + 1);
  if (!mu.atoms().empty()) out.excess_bound += 0.25 * eps;
  out.dropped = dropped.value();
  out.converged = out.residual <= tol;
  return out;
}

// Stores the whole sequence.
template <int D, class Gauge>
AeCover<D> ae_cover(const RadonMeasure<D>& mu, const Region<D>& omega, const MorseFamily<D>& family, Gauge&& delta,
                    double eps, double tol, const CoverOptions<D>& opt = {}) {
  std::vector<MorseSet<D>> seq;
  std::vector<double> mass;
  auto res = ae_cover_stream(
      mu, omega, family, std::forward<Gauge>(delta), eps, tol,
      [&](const MorseSet<D>& s, double m) {
        seq.push_back(s);
        mass.push_back(m);
      },
      opt);
  res.sequence = std::move(seq);
  res.masses = std::move(mass);
  return res;
}

// Exact pairwise disjointness of a stored cover (hash-grid candidates).
template <int D>
bool cover_disjoint(const std::vector<MorseSet<D>>& seq) {
  const auto nb = overlap_neighbors(seq);
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::uint32_t j : nb[i])
      if (j > i && intersects(seq[i], seq[j])) return false;
  return true;
}

// λ r ≤ δ(tag) for every set.
template <int D, class Gauge>
bool cover_fine(const std::vector<MorseSet<D>>& seq, Gauge&& delta) {
  for (const auto& s : seq)
    if (s.lambda() * s.inner_radius() > delta(s.tag()) * (1.0 + 1e-12)) return false;
  return true;
}

}  // namespace morsecover

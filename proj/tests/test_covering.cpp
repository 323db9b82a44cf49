#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"

using namespace morsecover;

namespace {

template <int D>
std::vector<MorseSet<D>> random_balls(const Space<D>& space, std::uint64_t seed, int n, double lo,
                                      double hi, double rmin, double rmax, double lambda = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(lo, hi), rad(rmin, rmax), unit(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<MorseSet<D>> out;
  const double wmax = (lambda - 1.0) / (lambda + 1.0);
  for (int k = 0; k < n; ++k) {
    Point<D> c{};
    for (int i = 0; i < D; ++i) c[i] = pos(rng);
    const double R = rad(rng);
    if (lambda == 1.0) {
      out.push_back(MorseSet<D>::closed_ball(space, c, R));
    } else {
      Point<D> u{};
      for (int i = 0; i < D; ++i) u[i] = g(rng);
      const Point<D> tag = c + (0.99 * wmax * unit(rng) * R) * space.normalize(u);
      out.push_back(MorseSet<D>::tagged_ball(space, c, R, tag, false, lambda));
    }
  }
  return out;
}

// Brute-force 1D packing count: points of [-R, R] with spacing m.
std::uint64_t brute_packing_1d(double R, double m) {
  return static_cast<std::uint64_t>(std::floor(2.0 * R / m + 1e-12)) + 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// packing

TEST(Packing, OneDimensionalBesicovitchConstant) {
  const auto r = packing_count(Space<1>(), 2.0, 1.0, true, false, 200, 1);
  EXPECT_EQ(r.lower, 5u);
  EXPECT_EQ(r.upper, 5u);
  EXPECT_EQ(r.lower, brute_packing_1d(2.0, 1.0));
  EXPECT_TRUE(verify_packing(Space<1>(), r.witness));
  auto pts = r.witness.points;
  std::sort(pts.begin(), pts.end());
  for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(pts[k][0], -2.0 + k);
}

TEST(Packing, SupNormGridInPlane) {
  const Space<2> s(NormKind::Linf);
  const auto r = packing_count(s, 2.0, 1.0, true, false, 0, 1);
  EXPECT_EQ(r.lower, 25u);
  EXPECT_GE(r.upper, 25u);
  EXPECT_TRUE(verify_packing(s, r.witness));
  for (const auto& p : r.witness.points) {
    EXPECT_EQ(p[0], std::round(p[0]));
    EXPECT_EQ(p[1], std::round(p[1]));
  }
}

TEST(Packing, UnitContainerGammaOne) {
  const auto r = packing_count(Space<1>(), 1.0, 1.0, false, false, 100, 3);
  EXPECT_EQ(r.lower, 3u);
  EXPECT_EQ(r.lower, brute_packing_1d(1.0, 1.0));
  EXPECT_EQ(packing_number_upper<1>(1.0), 3u);
}

TEST(Packing, LowerNeverExceedsUpper) {
  for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    for (double m : {0.5, 0.8, 1.0, 1.7}) {
      const auto r2 = packing_count(Space<2>(k), 2.0, m, false, false, 300, 5);
      EXPECT_LE(r2.lower, r2.upper);
      EXPECT_TRUE(verify_packing(Space<2>(k), r2.witness));
      const auto r3 = packing_count(Space<3>(k), 1.0, m, true, false, 100, 6, 20000);
      EXPECT_LE(r3.lower, r3.upper);
      EXPECT_TRUE(verify_packing(Space<3>(k), r3.witness));
      const auto rs = packing_count(Space<2>(k), 1.0, m / 2, false, true, 300, 7);
      EXPECT_LE(rs.lower, rs.upper);
      EXPECT_TRUE(verify_packing(Space<2>(k), rs.witness));
    }
  }
}

TEST(Packing, PerturbationNeverShrinksGreedy) {
  const Space<2> s;
  const auto greedy = packing_count(s, 2.0, 1.0, true, false, 0, 9);
  const auto searched = packing_count(s, 2.0, 1.0, true, false, 5000, 9);
  EXPECT_GE(searched.lower, greedy.lower);
  const auto again = packing_count(s, 2.0, 1.0, true, false, 5000, 9);
  EXPECT_EQ(again.witness.points, searched.witness.points);
}

TEST(Packing, WitnessCorruptionIsDetected) {
  auto r = packing_count(Space<1>(), 2.0, 1.0, true, false, 0, 1);
  r.witness.points.push_back({0.5});
  EXPECT_FALSE(verify_packing(Space<1>(), r.witness));
}

TEST(Packing, InvalidInputs) {
  EXPECT_THROW(packing_count(Space<1>(), 2.0, 0.0, true, false, 0), InputError);
  EXPECT_THROW(packing_count(Space<2>(), 2.0, 1.0, true, true, 0), InputError);
}

// ---------------------------------------------------------------------------
// kappa

TEST(Kappa, BallBound) {
  EXPECT_EQ(kappa_bound(Space<1>(), 1.0, KappaMode::Balls), 5u);
  EXPECT_LE(kappa_bound(Space<2>(), 1.0, KappaMode::Balls), 25u);
  EXPECT_LE(kappa_bound(Space<3>(), 1.0, KappaMode::Balls), 125u);
}

TEST(Kappa, MorseFormulaInPlane) {
  // Volume bounds: N(γ) = (2γ+1)^2, N_S(γ) = (2γ+1)^2 - (2γ-1)^2.
  const std::uint64_t n64 = 129 * 129, n8 = 17 * 17, ns16 = 33 * 33 - 31 * 31;
  const auto k = kappa_bound(Space<2>(), 1.0, KappaMode::Morse);
  EXPECT_EQ(k, n64 + n8 * ns16);
  EXPECT_GE(k, kappa_bound(Space<2>(), 1.0, KappaMode::Balls));
}

TEST(Kappa, MonotoneInLambda) {
  std::uint64_t prev = 0;
  for (double l = 1.0; l < 50.0; l *= 1.3) {
    const auto k = kappa_bound(Space<3>(), l, KappaMode::Morse);
    EXPECT_GE(k, prev);
    prev = k;
  }
  EXPECT_THROW(kappa_bound(Space<2>(), 0.9, KappaMode::Morse), InputError);
  EXPECT_EQ(kappa_bound(Space<3>(), 1e9, KappaMode::Morse), std::numeric_limits<std::uint64_t>::max());
}

// ---------------------------------------------------------------------------
// satellite configurations

TEST(Satellite, SingleEntry) {
  SatelliteConfig<2> c{{MorseSet<2>::closed_ball(Space<2>(), {0, 0}, 1.0)}, 1.5};
  EXPECT_TRUE(is_satellite_config(c).ok);
}

TEST(Satellite, DisjointBallsFail) {
  SatelliteConfig<2> c{{MorseSet<2>::closed_ball(Space<2>(), {0, 0}, 1.0),
                        MorseSet<2>::closed_ball(Space<2>(), {5, 0}, 1.0)},
                       1.5};
  const auto v = is_satellite_config(c);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.violation, "S1∩S2=∅");
}

TEST(Satellite, HandCheckedOneDimensionalPair) {
  const Space<1> s;
  const auto s1 = MorseSet<1>::closed_ball(s, {0.0}, 1.0);
  const auto s2 = MorseSet<1>::tagged_ball(s, {1.05}, 0.55, {1.1}, false, 2.0);
  SatelliteConfig<1> c{{s1.with_lambda(2.0), s2}, 1.5};
  EXPECT_TRUE(is_satellite_config(c).ok);
  // Clause by clause.
  EXPECT_TRUE(intersects(c.ordered[0], c.ordered[1]));
  EXPECT_FALSE(c.ordered[0].interior_contains({1.1}));
  EXPECT_LT(c.ordered[1].diameter(), 1.5 * c.ordered[0].diameter());
}

TEST(Satellite, OrderSensitive) {
  const Space<1> s;
  const auto big = MorseSet<1>::closed_ball(s, {0.0}, 1.0);
  const auto small = MorseSet<1>::closed_ball(s, {1.5}, 0.6);
  SatelliteConfig<1> good{{big, small}, 1.2};
  SatelliteConfig<1> bad{{small, big}, 1.2};
  EXPECT_TRUE(is_satellite_config(good).ok);
  EXPECT_FALSE(is_satellite_config(bad).ok);
}

TEST(Satellite, RejectsBadTauAndMixedSpaces) {
  SatelliteConfig<2> c{{MorseSet<2>::closed_ball(Space<2>(), {0, 0}, 1.0)}, 1.0};
  EXPECT_THROW(is_satellite_config(c), InputError);
  c.tau = 2.5;
  EXPECT_THROW(is_satellite_config(c), InputError);
  c.tau = 1.5;
  c.ordered.push_back(MorseSet<2>::closed_ball(Space<2>(NormKind::L1), {0, 0}, 1.0));
  EXPECT_THROW(is_satellite_config(c), InputError);
}

TEST(SatelliteSearch, ZeroBudgetIsSingleton) {
  const auto r = satellite_search(Space<2>(), 1.0, 1.2, 0, 1);
  EXPECT_EQ(r.config.ordered.size(), 1u);
}

TEST(SatelliteSearch, OneDimensionalFindsPair) {
  const auto r = satellite_search(Space<1>(), 1.0, 1.5, 2000, 4);
  EXPECT_GE(r.config.ordered.size(), 2u);
  EXPECT_TRUE(is_satellite_config(r.config).ok);
  EXPECT_LE(r.config.ordered.size(), r.kappa);
}

TEST(SatelliteSearch, OutputsVerifyAndRespectBound) {
  for (double lambda : {1.0, 2.0})
    for (double tau : {1.2, 2.0}) {
      const auto r = satellite_search(Space<2>(), lambda, tau, 1500, 11);
      EXPECT_TRUE(is_satellite_config(r.config).ok);
      EXPECT_LE(r.config.ordered.size(), r.kappa);
      EXPECT_LE(r.config.ordered.size(), kappa_bound(Space<2>(), lambda, KappaMode::Morse));
    }
}

// ---------------------------------------------------------------------------
// greedy selection and partition

TEST(Greedy, FarBallsAllSelectedByDiameter) {
  const Space<2> s;
  std::vector<MorseSet<2>> sets;
  const double radii[] = {0.3, 0.9, 0.5, 0.9, 0.1};
  for (int k = 0; k < 5; ++k) sets.push_back(MorseSet<2>::closed_ball(s, {10.0 * k, 0}, radii[k]));
  const auto order = greedy_select(sets, 1.2);
  EXPECT_EQ(order, (std::vector<std::size_t>{1, 3, 2, 0, 4}));
}

TEST(Greedy, ConcentricKeepsLargest) {
  const Space<2> s;
  std::vector<MorseSet<2>> sets{MorseSet<2>::closed_ball(s, {0, 0}, 1.0),
                                MorseSet<2>::closed_ball(s, {0, 0}, 2.0)};
  EXPECT_EQ(greedy_select(sets, 1.2), (std::vector<std::size_t>{1}));
}

TEST(Greedy, EmptyFamily) {
  EXPECT_TRUE(greedy_select(std::vector<MorseSet<2>>{}, 1.2).empty());
}

TEST(Greedy, SeededInstancePassesPosteriorChecks) {
  const Space<2> s;
  const auto sets = random_balls(s, 42, 200, 0.0, 10.0, 0.2, 1.0);
  const auto order = greedy_select(sets, 1.2);
  EXPECT_EQ(check_selection_order(sets, order, 1.2), (std::pair<long, long>{-1, -1}));
  EXPECT_TRUE(tags_covered(sets, order));
  const auto part = partition_disjoint(sets, order, kappa_bound(s, 1.0, KappaMode::Balls));
  EXPECT_TRUE(families_disjoint(sets, part));
  EXPECT_LE(part.families.size(), part.kappa);
  std::size_t total = 0;
  for (const auto& f : part.families) total += f.size();
  EXPECT_EQ(total, order.size());
}

TEST(Partition, DisjointSetsFormOneFamily) {
  const Space<2> s;
  std::vector<MorseSet<2>> sets;
  for (int k = 0; k < 6; ++k) sets.push_back(MorseSet<2>::closed_ball(s, {3.0 * k, 0}, 1.0));
  const auto part = partition_disjoint(sets, greedy_select(sets, 1.2), 25);
  EXPECT_EQ(part.families.size(), 1u);
}

TEST(Partition, BallsThroughCommonPoint) {
  const Space<2> s;
  std::vector<MorseSet<2>> sets;
  const int k = 6;
  for (int j = 0; j < k; ++j) {
    const double a = 2 * std::numbers::pi * j / k;
    sets.push_back(MorseSet<2>::closed_ball(s, {std::cos(a), std::sin(a)}, 1.0));
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  EXPECT_EQ(partition_disjoint(sets, order, 25).families.size(), static_cast<std::size_t>(k));
}

TEST(Partition, InconsistentOrderIsInputError) {
  const Space<2> s;
  std::vector<MorseSet<2>> sets{MorseSet<2>::closed_ball(s, {0, 0}, 1.0)};
  EXPECT_THROW(partition_disjoint(sets, {0, 0}, 25), InputError);
  EXPECT_THROW(partition_disjoint(sets, {3}, 25), InputError);
}

template <int D>
void kappa_property(const Space<D>& s, double lambda, std::uint64_t seed) {
  const auto mode = lambda == 1.0 ? KappaMode::Balls : KappaMode::Morse;
  const auto kappa = kappa_bound(s, lambda, mode);
  for (int inst = 0; inst < 100; ++inst) {
    const auto sets = random_balls(s, seed * 1000 + inst, 40, 0.0, 4.0, 0.2, 1.0, lambda);
    const auto order = greedy_select(sets, 1.2);
    const auto part = partition_disjoint(sets, order, kappa);
    ASSERT_LE(part.families.size(), kappa);
    ASSERT_TRUE(tags_covered(sets, order));
    ASSERT_TRUE(families_disjoint(sets, part));
  }
}

TEST(Partition, FamilyCountWithinKappa) {
  std::uint64_t seed = 1;
  for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf})
    for (double lambda : {1.0, 2.0}) {
      kappa_property(Space<1>(k), lambda, seed++);
      kappa_property(Space<2>(k), lambda, seed++);
      kappa_property(Space<3>(k), lambda, seed++);
    }
}

TEST(Partition, StarFamiliesStayDisjoint) {
  std::mt19937_64 rng(4);
  std::vector<MorseSet<2>> sets;
  for (int k = 0; k < 60; ++k) sets.push_back(mc_test::random_star(rng).with_lambda(1e3));
  const auto order = greedy_select(sets, 1.5);
  const auto part = partition_disjoint(sets, order, kappa_bound(Space<2>(), 1e3, KappaMode::Morse));
  EXPECT_TRUE(families_disjoint(sets, part));
  EXPECT_TRUE(tags_covered(sets, order));
}

// ---------------------------------------------------------------------------
// heavy subfamily

TEST(Heavy, SingleFamilyPrefix) {
  Partition p;
  p.families = {{0, 1, 2, 3}};
  const auto h = heavy_subfamily(p, {1.0, 1.0, 1.0, 1.0});
  EXPECT_EQ(h.family, 0u);
  EXPECT_EQ(h.prefix, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(h.prefix_mass, 2.0);
}

TEST(Heavy, PicksHeavierFamily) {
  Partition p;
  p.families = {{0}, {1, 2}};
  const auto h = heavy_subfamily(p, {1.0, 2.0, 1.0});
  EXPECT_EQ(h.family, 1u);
  EXPECT_DOUBLE_EQ(h.family_mass, 3.0);
  EXPECT_THROW(heavy_subfamily(p, {1.0, std::nan(""), 1.0}), InputError);
}

TEST(Heavy, CountingMeasureOnTags) {
  const Space<2> s;
  const auto sets = random_balls(s, 42, 200, 0.0, 10.0, 0.2, 1.0);
  const auto order = greedy_select(sets, 1.2);
  const auto part = partition_disjoint(sets, order, kappa_bound(s, 1.0, KappaMode::Balls));
  std::vector<double> mass(sets.size(), 0.0);
  for (std::size_t i : order)
    for (const auto& t : sets)
      if (sets[i].interior_contains(t.tag())) mass[i] += 1.0;
  const auto h = heavy_subfamily(part, mass);
  const double outer = 200.0;  // μ*(A): every tag carries unit mass
  EXPECT_LE(outer, 2.0 * static_cast<double>(part.families.size()) * h.prefix_mass);
  EXPECT_LE(outer, 2.0 * static_cast<double>(part.kappa) * h.prefix_mass);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"

using namespace morsecover;
using mc_test::crossing_inside;

namespace {

const Space<2> kL2;
const Space<2> kL1(NormKind::L1);
const Space<2> kLinf(NormKind::Linf);

MorseSet<2> five_point_star() {
  return regular_star(kL2, {0.0, 0.0}, 5, 1.0, 0.4, 0.3, 1.0 / 0.3);
}

}  // namespace

// ---------------------------------------------------------------------------
// norms

TEST(Norm, CoordinateExamples) {
  const Point<2> x{3.0, -4.0};
  EXPECT_DOUBLE_EQ(kLinf.norm(x), 4.0);
  EXPECT_DOUBLE_EQ(kL1.norm(x), 7.0);
  EXPECT_DOUBLE_EQ(kL2.norm(x), 5.0);
}

TEST(Norm, DimensionMismatchIsInputError) {
  const std::vector<double> three{1.0, 2.0, 3.0};
  EXPECT_THROW(norm_eval(kL2, three), InputError);
  const std::vector<double> two{3.0, -4.0};
  EXPECT_DOUBLE_EQ(norm_eval(kL2, two), 5.0);
}

TEST(Norm, RejectsNonPositiveWeights) {
  EXPECT_THROW(Space<2>(NormKind::WeightedLinf, {1.0, 0.0}), InputError);
  EXPECT_THROW(Space<2>(NormKind::WeightedLinf), InputError);
}

template <int D>
void check_axioms(const Space<D>& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    Point<D> x{}, y{};
    for (int i = 0; i < D; ++i) {
      x[i] = g(rng);
      y[i] = g(rng);
    }
    const double c = g(rng);
    const double nx = s.norm(x), ny = s.norm(y);
    EXPECT_LE(s.norm(x + y), (nx + ny) * (1 + 1e-12));
    EXPECT_NEAR(s.norm(c * x), std::abs(c) * nx, 1e-12 * std::abs(c) * nx + 1e-300);
    EXPECT_GT(nx, 0.0);
  }
  EXPECT_EQ(s.norm(zero_point<D>()), 0.0);
}

TEST(Norm, AxiomsHoldOnSamples) {
  for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    check_axioms(Space<1>(k), 1);
    check_axioms(Space<2>(k), 2);
    check_axioms(Space<3>(k), 3);
  }
  check_axioms(Space<2>(NormKind::WeightedLinf, {0.5, 2.0}), 4);
  check_axioms(Space<3>(NormKind::WeightedLinf, {1.0, 3.0, 0.25}), 5);
}

TEST(Norm, UnitBallVolumeMatchesMonteCarlo) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    const Space<3> s(k);
    int hits = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i)
      if (s.norm({u(rng), u(rng), u(rng)}) <= 1.0) ++hits;
    EXPECT_NEAR(s.unit_ball_volume(), 8.0 * hits / n, 0.03);
  }
}

// ---------------------------------------------------------------------------
// membership

TEST(Contains, ClosedBallBoundary) {
  const auto b = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  EXPECT_TRUE(b.contains({1.0, 0.0}));
  EXPECT_FALSE(b.interior_contains({1.0, 0.0}));
  EXPECT_TRUE(b.interior_contains({0.0, 0.0}));
  EXPECT_FALSE(b.contains({1.0 + 1e-6, 0.0}));
}

TEST(Contains, TaggedIntervalIsHalfOpen) {
  const auto s = MorseSet<2>::tagged_interval(kL2, {0, 0}, {1, 1}, {0.5, 0.5}, 10.0);
  EXPECT_FALSE(s.contains({0.0, 0.5}));
  EXPECT_TRUE(s.contains({1.0, 0.5}));
  EXPECT_TRUE(s.contains({1.0, 1.0}));
  EXPECT_TRUE(s.closure().contains({0.0, 0.5}));
  EXPECT_FALSE(s.interior_contains({1.0, 0.5}));
  EXPECT_DOUBLE_EQ(s.tag()[0], 0.5);
}

TEST(Contains, TaggedIntervalRejectsLargeFractions) {
  EXPECT_THROW(MorseSet<2>::tagged_interval(kL2, {0, 0}, {1, 1}, {0.8, 0.8}, 10.0), InputError);
}

TEST(Contains, StarPolygonAgreesWithCrossingOracle) {
  const auto s = five_point_star();
  const auto verts = s.vertices();
  const Point<2> outer{0.0, 1.0};  // first outer vertex sits at angle pi/2
  EXPECT_TRUE(crossing_inside(verts, 0.99 * outer));
  EXPECT_TRUE(s.contains(0.99 * outer));
  EXPECT_FALSE(crossing_inside(verts, 1.01 * outer));
  EXPECT_FALSE(s.contains(1.01 * outer));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int agree = 0, total = 0;
  for (int k = 0; k < 20000; ++k) {
    const Point<2> p{u(rng), u(rng)};
    ++total;
    if (s.contains(p) == crossing_inside(verts, p)) ++agree;
  }
  EXPECT_EQ(agree, total);
}

TEST(Contains, StarMidpointToVertexIsInterior) {
  const auto s = five_point_star();
  for (const auto& v : s.vertices()) EXPECT_TRUE(s.interior_contains(0.5 * v));
}

TEST(Contains, ConvexPolytopeHalfspaces) {
  const Space<3> s;
  std::vector<Point<3>> verts, normals;
  std::vector<double> heights;
  for (unsigned m = 0; m < 8; ++m)
    verts.push_back({m & 1 ? 1.0 : -1.0, m & 2 ? 1.0 : -1.0, m & 4 ? 1.0 : -1.0});
  for (int i = 0; i < 3; ++i)
    for (double sgn : {-1.0, 1.0}) {
      Point<3> n{};
      n[i] = sgn;
      normals.push_back(n);
      heights.push_back(1.0);
    }
  const auto cube = MorseSet<3>::convex_polytope(s, {0, 0, 0}, 1.0, verts, normals, heights, std::sqrt(3.0));
  EXPECT_TRUE(cube.contains({1.0, 1.0, 1.0}));
  EXPECT_FALSE(cube.interior_contains({1.0, 0.0, 0.0}));
  EXPECT_FALSE(cube.contains({1.01, 0.0, 0.0}));
  EXPECT_NEAR(cube.diameter(), 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(cube.max_kernel_radius(), 1.0, 1e-12);
  EXPECT_TRUE(validate_morse(cube).valid);
}

TEST(Construction, RejectsDegenerateInputs) {
  EXPECT_THROW(MorseSet<2>::closed_ball(kL2, {0, 0}, 0.0), InputError);
  EXPECT_THROW(MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0, 0.5), InputError);
  EXPECT_THROW(MorseSet<2>::tagged_ball(kL2, {0, 0}, 1.0, {0.5, 0}, true, 2.0), InputError);
  EXPECT_THROW(regular_star(kL2, {0, 0}, 5, 1.0, 0.4, 0.0, 4.0), InputError);
  EXPECT_THROW(MorseSet<2>::star_polygon(kL2, {0, 0}, 0.1, {}, 4.0), InputError);
}

// ---------------------------------------------------------------------------
// segment_interior (cone property)

TEST(SegmentInterior, Examples) {
  const auto b = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  const auto p = segment_interior(b, {0, 0}, {1, 0}, 0.5);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  const auto q = segment_interior(b, {0.1, 0.2}, {1, 0}, 1.0);
  EXPECT_DOUBLE_EQ(q[0], 0.1);
  const auto star = five_point_star();
  const auto z = segment_interior(star, {0, 0}, {0, 1.0}, 0.1);
  EXPECT_TRUE(crossing_inside(star.vertices(), z));
}

TEST(SegmentInterior, PreconditionViolationsAreContractErrors) {
  const auto b = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  EXPECT_THROW(segment_interior(b, {1.0, 0.0}, {0.0, 0.0}, 0.5), ContractError);
  EXPECT_THROW(segment_interior(b, {0.0, 0.0}, {2.0, 0.0}, 0.5), ContractError);
  EXPECT_THROW(segment_interior(b, {0.0, 0.0}, {1.0, 0.0}, 0.0), ContractError);
}

template <int D>
void cone_property(const MorseSet<D>& s, std::uint64_t seed, int n = 1000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto members = s.member_samples(4 * n);
  const auto bnd = s.boundary_samples(n);
  for (int k = 0; k < n; ++k) {
    const Point<D> y = mc_test::random_in_ball(rng, s.space(), s.tag(), s.inner_radius() * 0.999);
    const Point<D>& x = k % 2 ? members[k] : bnd[k % bnd.size()];
    const double alpha = std::max(1e-3, u(rng));
    Point<D> p{};
    ASSERT_NO_THROW(p = segment_interior(s, y, x, alpha));
    EXPECT_TRUE(s.interior_contains(p));
  }
}

TEST(SegmentInterior, ConePropertyOnBallsIntervalsStars) {
  cone_property(MorseSet<2>::closed_ball(kL2, {1, 2}, 0.7), 1);
  cone_property(MorseSet<2>::tagged_ball(kL1, {0, 0}, 1.0, {0.2, -0.1}, true, 3.0), 2);
  cone_property(MorseSet<2>::tagged_interval(kL2, {0, 0}, {1, 2}, {0.3, 0.6}, 10.0), 3);
  cone_property(MorseSet<3>::tagged_interval(Space<3>(), {0, 0, 0}, {1, 2, 1}, {0.3, 0.6, 0.4}, 10.0), 4);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) cone_property(mc_test::random_star(rng), 100 + k);
}

// ---------------------------------------------------------------------------
// scaling

TEST(Scale, Examples) {
  const auto b = MorseSet<2>::closed_ball(kL2, {1, 1}, 2.0);
  EXPECT_TRUE(b.scaled(1.0).approx_equal(b, 0.0));
  const auto h = b.scaled(0.5);
  const auto& ball = std::get<Ball<2>>(h.shape());
  EXPECT_DOUBLE_EQ(ball.radius, 1.0);
  EXPECT_DOUBLE_EQ(h.inner_radius(), 1.0);
  EXPECT_EQ(ball.center, (Point<2>{1, 1}));
  EXPECT_THROW(b.scaled(0.0), InputError);
  EXPECT_THROW(b.scaled(1.5), InputError);

  const auto star = five_point_star();
  const auto half = star.scaled(0.5);
  for (const auto& p : half.boundary_samples(512)) EXPECT_TRUE(star.interior_contains(p));
}

TEST(Scale, SemigroupAndNestedBoundaries) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int k = 0; k < 100; ++k) {
    const auto s = mc_test::random_star(rng);
    double p = u(rng), q = u(rng);
    if (p > q) std::swap(p, q);
    if (q - p < 1e-3) q = std::min(1.0, p + 1e-3);
    EXPECT_TRUE(s.scaled(q).scaled(p / q).approx_equal(s.scaled(p), 1e-12));
    const auto sq = s.scaled(q);
    for (const auto& x : s.scaled(p).boundary_samples(128)) EXPECT_TRUE(sq.interior_contains(x));
  }
}

// ---------------------------------------------------------------------------
// diameter

TEST(Diameter, Examples) {
  for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf})
    EXPECT_DOUBLE_EQ(MorseSet<2>::closed_ball(Space<2>(k), {0, 0}, 1.5).diameter(), 3.0);
  const auto iv = MorseSet<2>::tagged_interval(kL2, {0, 0}, {1, 2}, {0.5, 0.5}, 10.0);
  double brute = 0.0;
  const auto v = iv.vertices();
  for (const auto& a : v)
    for (const auto& b : v) brute = std::max(brute, kL2.dist(a, b));
  EXPECT_NEAR(iv.diameter(), brute, 1e-15);
  EXPECT_NEAR(iv.diameter(), std::sqrt(5.0), 1e-15);
}

TEST(Diameter, ScalesLinearly) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int k = 0; k < 50; ++k) {
    const auto s = mc_test::random_star(rng);
    const double p = u(rng);
    EXPECT_NEAR(s.scaled(p).diameter(), p * s.diameter(), 1e-12 * s.diameter());
    double brute = 0.0;
    for (const auto& a : s.vertices())
      for (const auto& b : s.vertices()) brute = std::max(brute, kL2.dist(a, b));
    EXPECT_NEAR(s.diameter(), brute, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// validation

TEST(Validate, BallsAndOffsets) {
  const auto b = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  const auto rep = validate_morse(b);
  EXPECT_TRUE(rep.valid);
  EXPECT_DOUBLE_EQ(rep.min_lambda, 1.0);

  const auto open = MorseSet<2>::tagged_ball(kL2, {0, 0}, 3.0, {1.0, 0.0}, true, 2.0);
  const auto r2 = validate_morse(open);
  EXPECT_TRUE(r2.valid);
  EXPECT_NEAR(r2.min_lambda, 2.0, 1e-12);
  EXPECT_NEAR(open.inner_radius(), 2.0, 1e-12);
}

TEST(Validate, AppendedFarVertexIsInvalid) {
  // 64-gon approximating the unit ball.
  std::vector<Point<2>> v;
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * std::numbers::pi * k / 64;
    v.push_back({std::cos(a), std::sin(a)});
  }
  const double lambda = 1.1;
  const double r = std::cos(std::numbers::pi / 64);
  const auto poly = MorseSet<2>::star_polygon(kL2, {0, 0}, r, v, lambda);
  EXPECT_TRUE(validate_morse(poly).valid);
  const double a = 2 * std::numbers::pi * 0.5 / 64;
  const auto spiked = poly.with_extra_vertex({3 * lambda * std::cos(a), 3 * lambda * std::sin(a)});
  const auto rep = validate_morse(spiked);
  EXPECT_FALSE(rep.valid);
  EXPECT_FALSE(rep.violation.empty());
}

TEST(Validate, NonStarlikeShapeIsCaught) {
  // A thin deep notch: the kernel ball cannot see the far side of it.
  const auto s = MorseSet<2>::star_polygon(
      kL2, {0, 0}, 0.5,
      {{1, 0}, {1, 1}, {-1, 1}, {-1, -1}, {0.95, -1}, {0.95, -0.05}, {0.02, -0.04}, {1, -0.03}}, 10.0);
  EXPECT_FALSE(validate_morse(s).valid);
}

TEST(Validate, ClosureOfStarIsMorse) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 20; ++k) {
    const auto s = mc_test::random_star(rng);
    EXPECT_TRUE(validate_morse(s.closure()).valid);
    EXPECT_TRUE(validate_morse(s.interior_variant()).valid);
  }
}

TEST(Validate, ZeroSamplesIsInputError) {
  EXPECT_THROW(validate_morse(five_point_star(), 0), InputError);
}

// ---------------------------------------------------------------------------
// intersections

TEST(Intersect, BallPairs) {
  const auto a = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  const auto b = MorseSet<2>::closed_ball(kL2, {2, 0}, 1.0);
  const auto c = MorseSet<2>::closed_ball(kL2, {5, 0}, 1.0);
  EXPECT_TRUE(intersects(a, b));   // tangent closed balls share a point
  EXPECT_FALSE(intersects(a, c));
  const auto bo = MorseSet<2>::tagged_ball(kL2, {2, 0}, 1.0, {2, 0}, true, 1.0);
  EXPECT_FALSE(intersects(a, bo));  // tangent with one open ball
}

TEST(Intersect, HalfOpenIntervalsTile) {
  const auto a = MorseSet<1>::tagged_interval(Space<1>(), {0.0}, {1.0}, {0.5}, 2.0);
  const auto b = MorseSet<1>::tagged_interval(Space<1>(), {1.0}, {1.0}, {0.5}, 2.0);
  EXPECT_FALSE(intersects(a, b));
  EXPECT_TRUE(intersects(a.closure(), b.closure()));
  EXPECT_TRUE(intersects(a, b.closure()));
}

TEST(Intersect, MixedShapesAgreeWithDenseSampling) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(-3, 3), rad(0.3, 1.5);
  for (int k = 0; k < 200; ++k) {
    const auto star = mc_test::random_star(rng);
    const auto ball = MorseSet<2>::closed_ball(kL2, {pos(rng), pos(rng)}, rad(rng));
    // Oracle: dense boundary/area sampling of both sets.
    bool hit = false;
    for (const auto& p : ball.member_samples(4000))
      if (star.contains(p)) { hit = true; break; }
    if (!hit)
      for (const auto& p : star.member_samples(4000))
        if (ball.contains(p)) { hit = true; break; }
    if (hit) EXPECT_TRUE(intersects(star, ball));
    // Non-intersection claims are checked via distance lower bounds.
    if (!intersects(star, ball)) {
      for (const auto& v : star.boundary_samples(256)) EXPECT_FALSE(ball.contains(v));
    }
  }
}

TEST(Intersect, DistanceToSet) {
  const auto b = MorseSet<2>::closed_ball(kL2, {0, 0}, 1.0);
  EXPECT_NEAR(distance_to_set(b, {3.0, 4.0}), 4.0, 1e-15);
  const auto box = MorseSet<2>::closed_ball(kLinf, {0, 0}, 1.0);
  EXPECT_NEAR(distance_to_set(box, {3.0, 0.5}), 2.0, 1e-15);
  EXPECT_EQ(distance_to_set(box, {0.5, 0.5}), 0.0);
}

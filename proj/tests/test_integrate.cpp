#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace mc_test;

namespace {

const Box<1> kUnit1{{0.0}, {1.0}};
const Box<2> kUnit2{{0.0, 0.0}, {1.0, 1.0}};
const Space<1> kLine;
const Space<2> kSup(NormKind::Linf);

RadonMeasure<1> lebesgue1() { return RadonMeasure<1>::lebesgue(kUnit1); }
Region<1> unit_interval() { return Region<1>::box(kUnit1); }
MorseFamily<1> balls1() { return MorseFamily<1>::balls(kLine); }

// Exact integral of a piecewise-constant 1D density over [a, b].
double density_mass(const RadonMeasure<1>& mu, double a, double b) {
  double m = 0.0;
  for (const auto& p : mu.pieces()) {
    const double lo = std::max(a, p.box.lo[0]), hi = std::min(b, p.box.hi[0]);
    if (hi > lo) m += p.value * (hi - lo);
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gauges

TEST(Gauge, ConstantIntegrandGivesOne) {
  const auto g = modulus_gauge(builtin_integrand<1>("const:4"), 1e-3, lebesgue1(), unit_interval());
  for (double x : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(g({x}), 1.0);
  EXPECT_EQ(g.kind, GaugeKind::Modulus);
}

TEST(Gauge, LinearIntegrandFiniteMeasure) {
  const auto g = modulus_gauge(builtin_integrand<1>("x"), 0.1, lebesgue1(), unit_interval());
  // ρ(x, γ) = γ, γ = 0.1 / (1 + 1)
  for (double x : {0.0, 0.25, 0.5, 0.9}) EXPECT_NEAR(g({x}), 0.05, 1e-12);
}

TEST(Gauge, UnboundedDomainDecaysWithNorm) {
  RadonMeasure<1> mu;
  const double w[] = {0.05, 0.2, 0.5, 0.2, 0.05};
  for (int i = 0; i < 5; ++i) mu.add_density(Box<1>{{-2.5 + i}, {-1.5 + i}}, w[i]);
  const auto f = builtin_integrand<1>("x^2");
  const double eps = 0.01;
  const auto g = modulus_gauge(f, eps, mu, Region<1>::whole(kLine));
  double prev = 2.0;
  for (int k = 1; k <= 3; ++k) {
    const double x = k - 0.5;  // smallest integer above |x| is k
    const double gamma = eps * std::ldexp(1.0, -k) / (1.0 + density_mass(mu, -(k + 1.0), k + 1.0));
    const double rho = gamma / (std::sqrt(x * x + gamma) + x);
    EXPECT_NEAR(g({x}), rho, 1e-9 * rho) << "k=" << k;
    EXPECT_LT(g({x}), prev);
    prev = g({x});
  }
}

TEST(Gauge, ValuesStayInUnitInterval) {
  const auto f = expression_integrand<2>("sin(5*x1)*exp(x2)");
  const auto g = modulus_gauge(f, 1e-2, RadonMeasure<2>::lebesgue(kUnit2), Region<2>::box(kUnit2, kSup));
  EXPECT_EQ(g.kind, GaugeKind::LebesguePoint);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double d = g({u(rng), u(rng)});
    EXPECT_GT(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

TEST(Gauge, SampledModulusHoldsOnProbes) {
  const auto f = expression_integrand<1>("x^3 - 2*x");
  for (double x : {0.1, 0.5, 0.8}) {
    const double gamma = 1e-3;
    const double r = sampled_modulus(f, kLine, {x}, gamma);
    ASSERT_GT(r, 0.0);
    // |f'| ≤ 2 + 3x² near x, so the radius cannot be much larger than γ / |f'|
    const double slope = std::abs(3 * x * x - 2);
    EXPECT_LT(r, 2.0 * gamma / slope);
    for (int k = -20; k <= 20; ++k) {
      const double y = x + r * k / 20.5;
      EXPECT_LT(std::abs(f({y}) - f({x})), gamma);
    }
  }
}

TEST(Gauge, NullSetAndAtomsShrinkRadii) {
  const auto f = builtin_integrand<1>("step");
  const auto g = modulus_gauge(f, 1e-3, lebesgue1(), unit_interval());
  EXPECT_LT(g({0.4}), 0.1 + 1e-12);
  EXPECT_LE(g({0.5}), 1.0);
  // the null-set radius r satisfies μ([½-r, ½+r]) · 2 sup|f| ≤ ε/4
  EXPECT_LE(2 * g({0.5}) * 2 * 3.0, 0.25e-3 + 1e-15);

  auto mu = lebesgue1();
  mu.add_atom({0.0}, 1.0);
  const auto h = with_point_value(builtin_integrand<1>("x"), {0.0}, 7.0);
  const auto gh = modulus_gauge(h, 1e-3, mu, unit_interval());
  const double r = gh({0.0});
  // density mass times oscillation near the atom stays below ε/4
  EXPECT_LE(r * 7.0, 0.25e-3);
}

TEST(Gauge, RejectsBadInput) {
  EXPECT_THROW(modulus_gauge(builtin_integrand<1>("x"), 0.0, lebesgue1(), unit_interval()), InputError);
  EXPECT_THROW(Gauge<1>::constant(0.0), InputError);
  EXPECT_THROW(Gauge<1>::constant(1.5), InputError);
}

// ---------------------------------------------------------------------------
// Riemann sums

TEST(RiemannSum, ConstantOneOnCoarseCover) {
  const auto cover = ae_cover(lebesgue1(), unit_interval(), balls1(), [](const Point<1>&) { return 1.0; }, 1e-3, 1e-3);
  const auto r = riemann_sum(builtin_integrand<1>("one"), cover);
  EXPECT_GE(r.sum, 0.999);
  EXPECT_LE(r.sum, 1.001);
  const auto r2 = riemann_sum(builtin_integrand<1>("one"), cover, lebesgue1());
  EXPECT_NEAR(r2.sum, r.sum, 1e-12);
  EXPECT_DOUBLE_EQ(riemann_sum(builtin_integrand<1>("const:0"), cover).sum, 0.0);
}

TEST(RiemannSum, MidpointRuleExactForLinear) {
  const auto f = builtin_integrand<1>("x");
  for (int n : {1, 3, 10, 97}) {
    std::vector<MorseSet<1>> sets;
    std::vector<double> masses;
    const double w = 1.0 / n;
    for (int i = 0; i < n; ++i) {
      sets.push_back(MorseSet<1>::tagged_interval(kLine, {i * w}, {w}, {0.5}, 3.0));
      masses.push_back(w);
    }
    EXPECT_NEAR(riemann_sum(f, sets, masses).sum, 0.5, 1e-14) << n;
  }
}

TEST(RiemannSum, LinearityAndMonotonicity) {
  IntegrateOptions<1> opt;
  opt.keep_cover = true;
  const auto c = integrate(builtin_integrand<1>("x^2"), unit_interval(), lebesgue1(), balls1(), 1e-2, opt);
  const auto& cover = c.cover;
  ASSERT_FALSE(cover.sequence.empty());
  const auto f = builtin_integrand<1>("x^2");
  const auto g = builtin_integrand<1>("sin(pi x)");
  const double a = 2.5, b = -1.75;
  const auto combo = f.scaled(a).plus(g.scaled(b));
  const double lhs = riemann_sum(combo, cover).sum;
  const double rhs = a * riemann_sum(f, cover).sum + b * riemann_sum(g, cover).sum;
  EXPECT_NEAR(lhs, rhs, 1e-12);
  // x² ≤ x on [0,1]
  EXPECT_LE(riemann_sum(f, cover).sum, riemann_sum(builtin_integrand<1>("x"), cover).sum);
  const auto r = riemann_sum(combo, cover);
  EXPECT_GE(r.abs_sum, std::abs(r.sum));
}

TEST(RiemannSum, LengthMismatchRejected) {
  EXPECT_THROW(riemann_sum(builtin_integrand<1>("x"), std::vector<MorseSet<1>>(1, MorseSet<1>::closed_ball(kLine, {0.0}, 1.0)),
                           std::vector<double>{}),
               InputError);
}

// ---------------------------------------------------------------------------
// Integration

TEST(Integrate, SquareOnUnitInterval) {
  const auto c = integrate(builtin_integrand<1>("x^2"), unit_interval(), lebesgue1(), balls1(), 1e-3);
  EXPECT_NEAR(c.value, 1.0 / 3.0, 1e-3);
  EXPECT_TRUE(c.converged);
  EXPECT_GE(c.abs_sum, std::abs(c.sum));
  EXPECT_EQ(c.gauge, GaugeKind::Modulus);
  EXPECT_LE(c.residual, c.tol);
  EXPECT_NEAR(c.tol, 1e-6, 1e-15);
  EXPECT_TRUE(c.diagnostic.empty());
}

TEST(Integrate, SingleAtom) {
  const auto mu = RadonMeasure<1>::dirac({0.0});
  const auto f = with_point_value(builtin_integrand<1>("x"), {0.0}, 7.0);
  Region<1> omega(kLine);
  omega.add_point({0.0});
  const auto c = integrate(f, omega, mu, balls1(), 1e-3);
  EXPECT_DOUBLE_EQ(c.value, 7.0);
  EXPECT_EQ(c.count, 1u);
}

TEST(Integrate, StepFunction) {
  const auto c = integrate(builtin_integrand<1>("step"), unit_interval(), lebesgue1(), balls1(), 1e-3);
  EXPECT_NEAR(c.value, 2.0, 1e-3);
}

TEST(Integrate, AtomPlusDensity) {
  auto mu = lebesgue1();
  mu.add_atom({0.0}, 1.0);
  const auto f = with_point_value(builtin_integrand<1>("x"), {0.0}, 7.0);
  const auto c = integrate(f, unit_interval(), mu, balls1(), 1e-3);
  EXPECT_NEAR(c.value, 7.5, 1e-3);
  EXPECT_NEAR(c.omega_mass, 2.0, 1e-12);
}

TEST(Integrate, MixedSignExpression) {
  // ∫₀¹ (x - 0.3) dx = 0.2, through the sampled gauge
  const auto c = integrate(expression_integrand<1>("x - 0.3"), unit_interval(), lebesgue1(), balls1(), 1e-3);
  EXPECT_EQ(c.gauge, GaugeKind::LebesguePoint);
  EXPECT_NEAR(c.value, 0.2, 1e-3);
  EXPECT_NEAR(c.sum_plus - c.sum_minus, c.sum, 1e-12);
  EXPECT_NEAR(c.sum_plus + c.sum_minus, c.abs_sum, 1e-12);
  EXPECT_NEAR(c.sum_minus, 0.045, 1e-3);
}

TEST(Integrate, WeightedMeasureAndBallRegion) {
  // μ = 3·Lebesgue on [0,2], Ω = B(1, ½) in 1D, f = x: 3 · ∫_{½}^{3/2} x dx = 3
  const auto mu = RadonMeasure<1>::lebesgue(Box<1>{{0.0}, {2.0}}, 3.0);
  const auto c = integrate(builtin_integrand<1>("x"), Region<1>::ball(kLine, {1.0}, 0.5), mu, balls1(), 1e-3);
  EXPECT_NEAR(c.value, 3.0, 1e-3);
}

TEST(Integrate, SeededCoversStayAccurate) {
  struct Case {
    const char* name;
    double exact;
  };
  for (const Case& k : {Case{"x^2", 1.0 / 3.0}, Case{"sin(pi x)", 2.0 / std::numbers::pi}, Case{"step", 2.0}}) {
    const auto f = builtin_integrand<1>(k.name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      IntegrateOptions<1> opt;
      opt.seed = seed;
      const auto c = integrate(f, unit_interval(), lebesgue1(), balls1(), 1e-3, opt);
      EXPECT_LT(std::abs(c.value - k.exact), c.error_bound()) << k.name << " seed " << seed;
    }
  }
}

TEST(Integrate, ProductOnSquare) {
  const auto f = builtin_integrand<2>("x1*x2");
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    IntegrateOptions<2> opt;
    opt.seed = seed;
    const auto c = integrate(f, Region<2>::box(kUnit2, kSup), RadonMeasure<2>::lebesgue(kUnit2),
                             MorseFamily<2>::balls(kSup), 1e-2, opt);
    EXPECT_LT(std::abs(c.value - 0.25), c.error_bound()) << seed;
  }
}

TEST(Integrate, KeptCoverIsDisjointAndFine) {
  const auto f = builtin_integrand<1>("sin(pi x)");
  const auto mu = lebesgue1();
  const auto omega = unit_interval();
  IntegrateOptions<1> opt;
  opt.keep_cover = true;
  opt.seed = 5;
  const auto c = integrate(f, omega, mu, balls1(), 1e-2, opt);
  ASSERT_EQ(c.cover.sequence.size(), c.count);
  EXPECT_TRUE(cover_disjoint(c.cover.sequence));
  const auto g = modulus_gauge(f, 1e-2 / 2, mu, omega);
  EXPECT_TRUE(cover_fine(c.cover.sequence, g));
  EXPECT_NEAR(riemann_sum(f, c.cover).sum, c.sum, 1e-12);
  ASSERT_EQ(c.tag_values.size(), c.count);
}

TEST(Integrate, CeilingDiagnostic) {
  IntegrateOptions<1> opt;
  opt.ceiling = 0.1;
  const auto c = integrate(builtin_integrand<1>("one"), unit_interval(), lebesgue1(), balls1(), 1e-3, opt);
  EXPECT_NE(c.diagnostic.find("possible non-integrability"), std::string::npos);
}

TEST(Integrate, RejectsNonPositiveEps) {
  EXPECT_THROW(integrate(builtin_integrand<1>("x"), unit_interval(), lebesgue1(), balls1(), -1.0), InputError);
}

// ---------------------------------------------------------------------------
// Uniform-bound probe

TEST(UniformBound, ConstantOne) {
  const auto rep = uniform_bound_probe(builtin_integrand<1>("one"), unit_interval(), lebesgue1(), balls1(),
                                       Gauge<1>::constant(0.1), 5);
  ASSERT_EQ(rep.abs_sums.size(), 5u);
  for (double a : rep.abs_sums) EXPECT_NEAR(a, 1.0, 1e-5);
  EXPECT_NEAR(rep.max_abs_sum, 1.0, 1e-5);
  EXPECT_FALSE(rep.witness_cover.sequence.empty());
}

TEST(UniformBound, InverseSquareRootStaysNearTwo) {
  Gauge<1> g{[](const Point<1>& x) { return std::clamp(0.5 * x[0], 1e-300, 1.0); }, GaugeKind::User};
  const auto rep = uniform_bound_probe(builtin_integrand<1>("x^-1/2"), unit_interval(), lebesgue1(), balls1(), g, 4);
  for (double a : rep.abs_sums) {
    EXPECT_GT(a, 1.8);
    EXPECT_LT(a, 2.2);
  }
  EXPECT_LT(rep.growth, 1.1);
}

TEST(UniformBound, RejectsZeroTrials) {
  EXPECT_THROW(uniform_bound_probe(builtin_integrand<1>("one"), unit_interval(), lebesgue1(), balls1(),
                                   Gauge<1>::constant(0.5), 0),
               InputError);
}

// ---------------------------------------------------------------------------
// Principal-value counterexample

namespace {

// Partial sums computed term by term from the definition.
double pv_oracle(long n, double rho) {
  double s = 0.0;
  for (long k = 1; k <= n; ++k) {
    const double c = (k % 2 ? -1.0 : 1.0) / k, r = 0.5 / (double(k) * k);
    const double mass = 2 * r;
    const double value = ((k % 2 ? -1.0 : 1.0) / k) / mass;
    double lo = c - r, hi = c + r;
    if (c > 0) lo = std::max(lo, rho);
    else hi = std::min(hi, -rho);
    s += value * std::max(0.0, hi - lo);
  }
  return s;
}

}  // namespace

TEST(Pv, TwoBalls) {
  const double rho = pv_tail_radius(2);
  const auto row = pv_counterexample(2, rho);
  EXPECT_NEAR(row.sum, pv_oracle(2, rho), 1e-14);
  // -1 + 1/2 less the part of A_2 inside the central ball
  EXPECT_NEAR(row.sum, -0.5, 2.0 * (rho - 0.375) + 1e-14);
}

TEST(Pv, ConvergesToMinusLogTwo) {
  const long n = 10000;
  const auto row = pv_counterexample(n, pv_tail_radius(n));
  EXPECT_NEAR(row.sum, -std::numbers::ln2, 1e-3);
  EXPECT_NEAR(row.sum, pv_oracle(n, pv_tail_radius(n)), 1e-10);
  EXPECT_GE(row.abs_sum, std::abs(row.sum));
}

TEST(Pv, HalvingGrowsAbsSum) {
  const auto rows = pv_halving(10000, 1.0, 10);
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(rows[i].central_radius, 0.5 * rows[i - 1].central_radius);
    EXPECT_GT(rows[i].abs_sum, rows[i - 1].abs_sum);
  }
  EXPECT_GT(rows.back().abs_sum, 10.0 * rows.front().abs_sum);
  for (const auto& r : rows) EXPECT_NEAR(r.sum, pv_oracle(10000, r.central_radius), 1e-9);
}

TEST(Pv, ExplicitCoverMatchesClosedForm) {
  const long n = 40;
  const double rho = 0.05;
  const auto row = pv_counterexample(n, rho);
  const int depth = 6;
  const auto cover = pv_cover(n, rho, depth);
  ASSERT_EQ(cover.sets.size(), cover.masses.size());
  EXPECT_TRUE(cover_disjoint(cover.sets));
  CompensatedSum s, len;
  for (std::size_t i = 0; i < cover.sets.size(); ++i) s.add(cover.values[i] * cover.masses[i]);
  for (std::size_t i = 1; i < cover.sets.size(); ++i) len.add(cover.masses[i]);
  const double uncovered = row.outside_length - len.value();
  EXPECT_NEAR(uncovered, std::pow(0.25, depth) * row.outside_length, 1e-12);
  EXPECT_NEAR(s.value(), row.sum, uncovered * n);
  EXPECT_NEAR(cover.masses[0] + len.value() + uncovered, 1.0 + std::numbers::pi * std::numbers::pi / 6.0, 1e-9);
}

TEST(Pv, ContractChecks) {
  EXPECT_THROW(pv_counterexample(0, 0.5), InputError);
  EXPECT_THROW(pv_counterexample(10, 0.0), InputError);
  EXPECT_THROW(pv_counterexample(10, 1.5), InputError);
  EXPECT_THROW(pv_counterexample(10, 0.01), ContractError);
}

// ---------------------------------------------------------------------------
// Diagnostics

TEST(DiffQuotient, ConstantRatio) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  const auto nu = mu.scaled(2.0);
  const auto q = diff_quotient(nu, mu, {0.5, 0.5}, MorseFamily<2>::balls(Space<2>()), {0.4, 0.2, 0.1, 0.01});
  for (const auto& r : q.ratios) EXPECT_NEAR(r.ratio, 2.0, 1e-6);
  EXPECT_FALSE(q.unbounded);
}

TEST(DiffQuotient, LinearDensityTendsToValue) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  RadonMeasure<2> nu;
  nu.add_density(kUnit2, 0.0, {1.0, 0.0});
  const auto q = diff_quotient(nu, mu, {0.5, 0.5}, MorseFamily<2>::balls(kSup), {0.4, 0.1, 0.01});
  // symmetric boxes around ½: the average of x₁ is exactly ½
  for (const auto& r : q.ratios) EXPECT_NEAR(r.ratio, 0.5, 1e-9);
  const auto off = diff_quotient(nu, mu, {0.3, 0.5}, MorseFamily<2>::balls(kSup), {0.2, 0.02, 0.002});
  EXPECT_NEAR(off.ratios.back().ratio, 0.3, 1e-9);
}

TEST(DiffQuotient, AtomDiverges) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  const auto nu = RadonMeasure<2>::dirac({0.5, 0.5});
  const auto q = diff_quotient(nu, mu, {0.5, 0.5}, MorseFamily<2>::balls(Space<2>()), {0.1, 0.01, 0.001, 0.0001});
  EXPECT_TRUE(q.unbounded);
  const auto far = diff_quotient(nu, mu, {5.0, 5.0}, MorseFamily<2>::balls(Space<2>()), {0.1});
  EXPECT_TRUE(far.ratios[0].flagged);
  EXPECT_TRUE(std::isnan(far.ratios[0].ratio));
  EXPECT_THROW(diff_quotient(nu, mu, {0.5, 0.5}, MorseFamily<2>::balls(Space<2>()), {0.1, 0.2}), InputError);
}

TEST(Defect, ContinuousAtTag) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  const auto s = MorseSet<2>::closed_ball(Space<2>(), {0.4, 0.6}, 1e-3);
  const auto d = approx_cont_defect<2>([](const Point<2>& x) { return x[0] + x[1]; }, mu, s, 0.1);
  EXPECT_DOUBLE_EQ(d.fraction, 0.0);
}

TEST(Defect, HalfPlaneIndicator) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  const auto s = MorseSet<2>::closed_ball(Space<2>(), {0.5, 0.5}, 0.25);
  const auto d = approx_cont_defect<2>([](const Point<2>& x) { return x[0] > 0.5 ? 1.0 : 0.0; }, mu, s, 0.5, 11);
  EXPECT_NEAR(d.fraction, 0.5, std::max(0.01, 4 * d.std_error));
  EXPECT_GT(d.samples, 0u);
}

TEST(Defect, NullLineIgnored) {
  const auto mu = RadonMeasure<2>::lebesgue(kUnit2);
  const auto s = MorseSet<2>::closed_ball(Space<2>(), {0.4, 0.4}, 0.3);
  const auto d = approx_cont_defect<2>([](const Point<2>& x) { return x[0] == 0.5 ? 1.0 : 0.0; }, mu, s, 0.5);
  EXPECT_DOUBLE_EQ(d.fraction, 0.0);
}

TEST(Defect, AtomsCountExactly) {
  auto mu = RadonMeasure<1>::dirac({0.0}, 1.0);
  mu.add_atom({0.1}, 3.0);
  const auto s = MorseSet<1>::closed_ball(kLine, {0.0}, 0.5);
  const auto d = approx_cont_defect<1>([](const Point<1>& x) { return x[0] == 0.0 ? 0.0 : 1.0; }, mu, s, 0.5);
  EXPECT_DOUBLE_EQ(d.fraction, 0.75);
  const auto empty = MorseSet<1>::closed_ball(kLine, {5.0}, 0.5);
  EXPECT_THROW(approx_cont_defect<1>([](const Point<1>&) { return 0.0; }, mu, empty, 0.5), ContractError);
}

// ---------------------------------------------------------------------------
// Integrands and expressions

TEST(Expression, EvaluatesWithPrecedence) {
  const double x[] = {0.25, 2.0, -1.0};
  auto eval = [&](const char* t, int dim = 3) { return Expression::parse(t, dim)(std::span<const double>(x, 3)); };
  EXPECT_DOUBLE_EQ(eval("1 + 2*3"), 7.0);
  EXPECT_DOUBLE_EQ(eval("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(eval("-2^2"), -4.0);
  EXPECT_DOUBLE_EQ(eval("x1 * x2 - x3"), 1.5);
  EXPECT_DOUBLE_EQ(eval("x*y + z"), -0.5);
  EXPECT_NEAR(eval("sin(pi*x)^2"), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(eval("max(x, 0.5) + min(y, 1)"), 1.5);
  EXPECT_DOUBLE_EQ(eval("step(x - 0.5) + abs(z) + sqrt(y*2)"), 3.0);
  EXPECT_NEAR(eval("exp(ln(y)) + atan2(1, 1)*4 - pi"), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(eval("2**3 / 4"), 2.0);
  EXPECT_DOUBLE_EQ(eval("1e-3 * 1000"), 1.0);
}

TEST(Expression, ReportsColumn) {
  try {
    Expression::parse("x + * 2", 1);
    FAIL() << "no error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
  EXPECT_THROW(Expression::parse("sin(x", 1), InputError);
  EXPECT_THROW(Expression::parse("foo(x)", 1), InputError);
  EXPECT_THROW(Expression::parse("x2", 1), InputError);
  EXPECT_THROW(Expression::parse("", 1), InputError);
  EXPECT_NO_THROW(Expression::parse("x2", 2));
}

TEST(Integrand, BuiltinModuliVerify) {
  for (const auto& name : {"one", "x", "x^2", "sin(pi x)", "step"}) {
    const auto f = builtin_integrand<1>(name);
    for (double x : {0.05, 0.3, 0.7, 0.95})
      for (double gamma : {1e-1, 1e-3}) EXPECT_TRUE(verify_modulus(f, kLine, {x}, gamma)) << name << " at " << x;
  }
  const auto p = builtin_integrand<2>("x1*x2");
  EXPECT_TRUE(verify_modulus(p, Space<2>(), {0.7, 0.2}, 1e-2));
  EXPECT_TRUE(verify_modulus(p, Space<2>(NormKind::L1), {0.7, 0.2}, 1e-2));
  const auto r = builtin_integrand<1>("x^-1/2");
  EXPECT_TRUE(verify_modulus(r, kLine, {0.01}, 1e-2));
  EXPECT_THROW(builtin_integrand<1>("x1*x2"), InputError);
  EXPECT_THROW(builtin_integrand<1>("nope"), InputError);
}

TEST(Integrand, WrongModulusFails) {
  auto f = builtin_integrand<1>("x");
  f.modulus = [](const Point<1>&, double g) { return 10.0 * g; };
  EXPECT_FALSE(verify_modulus(f, kLine, {0.5}, 1e-2));
  f.modulus = nullptr;
  EXPECT_FALSE(verify_modulus(f, kLine, {0.5}, 1e-2));
}

TEST(Integrand, PointValueJoinsNullSet) {
  const auto f = with_point_value(builtin_integrand<1>("x"), {0.0}, 7.0);
  EXPECT_DOUBLE_EQ(f({0.0}), 7.0);
  EXPECT_DOUBLE_EQ(f({0.5}), 0.5);
  EXPECT_DOUBLE_EQ(f.null_distance(kLine, {0.25}), 0.25);
  EXPECT_DOUBLE_EQ(f.null_distance(kLine, {0.0}), 0.0);
}

TEST(Parallel, RunsEveryIndexAndRethrows) {
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; }, 4);
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
    if (i == 3) throw ContractError("boom");
  }, 3),
               ContractError);
  EXPECT_GE(thread_cap(), 1u);
}

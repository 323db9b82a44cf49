#pragma once

// Gauges, Riemann sums over δ-fine a.e. covers and integral certificates.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "morsecover/exhaustion.hpp"
#include "morsecover/integrand.hpp"
#include "morsecover/parallel.hpp"

namespace morsecover {

enum class GaugeKind { Modulus, LebesguePoint, User };

inline std::string_view to_string(GaugeKind k) {
  switch (k) {
    case GaugeKind::Modulus: return "modulus";
    case GaugeKind::LebesguePoint: return "lebesgue-point";
    case GaugeKind::User: return "user";
  }
  return "?";
}

template <int D>
struct Gauge {
  std::function<double(const Point<D>&)> eval;
  GaugeKind kind = GaugeKind::User;

  double operator()(const Point<D>& x) const { return eval(x); }

  static Gauge constant(double v) {
    if (!(v > 0.0 && v <= 1.0)) throw InputError("gauge values must lie in (0,1]");
    return {[v](const Point<D>&) { return v; }, GaugeKind::User};
  }
};

// Largest r in {1, 1/2, 1/4, ...} with |f(y) - f(x)| < γ/2 at probe points of
// B(x, r): axis points at r, r/2, r/4 and the diagonals.
template <int D>
double sampled_modulus(const Integrand<D>& f, const Space<D>& space, const std::type_identity_t<Point<D>>& x, double gamma) {
  const double fx = f(x);
  if (!std::isfinite(fx)) return 0.0;
  auto ok_at = [&](double r) {
    auto check = [&](const Point<D>& y) {
      const double v = f(y);
      return std::isfinite(v) && std::abs(v - fx) < 0.5 * gamma;
    };
    for (double t : {1.0 - 1e-9, 0.5, 0.25})
      for (int i = 0; i < D; ++i)
        for (double s : {-1.0, 1.0}) {
          Point<D> y = x;
          y[i] += s * t * r * space.coord_extent(i);
          if (!check(y)) return false;
        }
    for (unsigned mask = 0; mask < (1u << D); ++mask) {
      Point<D> v{};
      for (int i = 0; i < D; ++i) v[i] = (mask >> i) & 1u ? 1.0 : -1.0;
      const double n = space.norm(v);
      if (!check(x + (r * (1.0 - 1e-9) / n) * v)) return false;
    }
    return true;
  };
  double r = 1.0;
  for (int it = 0; it < 1100; ++it, r *= 0.5)
    if (ok_at(r)) return r;
  return 0.0;
}

namespace detail {

// Sampled sup of |f(y) - ref| over finite values in a box grid, optionally
// restricted by `keep`.
template <int D, class Keep>
double sampled_oscillation(const Integrand<D>& f, const Box<D>& b, double ref, Keep&& keep, int per_axis = 0) {
  if (per_axis <= 0) per_axis = D == 1 ? 257 : D == 2 ? 33 : D == 3 ? 11 : 5;
  double osc = 0.0;
  std::array<int, D> idx{};
  for (;;) {
    Point<D> y;
    for (int i = 0; i < D; ++i) y[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * idx[i] / (per_axis - 1);
    if (keep(y)) {
      const double v = f(y);
      if (std::isfinite(v)) osc = std::max(osc, std::abs(v - ref));
    }
    int i = D - 1;
    while (i >= 0 && idx[i] + 1 == per_axis) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return osc;
}

}  // namespace detail

// Continuity-modulus gauge: δ(x) = ρ(x, γ(x)) with γ = ε/(1 + μ(Ω)) for
// bounded Ω and γ = ε 2^(-k(x)) / (1 + μ(B(0, k(x)+1))) otherwise, k(x) the
// smallest integer above ‖x‖. When atoms lie in Ω or f declares a null set,
// half of ε goes to the modulus and a quarter each to radii at atom tags and
// at null-set tags. Values are clamped to (0,1].
template <int D>
Gauge<D> modulus_gauge(const Integrand<D>& f, double eps, const RadonMeasure<D>& mu, const Region<D>& omega) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  const Space<D> space = omega.space();
  const double mass = measure_of(mu, omega).value;
  const bool unbounded = !omega.bounding_box().has_value();
  RadonMeasure<D> dens;
  for (const auto& p : mu.pieces()) dens.add_density(p.box, p.value, p.slope);

  std::vector<Atom<D>> atoms;
  for (const auto& a : mu.atoms())
    if (omega.contains(a.at)) atoms.push_back(a);
  const bool split = !atoms.empty() || !f.null_set.empty();
  const double mod_eps = split ? 0.5 * eps : eps;

  // μ(B(0, k+1)) for k = 1..K; constant beyond the support.
  auto ball_masses = std::make_shared<std::vector<double>>();
  if (unbounded) {
    double reach = 0.0;
    if (const auto sb = mu.support_box())
      for (unsigned m = 0; m < (1u << D); ++m) reach = std::max(reach, space.norm(sb->corner(m)));
    for (const auto& a : mu.atoms()) reach = std::max(reach, space.norm(a.at));
    const int K = static_cast<int>(std::ceil(reach)) + 1;
    for (int k = 1; k <= K; ++k)
      ball_masses->push_back(measure_of(mu, MorseSet<D>::closed_ball(space, zero_point<D>(), k + 1.0)).value);
  }
  const double total = mu.total_mass();
  auto gamma_at = [=](const Point<D>& x) {
    if (!unbounded) return mod_eps / (1.0 + mass);
    const double k = std::floor(space.norm(x)) + 1.0;
    const auto i = static_cast<std::size_t>(k) - 1;
    const double mb = i < ball_masses->size() ? (*ball_masses)[i] : total;
    return mod_eps * std::ldexp(1.0, -static_cast<int>(std::min(k, 1000.0))) / (1.0 + mb);
  };

  // Radius at null-set tags: μ(Z_r) · 2 sup|f| ≤ ε/4.
  double null_radius = 1.0;
  if (!f.null_set.empty()) {
    const auto support = dens.support_box();
    for (int it = 0; it < 1100; ++it, null_radius *= 0.5) {
      if (!support) break;
      Region<D> zr(space);
      double osc = 0.0;
      bool any = false;
      for (const auto& z : f.null_set) {
        Box<D> b = z;
        for (int i = 0; i < D; ++i) {
          b.lo[i] -= null_radius * space.coord_extent(i);
          b.hi[i] += null_radius * space.coord_extent(i);
        }
        b = b.intersect(*support);
        if (b.empty()) continue;
        any = true;
        zr.add_box(b);
        osc = std::max(osc, 2.0 * detail::sampled_oscillation(f, b, 0.0, [](const Point<D>&) { return true; }));
      }
      if (!any) break;
      const Measured m = measure_of(dens, zr);
      if ((m.value + m.err) * osc <= 0.25 * eps) break;
    }
  }

  // Radius at each atom: μ_density(B(a, r)) · sup|f - f(a)| ≤ ε / (4 · #atoms).
  std::vector<double> atom_radius;
  for (const auto& a : atoms) {
    const double fa = f(a.at);
    if (!std::isfinite(fa)) throw ContractError("integrand is not finite at atom " + MorseFamily<D>::describe_point(a.at));
    double r = 1.0;
    for (int it = 0; it < 1100; ++it, r *= 0.5) {
      const auto ball = MorseSet<D>::closed_ball(space, a.at, r);
      const double m = measure_of(dens, ball).value;
      if (m == 0.0) break;
      const double osc = detail::sampled_oscillation(f, ball.bounding_box(), fa, [&](const Point<D>& y) {
        return y != a.at && space.dist(y, a.at) <= r;
      });
      if (m * osc <= 0.25 * eps / static_cast<double>(atoms.size())) break;
    }
    atom_radius.push_back(r);
  }

  Gauge<D> g;
  g.kind = f.modulus ? GaugeKind::Modulus : GaugeKind::LebesguePoint;
  g.eval = [=](const Point<D>& x) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (x == atoms[i].at) return std::min(1.0, atom_radius[i]);
    const double dz = f.null_distance(space, x);
    if (dz == 0.0) return std::min(1.0, null_radius);
    const double gamma = gamma_at(x);
    const double rho = f.modulus ? f.modulus(x, gamma) : sampled_modulus(f, space, x, gamma);
    const double m = std::min(rho, dz);
    const double d = m < 1.0 ? m * (1.0 - 1e-12) : 1.0;
    if (!(d > 0.0))
      throw ContractError("no continuity modulus for " + f.name + " at " + MorseFamily<D>::describe_point(x));
    return d;
  };
  return g;
}

// ---------------------------------------------------------------------------
// Riemann sums

struct RiemannSum {
  double sum = 0.0;
  double abs_sum = 0.0;
};

// Σ f(x_n) m_n and Σ |f(x_n)| m_n in sequence order.
template <int D>
RiemannSum riemann_sum(const Integrand<D>& f, const std::vector<MorseSet<D>>& sets, const std::vector<double>& masses) {
  if (sets.size() != masses.size()) throw InputError("sets and masses differ in length");
  CompensatedSum s, a;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double v = f(sets[i].tag());
    if (masses[i] == 0.0) continue;
    s.add(v * masses[i]);
    a.add(std::abs(v) * masses[i]);
  }
  return {s.value(), a.value()};
}

// With the masses μ(S_n) recomputed under `mu`.
template <int D>
RiemannSum riemann_sum(const Integrand<D>& f, const AeCover<D>& cover, const RadonMeasure<D>& mu) {
  std::vector<double> m;
  m.reserve(cover.sequence.size());
  for (const auto& s : cover.sequence) m.push_back(measure_of(mu, s).value);
  return riemann_sum(f, cover.sequence, m);
}

// With the stored masses μ(S_n ∩ Ω).
template <int D>
RiemannSum riemann_sum(const Integrand<D>& f, const AeCover<D>& cover) {
  return riemann_sum(f, cover.sequence, cover.masses);
}

// ---------------------------------------------------------------------------
// Certificates

template <int D>
struct IntegrateOptions {
  std::uint64_t seed = 0;
  double tol = 0.0;  // residual tolerance; 0 selects 1e-6 μ(Ω)
  double ceiling = std::numeric_limits<double>::infinity();
  bool keep_cover = false;
  std::size_t keep_limit = std::numeric_limits<std::size_t>::max();  // stored sets before the listing is dropped
  std::optional<Gauge<D>> gauge;
  CoverOptions<D> cover;
};

template <int D>
struct IntegralCertificate {
  std::string integrand;
  std::string family;
  GaugeKind gauge = GaugeKind::User;
  std::uint64_t seed = 0;
  double value = 0.0;
  double eps = 0.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  double sum_plus = 0.0;
  double sum_minus = 0.0;
  double sup_tag_abs = 0.0;  // max |f(x_n)|
  int rounds = 0;
  std::size_t count = 0;
  double omega_mass = 0.0;
  double covered = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  double excess = 0.0;
  double excess_bound = 0.0;
  bool converged = false;
  std::string diagnostic;
  AeCover<D> cover;             // sequence and masses only with keep_cover
  std::vector<double> tag_values;
  bool listing_complete = false;  // cover.sequence holds every set

  // |value - ∫ f dμ| stays below this when f is bounded by sup_tag_abs on
  // the uncovered remainder.
  double error_bound() const { return eps + residual * sup_tag_abs; }
};

// Integral over Ω with a claimed error bound. f⁺ and f⁻ get ε/2 each unless
// f has a sign, in which case the whole ε goes to the one nonzero part.
template <int D>
IntegralCertificate<D> integrate(const Integrand<D>& f, const Region<D>& omega, const RadonMeasure<D>& mu,
                                 const MorseFamily<D>& family, double eps, const IntegrateOptions<D>& opt = {}) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  const double part_eps = f.sign == Sign::Mixed ? 0.5 * eps : eps;
  const Gauge<D> gauge = opt.gauge ? *opt.gauge : modulus_gauge(f, part_eps, mu, omega);

  CoverOptions<D> copt = opt.cover;
  copt.seed = opt.seed;
  auto user_ok = copt.tag_ok;
  copt.tag_ok = [&f, user_ok](const Point<D>& x) { return std::isfinite(f(x)) && (!user_ok || user_ok(x)); };

  IntegralCertificate<D> c;
  c.integrand = f.name;
  c.family = family.describe();
  c.gauge = gauge.kind;
  c.seed = opt.seed;
  c.eps = eps;
  CompensatedSum sum, plus, minus, abs_sum;
  std::vector<MorseSet<D>> seq;
  std::vector<double> masses;
  bool keep = opt.keep_cover;
  auto sink = [&](const MorseSet<D>& s, double m) {
    const double v = f(s.tag());
    sum.add(v * m);
    abs_sum.add(std::abs(v) * m);
    (v >= 0.0 ? plus : minus).add(std::abs(v) * m);
    c.sup_tag_abs = std::max(c.sup_tag_abs, std::abs(v));
    if (keep) {
      if (seq.size() == opt.keep_limit) {
        keep = false;
        std::vector<MorseSet<D>>().swap(seq);
        std::vector<double>().swap(masses);
        std::vector<double>().swap(c.tag_values);
        return;
      }
      seq.push_back(s);
      masses.push_back(m);
      c.tag_values.push_back(v);
    }
  };
  c.cover = ae_cover_stream(mu, omega, family, gauge, eps, opt.tol, sink, copt);
  c.cover.sequence = std::move(seq);
  c.cover.masses = std::move(masses);
  c.listing_complete = keep;

  c.sum = sum.value();
  c.value = c.sum;
  c.abs_sum = abs_sum.value();
  c.sum_plus = plus.value();
  c.sum_minus = minus.value();
  c.rounds = c.cover.rounds;
  c.count = c.cover.count;
  c.omega_mass = c.cover.omega_mass;
  c.covered = c.cover.covered;
  c.residual = c.cover.residual;
  c.tol = c.cover.tol;
  c.excess = c.cover.excess;
  c.excess_bound = c.cover.excess_bound;
  c.converged = c.cover.converged;
  if (c.abs_sum > opt.ceiling)
    c.diagnostic = "possible non-integrability: sum of |f(x_n)| mu(S_n) = " + fmt12(c.abs_sum) +
                   " exceeds the ceiling " + fmt12(opt.ceiling);
  else if (!c.converged)
    c.diagnostic = "cover stopped with residual " + fmt12(c.residual) + " above tol " + fmt12(c.tol);
  return c;
}

// ---------------------------------------------------------------------------
// Uniform-bound probe

template <int D>
struct ProbeReport {
  std::vector<std::uint64_t> seeds;
  std::vector<double> sums;
  std::vector<double> abs_sums;
  std::vector<std::size_t> counts;
  double max_abs_sum = 0.0;
  std::size_t witness = 0;  // trial attaining the max
  AeCover<D> witness_cover; // sequence kept when small
  double growth = 1.0;      // max / min abs_sum
  bool increasing = false;  // abs_sum strictly increases over the trials
};

// Σ|f(x_n)| μ(S_n) over `trials` seeded δ-fine a.e. covers.
template <int D>
ProbeReport<D> uniform_bound_probe(const Integrand<D>& f, const Region<D>& omega, const RadonMeasure<D>& mu,
                                   const MorseFamily<D>& family, const Gauge<D>& delta, int trials, double eps = 1e-3,
                                   double tol = 0.0, const CoverOptions<D>& base = {},
                                   std::size_t witness_limit = 100'000) {
  if (trials < 1) throw InputError("trials must be >= 1");
  ProbeReport<D> r;
  const auto n = static_cast<std::size_t>(trials);
  r.seeds.resize(n);
  r.sums.resize(n);
  r.abs_sums.resize(n);
  r.counts.resize(n);
  parallel_for(n, [&](std::size_t t) {
    CoverOptions<D> opt = base;
    opt.seed = base.seed + t;
    opt.tag_ok = [&f](const Point<D>& x) { return std::isfinite(f(x)); };
    CompensatedSum s, a;
    const auto cover = ae_cover_stream(
        mu, omega, family, delta, eps, tol,
        [&](const MorseSet<D>& set, double m) {
          const double v = f(set.tag());
          s.add(v * m);
          a.add(std::abs(v) * m);
        },
        opt);
    r.seeds[t] = opt.seed;
    r.sums[t] = s.value();
    r.abs_sums[t] = a.value();
    r.counts[t] = cover.count;
  });
  r.witness = static_cast<std::size_t>(std::max_element(r.abs_sums.begin(), r.abs_sums.end()) - r.abs_sums.begin());
  r.max_abs_sum = r.abs_sums[r.witness];
  const double lo = *std::min_element(r.abs_sums.begin(), r.abs_sums.end());
  r.growth = lo > 0.0 ? r.max_abs_sum / lo : std::numeric_limits<double>::infinity();
  r.increasing = n >= 2;
  for (std::size_t t = 1; t < n; ++t)
    if (!(r.abs_sums[t] > r.abs_sums[t - 1])) r.increasing = false;
  if (r.counts[r.witness] <= witness_limit) {
    CoverOptions<D> opt = base;
    opt.seed = r.seeds[r.witness];
    opt.tag_ok = [&f](const Point<D>& x) { return std::isfinite(f(x)); };
    r.witness_cover = ae_cover(mu, omega, family, delta, eps, tol, opt);
  }
  return r;
}

}  // namespace morsecover

// morsecover: pack / cover / integrate / pv-demo / validate.
// Exit status: 0 success, 1 contract failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "config.hpp"

using namespace morsecover;
using namespace morsecover::cli;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::optional<double> tol;
  std::string out;
  std::string svg;
  std::optional<int> dim;
  std::string norm;
  std::optional<double> lambda;
};

struct Run {
  Common common;
  ConfigFile cfg;
  std::ostringstream text;  // stdout report
  Json report;              // --out file
  bool failed = false;      // contract failure detected

  std::uint64_t seed() const {
    if (common.seed) return *common.seed;
    return static_cast<std::uint64_t>(cfg.integer(cfg.root(), "seed", 0));
  }
  double eps(double def) const { return common.eps ? *common.eps : cfg.number(cfg.root(), "eps", def); }
  double tol(double def) const { return common.tol ? *common.tol : cfg.number(cfg.root(), "tol", def); }
  int dim(int def) const {
    const long d = common.dim ? *common.dim : cfg.integer(cfg.root(), "dim", def);
    if (d < 1 || d > 3) throw cfg.error(cfg.at(cfg.root(), "dim"), "dimension must be 1, 2 or 3");
    return static_cast<int>(d);
  }
  std::string out_path() const { return !common.out.empty() ? common.out : cfg.text(cfg.root(), "out", ""); }
  std::string svg_path() const { return !common.svg.empty() ? common.svg : cfg.text(cfg.root(), "svg", ""); }
};

template <class F>
void with_dim(int d, F&& f) {
  switch (d) {
    case 1: f.template operator()<1>(); break;
    case 2: f.template operator()<2>(); break;
    case 3: f.template operator()<3>(); break;
    default: throw InputError("dimension must be 1, 2 or 3");
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << body;
}

template <int D>
std::string fmt_point(const Point<D>& p) {
  std::string s;
  for (int i = 0; i < D; ++i) s += (i ? " " : "") + fmt12(p[i]);
  return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// pack

struct PackArgs {
  std::optional<double> container, mindist;
  std::optional<std::uint64_t> budget;
  bool anchored = false, surface = false;
};

void run_pack(Run& run, const PackArgs& a) {
  const auto& r = run.cfg.root();
  const double container = a.container ? *a.container : run.cfg.number(r, "container", 2.0);
  const double mindist = a.mindist ? *a.mindist : run.cfg.number(r, "mindist", 1.0);
  const bool anchored = a.anchored || run.cfg.flag(r, "anchored", false);
  const bool surface = a.surface || run.cfg.flag(r, "surface", false);
  const auto budget = a.budget ? *a.budget : static_cast<std::uint64_t>(run.cfg.integer(r, "budget", 20000));
  with_dim(run.dim(1), [&]<int D>() {
    const Space<D> space = make_space<D>(run.cfg, run.common.norm);
    const auto res = packing_count(space, container, mindist, anchored, surface, budget, run.seed());
    const bool ok = verify_packing(space, res.witness);
    const double lambda = run.common.lambda ? *run.common.lambda : run.cfg.number(r, "lambda", 1.0);
    const auto kb = kappa_bound(space, 1.0, KappaMode::Balls);
    const auto km = kappa_bound(space, lambda, KappaMode::Morse);
    auto& t = run.text;
    t << "packing d=" << D << " norm=" << to_string(space.kind()) << " container=" << fmt12(container)
      << " mindist=" << fmt12(mindist) << " anchored=" << yes(anchored) << " surface=" << yes(surface) << '\n';
    t << "lower " << res.lower << "\nupper " << res.upper << "\nwitness verified " << yes(ok) << '\n';
    t << "kappa balls " << kb << "\nkappa morse(lambda=" << fmt12(lambda) << ") " << km << '\n';
    t << "witness\n";
    for (const auto& p : res.witness.points) t << "  " << fmt_point<D>(p) << '\n';
    run.report = packing_json(res, ok);
    run.report["dim"] = D;
    run.report["norm"] = std::string(to_string(space.kind()));
    run.report["kappa_balls"] = kb;
    run.report["kappa_morse"] = km;
    run.report["lambda"] = num(lambda);
    if (!ok) run.failed = true;
  });
}

// ---------------------------------------------------------------------------
// cover

template <int D>
std::vector<MorseSet<D>> random_balls(const Run& run, const Space<D>& space, const YAML::Node& n, double lambda) {
  const auto& c = run.cfg;
  const long count = c.integer(n, "count", 200);
  if (count < 1) throw c.error(n, "count must be positive");
  Point<D> lo{}, hi{};
  hi.fill(1.0);
  if (c.has(n, "lo")) lo = c.point_at<D>(n, "lo");
  if (c.has(n, "hi")) hi = c.point_at<D>(n, "hi");
  double rmin = 0.02, rmax = 0.2;
  if (c.has(n, "radius")) {
    const YAML::Node rr = n["radius"];
    if (!rr.IsSequence() || rr.size() != 2) throw c.error(rr, "radius must be [min, max]");
    rmin = c.number(rr[0], "radius");
    rmax = c.number(rr[1], "radius");
    if (!(0.0 < rmin && rmin <= rmax)) throw c.error(rr, "radius needs 0 < min <= max");
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(c.integer(n, "seed", static_cast<long>(run.seed()))));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MorseSet<D>> out;
  for (long k = 0; k < count; ++k) {
    Point<D> x;
    for (int i = 0; i < D; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
    out.push_back(MorseSet<D>::closed_ball(space, x, rmin + (rmax - rmin) * u(rng), lambda));
  }
  return out;
}

template <int D>
void cover_family(Run& run, const Space<D>& space) {
  const auto& c = run.cfg;
  const auto& r = c.root();
  const double tau = c.number(r, "tau", kDefaultTau);
  check_tau(tau);
  std::vector<MorseSet<D>> sets;
  if (c.has(r, "sets")) sets = read_sets<D>(c, r["sets"], space);
  if (c.has(r, "random_sets")) {
    const double lambda = run.common.lambda ? *run.common.lambda : c.number(r["random_sets"], "lambda", 1.0);
    auto more = random_balls<D>(run, space, r["random_sets"], lambda);
    sets.insert(sets.end(), more.begin(), more.end());
  }
  if (sets.empty()) throw c.error(r, "cover needs sets, random_sets or a region");
  const double lambda = sets.front().lambda();
  TaggedFamily<D> fam(space, lambda);
  for (const auto& s : sets) fam.add(s);
  const auto selected = greedy_select(fam, tau);
  const Partition part = partition_disjoint(fam, selected);
  const bool covered = tags_covered(fam.sets(), selected);
  const bool disjoint = families_disjoint(fam.sets(), part);
  const bool within = part.families.size() <= part.kappa;
  auto& t = run.text;
  t << "cover d=" << D << " norm=" << to_string(space.kind()) << " sets=" << sets.size() << " lambda=" << fmt12(lambda)
    << " tau=" << fmt12(tau) << '\n';
  t << "selected " << selected.size() << "\nfamilies " << part.families.size() << "\nkappa " << part.kappa << '\n';
  t << "tags covered " << yes(covered) << "\nfamilies disjoint " << yes(disjoint) << "\nwithin kappa " << yes(within)
    << '\n';
  for (std::size_t f = 0; f < part.families.size(); ++f) {
    t << "family " << f + 1 << ':';
    for (std::size_t i : part.families[f]) t << ' ' << i;
    t << '\n';
  }
  run.report = partition_json(part);
  run.report["dim"] = D;
  run.report["tau"] = num(tau);
  run.report["selected"] = selected;
  run.report["tags_covered"] = covered;
  run.report["families_disjoint"] = disjoint;
  run.report["within_kappa"] = within;
  Json js = Json::array();
  for (const auto& s : sets) js.push_back(shape_json(s));
  run.report["sets"] = std::move(js);
  if (!covered || !disjoint || !within) run.failed = true;

  if (const auto path = run.svg_path(); !path.empty()) {
    if constexpr (D == 2) {
      std::vector<MorseSet<2>> chosen;
      std::vector<std::size_t> colour;
      for (std::size_t f = 0; f < part.families.size(); ++f)
        for (std::size_t i : part.families[f]) {
          chosen.push_back(sets[i]);
          colour.push_back(f);
        }
      write_file(path, render_svg(chosen, colour, std::max<std::size_t>(1, part.families.size())));
    } else {
      throw InputError("SVG output needs dimension 2");
    }
  }
}

template <int D>
Gauge<D> read_constant_gauge(const Run& run) {
  const auto& c = run.cfg;
  const YAML::Node g = c.at(c.root(), "gauge");
  const std::string kind = c.text(g, "kind", "constant");
  if (kind != "constant") throw c.error(g, "cover accepts only a constant gauge");
  try {
    return Gauge<D>::constant(c.number(g, "value", 1.0));
  } catch (const InputError& e) {
    throw c.error(g, e.what());
  }
}

template <int D>
void cover_region(Run& run, const Space<D>& space) {
  const auto& c = run.cfg;
  const auto omega = *read_region<D>(c, space);
  const auto mu_opt = read_measure<D>(c);
  RadonMeasure<D> mu;
  if (mu_opt) {
    mu = *mu_opt;
  } else {
    const auto bb = omega.bounding_box();
    if (!bb) throw c.error(c.root(), "an unbounded region needs an explicit measure");
    mu = RadonMeasure<D>::lebesgue(*bb);
  }
  const auto family = read_family<D>(c, space, run.common.lambda);
  const auto gauge = read_constant_gauge<D>(run);
  CoverOptions<D> opt;
  opt.seed = run.seed();
  opt.tau = c.number(c.root(), "tau", kDefaultTau);
  opt.max_rounds = static_cast<int>(c.integer(c.root(), "max_rounds", opt.max_rounds));
  const double eps = run.eps(1e-3);
  const double tol = run.tol(0.0);
  const auto cover = ae_cover(mu, omega, family, gauge, eps, tol, opt);
  const bool disjoint = cover_disjoint(cover.sequence);
  const bool fine = cover_fine(cover.sequence, gauge);
  auto& t = run.text;
  t << "ae-cover d=" << D << " norm=" << to_string(space.kind()) << " family=" << family.describe() << '\n';
  t << "sets " << cover.count << "\nrounds " << cover.rounds << "\nkappa " << cover.kappa << "\nomega mass "
    << fmt12(cover.omega_mass) << "\nresidual " << fmt12(cover.residual) << "\ntol " << fmt12(cover.tol)
    << "\nexcess " << fmt12(cover.excess) << "\nconverged " << yes(cover.converged) << "\ndisjoint " << yes(disjoint)
    << "\nfine " << yes(fine) << '\n';
  for (std::size_t k = 1; k < cover.residual_history.size(); ++k)
    t << "round " << k << " sets " << cover.round_counts[k - 1] << " residual " << fmt12(cover.residual_history[k])
      << " bound " << fmt12(std::pow(cover.decay_factor(), static_cast<double>(k)) * cover.omega_mass) << '\n';
  run.report = cover_json(cover, true);
  run.report["dim"] = D;
  run.report["family"] = family.describe();
  run.report["disjoint"] = disjoint;
  run.report["fine"] = fine;
  if (!cover.converged || !disjoint || !fine) run.failed = true;
  if (const auto path = run.svg_path(); !path.empty()) {
    if constexpr (D == 2) {
      std::vector<std::size_t> colour;
      for (std::size_t k = 0; k < cover.round_counts.size(); ++k) colour.insert(colour.end(), cover.round_counts[k], k);
      colour.resize(cover.sequence.size(), 0);
      write_file(path, render_svg(cover.sequence, colour, std::max<std::size_t>(1, cover.round_counts.size())));
    } else {
      throw InputError("SVG output needs dimension 2");
    }
  }
}

void run_cover(Run& run) {
  with_dim(run.dim(2), [&]<int D>() {
    const Space<D> space = make_space<D>(run.cfg, run.common.norm);
    if (run.cfg.has(run.cfg.root(), "region"))
      cover_region<D>(run, space);
    else
      cover_family<D>(run, space);
  });
}

// ---------------------------------------------------------------------------
// integrate

struct IntegrateArgs {
  std::string integrand, expr;
  std::optional<double> lo, hi;
  std::optional<std::size_t> listing;
};

template <int D>
Integrand<D> read_integrand(const Run& run, const IntegrateArgs& a) {
  const auto& c = run.cfg;
  const auto& r = c.root();
  Integrand<D> f;
  try {
    if (!a.expr.empty()) f = expression_integrand<D>(a.expr);
    else if (!a.integrand.empty()) f = builtin_integrand<D>(a.integrand);
    else if (c.has(r, "expression")) f = expression_integrand<D>(c.text(r, "expression", ""));
    else f = builtin_integrand<D>(c.text(r, "integrand", "x^2"));
  } catch (const LocatedError&) {
    throw;
  } catch (const InputError& e) {
    const char* key = c.has(r, "expression") ? "expression" : "integrand";
    if (a.expr.empty() && a.integrand.empty()) throw c.error(c.at(r, key), e.what());
    throw;
  }
  const std::string sign = c.text(r, "sign", "");
  if (sign == "nonnegative") f.sign = Sign::Nonnegative;
  else if (sign == "nonpositive") f.sign = Sign::Nonpositive;
  else if (sign == "mixed") f.sign = Sign::Mixed;
  else if (!sign.empty()) throw c.error(r["sign"], "sign must be nonnegative, nonpositive or mixed");
  if (c.has(r, "null_set"))
    for (const auto& b : r["null_set"]) f.null_set.push_back(read_box<D>(c, b));
  if (c.has(r, "point_values"))
    for (const auto& p : r["point_values"]) f = with_point_value(f, c.point_at<D>(p, "at"), c.number(p, "value", 0.0));
  return f;
}

void run_integrate(Run& run, const IntegrateArgs& a) {
  with_dim(run.dim(1), [&]<int D>() {
    const auto& c = run.cfg;
    const Space<D> space = make_space<D>(c, run.common.norm);
    Region<D> omega(space);
    if (const auto reg = read_region<D>(c, space)) {
      omega = *reg;
    } else {
      Box<D> b;
      b.lo.fill(a.lo ? *a.lo : 0.0);
      b.hi.fill(a.hi ? *a.hi : 1.0);
      if (!(b.lo[0] < b.hi[0])) throw InputError("--lo must be below --hi");
      omega = Region<D>::box(b, space);
    }
    RadonMeasure<D> mu;
    if (const auto m = read_measure<D>(c)) {
      mu = *m;
    } else {
      const auto bb = omega.bounding_box();
      if (!bb) throw c.error(c.root(), "an unbounded region needs an explicit measure");
      mu = RadonMeasure<D>::lebesgue(*bb);
    }
    const auto f = read_integrand<D>(run, a);
    const auto family = read_family<D>(c, space, run.common.lambda);
    IntegrateOptions<D> opt;
    opt.seed = run.seed();
    opt.tol = run.tol(0.0);
    opt.ceiling = c.number(c.root(), "ceiling", std::numeric_limits<double>::infinity());
    opt.keep_cover = true;
    opt.keep_limit = a.listing ? *a.listing : static_cast<std::size_t>(c.integer(c.root(), "listing_limit", 100000));
    if (c.has(c.root(), "gauge")) {
      const YAML::Node g = c.root()["gauge"];
      const std::string kind = c.text(g, "kind", "modulus");
      if (kind == "constant") opt.gauge = read_constant_gauge<D>(run);
      else if (kind != "modulus") throw c.error(g, "gauge kind must be modulus or constant");
    }
    const double eps = run.eps(1e-3);
    const auto cert = integrate(f, omega, mu, family, eps, opt);
    auto& t = run.text;
    t << "integrand " << cert.integrand << "\nfamily " << cert.family << "\ngauge " << to_string(cert.gauge)
      << "\nseed " << cert.seed << "\nvalue " << fmt12(cert.value) << "\neps " << fmt12(cert.eps) << "\nerror bound "
      << fmt12(cert.error_bound()) << "\nabs sum " << fmt12(cert.abs_sum) << "\nsets " << cert.count << "\nrounds "
      << cert.rounds << "\nresidual " << fmt12(cert.residual) << "\ntol " << fmt12(cert.tol) << "\nconverged "
      << yes(cert.converged) << '\n';
    if (!cert.diagnostic.empty()) t << "diagnostic " << cert.diagnostic << '\n';
    run.report = certificate_json(cert);
    run.report["dim"] = D;
    run.report["norm"] = std::string(to_string(space.kind()));
    if (!cert.converged || !cert.diagnostic.empty()) run.failed = true;
    if (const auto path = run.svg_path(); !path.empty()) {
      if constexpr (D == 2) {
        if (!cert.listing_complete) throw ContractError("cover too large to draw; raise listing_limit");
        write_file(path, render_svg(cert.cover.sequence, std::vector<std::size_t>(cert.count, 0), 1));
      } else {
        throw InputError("SVG output needs dimension 2");
      }
    }
  });
}

// ---------------------------------------------------------------------------
// pv-demo

struct PvArgs {
  std::optional<long> n;
  std::optional<double> radius, start;
  std::optional<int> halvings;
};

void run_pv(Run& run, const PvArgs& a) {
  const auto& c = run.cfg;
  const auto& r = c.root();
  const long n = a.n ? *a.n : c.integer(r, "n_balls", 10000);
  if (n < 1) throw InputError("--n must be >= 1");
  const double radius = a.radius ? *a.radius : c.number(r, "central_radius", pv_tail_radius(n));
  const double start = a.start ? *a.start : c.number(r, "start", 1.0);
  const int halvings = a.halvings ? *a.halvings : static_cast<int>(c.integer(r, "halvings", 10));
  if (halvings < 0) throw InputError("--halvings must be >= 0");
  const auto row = pv_counterexample(n, radius);
  const auto rows = pv_halving(n, start, halvings);
  auto& t = run.text;
  t << "n_balls central_radius sum abs_sum\n";
  t << row.n_balls << ' ' << fmt12(row.central_radius) << ' ' << fmt12(row.sum) << ' ' << fmt12(row.abs_sum) << '\n';
  t << "-ln 2 = " << fmt12(-std::log(2.0)) << "\nhalving from " << fmt12(start) << '\n';
  bool increasing = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    t << rows[k].n_balls << ' ' << fmt12(rows[k].central_radius) << ' ' << fmt12(rows[k].sum) << ' '
      << fmt12(rows[k].abs_sum) << '\n';
    if (k > 0 && !(rows[k].abs_sum > rows[k - 1].abs_sum)) increasing = false;
  }
  const double growth = rows.back().abs_sum / rows.front().abs_sum;
  t << "abs_sum strictly increasing " << yes(increasing) << "\ngrowth " << fmt12(growth) << '\n';
  run.report["row"] = pv_rows_json({row})[0];
  run.report["minus_ln2"] = num(-std::log(2.0));
  run.report["halving"] = pv_rows_json(rows);
  run.report["increasing"] = increasing;
  run.report["growth"] = num(growth);
}

// ---------------------------------------------------------------------------
// validate

void run_validate(Run& run, std::size_t samples) {
  const auto& c = run.cfg;
  const auto& r = c.root();
  if (!c.has(r, "sets") && !c.has(r, "satellite") && !c.has(r, "search"))
    throw c.error(r, "validate needs sets, satellite or search");
  with_dim(run.dim(2), [&]<int D>() {
    const Space<D> space = make_space<D>(c, run.common.norm);
    auto& t = run.text;
    if (c.has(r, "sets")) {
      const auto sets = read_sets<D>(c, r["sets"], space);
      Json verdicts = Json::array();
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto rep = validate_morse(sets[i], samples);
        t << "set " << i << ' ' << (rep.valid ? "valid" : "INVALID") << " min_lambda " << fmt12(rep.min_lambda)
          << (rep.sampled ? " (certified up to sampling)" : "");
        if (!rep.valid) t << ": " << rep.violation;
        t << '\n';
        verdicts.push_back(morse_report_json(rep));
        if (!rep.valid) run.failed = true;
      }
      run.report["sets"] = std::move(verdicts);
    }
    if (c.has(r, "satellite")) {
      const YAML::Node s = r["satellite"];
      SatelliteConfig<D> cfg;
      cfg.tau = c.number(s, "tau", kDefaultTau);
      if (!c.has(s, "sets")) throw c.error(s, "satellite needs sets");
      cfg.ordered = read_sets<D>(c, s["sets"], space);
      const auto v = is_satellite_config(cfg);
      t << "satellite " << (v.ok ? "valid" : "INVALID");
      if (!v.ok) t << ": " << v.violation;
      t << '\n';
      run.report["satellite"] = {{"valid", v.ok}, {"violation", v.violation}};
      if (!v.ok) run.failed = true;
    }
    if (c.has(r, "search")) {
      const YAML::Node s = r["search"];
      const double lambda = c.number(s, "lambda", 1.0);
      const double tau = c.number(s, "tau", kDefaultTau);
      const auto budget = static_cast<std::uint64_t>(c.integer(s, "budget", 2000));
      const auto res = satellite_search(space, lambda, tau, budget, run.seed());
      const auto v = is_satellite_config(res.config);
      const bool within = res.config.ordered.size() <= res.kappa;
      t << "search lambda " << fmt12(lambda) << " tau " << fmt12(tau) << " size " << res.config.ordered.size()
        << " kappa " << res.kappa << " within kappa " << yes(within) << " reverified " << yes(v.ok) << '\n';
      run.report["search"] = {{"lambda", num(lambda)},    {"tau", num(tau)},  {"size", res.config.ordered.size()},
                              {"kappa", res.kappa},       {"within_kappa", within}, {"reverified", v.ok},
                              {"proposals", res.proposals}, {"accepted", res.accepted}};
      if (!within || !v.ok) run.failed = true;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse covers, packing bounds and gauge integrals"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "YAML run configuration");
    sub->add_option("--seed", common.seed, "seed for randomized routines");
    sub->add_option("--eps", common.eps, "accuracy target");
    sub->add_option("--tol", common.tol, "residual tolerance");
    sub->add_option("--out", common.out, "JSON report path");
    sub->add_option("--svg", common.svg, "SVG path (dimension 2)");
    sub->add_option("--d,--dim", common.dim, "dimension (1-3)");
    sub->add_option("--norm", common.norm, "L1, L2 or Linf");
    sub->add_option("--lambda", common.lambda, "Morse constant");
  };

  PackArgs pack;
  auto* pk = app.add_subcommand("pack", "packing bounds and witness");
  add_common(pk);
  pk->add_option("--container", pack.container, "container radius");
  pk->add_option("--mindist", pack.mindist, "minimal pairwise distance");
  pk->add_flag("--anchored", pack.anchored, "the origin belongs to the packing");
  pk->add_flag("--surface", pack.surface, "points on the container sphere");
  pk->add_option("--budget", pack.budget, "perturbation rounds");

  auto* cv = app.add_subcommand("cover", "Besicovitch partition of a family or a.e. cover of a region");
  add_common(cv);

  IntegrateArgs integ;
  auto* in = app.add_subcommand("integrate", "integral with certificate");
  add_common(in);
  in->add_option("--integrand", integ.integrand, "builtin integrand name");
  in->add_option("--expr", integ.expr, "integrand expression");
  in->add_option("--lo", integ.lo, "lower corner of the default box domain");
  in->add_option("--hi", integ.hi, "upper corner of the default box domain");
  in->add_option("--listing-limit", integ.listing, "largest cover listed in the certificate");

  PvArgs pv;
  auto* pd = app.add_subcommand("pv-demo", "principal-value counterexample table");
  add_common(pd);
  pd->add_option("--n", pv.n, "number of balls A_n");
  pd->add_option("--radius", pv.radius, "central ball radius");
  pd->add_option("--start", pv.start, "first radius of the halving sequence");
  pd->add_option("--halvings", pv.halvings, "number of halvings");

  std::size_t samples = kDefaultValidationSamples;
  auto* va = app.add_subcommand("validate", "Morse-set and satellite verdicts");
  add_common(va);
  va->add_option("--samples", samples, "starlikeness samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Run run;
  run.common = common;
  try {
    if (!common.config.empty()) run.cfg = ConfigFile::load(common.config);
    if (*pk) run_pack(run, pack);
    else if (*cv) run_cover(run);
    else if (*in) run_integrate(run, integ);
    else if (*pd) run_pv(run, pv);
    else if (*va) run_validate(run, samples);
    std::cout << run.text.str();
    if (const auto path = run.out_path(); !path.empty()) write_file(path, run.report.dump(2) + "\n");
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    std::cout << run.text.str();
    std::cerr << "contract failure: " << e.what() << '\n';
    return 1;
  } catch (const YAML::Exception& e) {
    std::cerr << "input error: " << (common.config.empty() ? "config" : common.config) << ':' << e.mark.line + 1
              << ": " << e.msg << '\n';
    return 2;
  }
  if (run.failed) {
    std::cerr << "contract failure: see report\n";
    return 1;
  }
  return 0;
}

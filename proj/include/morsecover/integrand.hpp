#pragma once

// Integrands: point evaluation, an optional continuity modulus ρ(x, γ) with
// |f(y) - f(x)| < γ whenever ‖y - x‖ < ρ, a declared μ-null set off which the
// modulus holds, and a sign hint. Expression strings compile to a small
// stack program.

#include <boost/spirit/home/x3.hpp>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "morsecover/box.hpp"
#include "morsecover/space.hpp"

namespace morsecover {

enum class Sign { Mixed, Nonnegative, Nonpositive };

// ---------------------------------------------------------------------------
// Expressions

namespace detail::expr {

enum class Op : std::uint8_t { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Fn1, Fn2 };
enum class Fn : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Step, Sign, Floor, Min, Max, Atan2, Pow };

struct Instr {
  Op op;
  Fn fn = Fn::Sin;
  int var = 0;
  double value = 0.0;
};

struct Program {
  std::vector<Instr> code;
  int max_var = -1;
};

namespace x3 = boost::spirit::x3;

struct program_tag;

inline Program& program(const auto& ctx) { return x3::get<program_tag>(ctx).get(); }

inline auto emit(Op op) {
  return [op](auto& ctx) { program(ctx).code.push_back({op}); };
}

struct fn1_table : x3::symbols<Fn> {
  fn1_table() {
    add("sin", Fn::Sin)("cos", Fn::Cos)("tan", Fn::Tan)("exp", Fn::Exp)("log", Fn::Log)("ln", Fn::Log)(
        "sqrt", Fn::Sqrt)("abs", Fn::Abs)("step", Fn::Step)("sign", Fn::Sign)("floor", Fn::Floor);
  }
};
struct fn2_table : x3::symbols<Fn> {
  fn2_table() { add("min", Fn::Min)("max", Fn::Max)("atan2", Fn::Atan2)("pow", Fn::Pow); }
};
struct var_table : x3::symbols<int> {
  var_table() {
    add("x", 0)("y", 1)("z", 2);
    for (int i = 1; i <= 9; ++i) add("x" + std::to_string(i), i - 1);
  }
};
struct const_table : x3::symbols<double> {
  const_table() { add("pi", 3.14159265358979323846)("e", 2.71828182845904523536); }
};

inline const fn1_table fn1;
inline const fn2_table fn2;
inline const var_table vars;
inline const const_table consts;

const auto word_end = !(x3::alnum | x3::char_('_'));

x3::rule<class expr_id> const expr = "expression";
x3::rule<class term_id> const term = "term";
x3::rule<class factor_id> const factor = "factor";
x3::rule<class power_id> const power = "power";
x3::rule<class primary_id> const primary = "primary";

const auto push_const = [](auto& ctx) { program(ctx).code.push_back({Op::Const, Fn::Sin, 0, x3::_attr(ctx)}); };
const auto push_var = [](auto& ctx) {
  auto& p = program(ctx);
  p.code.push_back({Op::Var, Fn::Sin, x3::_attr(ctx), 0.0});
  p.max_var = std::max(p.max_var, x3::_attr(ctx));
};
const auto push_fn1 = [](auto& ctx) { program(ctx).code.push_back({Op::Fn1, x3::_attr(ctx)}); };
const auto push_fn2 = [](auto& ctx) { program(ctx).code.push_back({Op::Fn2, x3::_attr(ctx)}); };

const auto expr_def = term >> *(('+' > term)[emit(Op::Add)] | ('-' > term)[emit(Op::Sub)]);
const auto term_def = factor >> *(('*' > factor)[emit(Op::Mul)] | ('/' > factor)[emit(Op::Div)]);
const auto factor_def = ('-' > factor)[emit(Op::Neg)] | ('+' > factor) | power;
const auto power_def = primary >> -((x3::lit("**") | '^') > factor)[emit(Op::Pow)];
const auto primary_def = x3::double_[push_const] |
                         (x3::lexeme[fn1 >> &x3::lit('(')] >> '(' > expr > ')')[push_fn1] |
                         (x3::lexeme[fn2 >> &x3::lit('(')] >> '(' > expr > ',' > expr > ')')[push_fn2] |
                         x3::lexeme[consts >> word_end][push_const] | x3::lexeme[vars >> word_end][push_var] |
                         ('(' > expr > ')');

BOOST_SPIRIT_DEFINE(expr, term, factor, power, primary)

inline double apply1(Fn f, double a) {
  switch (f) {
    case Fn::Sin: return std::sin(a);
    case Fn::Cos: return std::cos(a);
    case Fn::Tan: return std::tan(a);
    case Fn::Exp: return std::exp(a);
    case Fn::Log: return std::log(a);
    case Fn::Sqrt: return std::sqrt(a);
    case Fn::Abs: return std::abs(a);
    case Fn::Step: return a >= 0.0 ? 1.0 : 0.0;
    case Fn::Sign: return a > 0.0 ? 1.0 : a < 0.0 ? -1.0 : 0.0;
    case Fn::Floor: return std::floor(a);
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

inline double apply2(Fn f, double a, double b) {
  switch (f) {
    case Fn::Min: return std::min(a, b);
    case Fn::Max: return std::max(a, b);
    case Fn::Atan2: return std::atan2(a, b);
    case Fn::Pow: return std::pow(a, b);
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace detail::expr

// Arithmetic over x (= x1), y (= x2), z (= x3), x1..x9 with + - * / ^,
// unary minus, pi, e and sin cos tan exp log/ln sqrt abs step sign floor
// min max atan2 pow.
class Expression {
 public:
  static Expression parse(const std::string& text, int dim) {
    namespace x3 = boost::spirit::x3;
    Expression e;
    e.text_ = text;
    e.prog_ = std::make_shared<detail::expr::Program>();
    auto first = text.begin();
    const auto parser = x3::with<detail::expr::program_tag>(std::ref(*e.prog_))[detail::expr::expr];
    bool ok = false;
    try {
      ok = x3::phrase_parse(first, text.end(), parser, x3::space);
    } catch (const x3::expectation_failure<std::string::const_iterator>& ex) {
      first = ex.where();
    }
    if (!ok || first != text.end())
      throw InputError("cannot parse expression '" + text + "' at column " +
                       std::to_string(1 + (first - text.begin())));
    if (e.prog_->max_var >= dim)
      throw InputError("expression '" + text + "' uses coordinate " + std::to_string(e.prog_->max_var + 1) +
                       " in dimension " + std::to_string(dim));
    return e;
  }

  const std::string& text() const { return text_; }

  double operator()(std::span<const double> x) const {
    using detail::expr::Op;
    double stack[64];
    int top = 0;
    for (const auto& in : prog_->code) {
      if (top > 62) return std::numeric_limits<double>::quiet_NaN();
      switch (in.op) {
        case Op::Const: stack[top++] = in.value; break;
        case Op::Var: stack[top++] = x[static_cast<std::size_t>(in.var)]; break;
        case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
        case Op::Add: --top; stack[top - 1] += stack[top]; break;
        case Op::Sub: --top; stack[top - 1] -= stack[top]; break;
        case Op::Mul: --top; stack[top - 1] *= stack[top]; break;
        case Op::Div: --top; stack[top - 1] /= stack[top]; break;
        case Op::Pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
        case Op::Fn1: stack[top - 1] = detail::expr::apply1(in.fn, stack[top - 1]); break;
        case Op::Fn2: --top; stack[top - 1] = detail::expr::apply2(in.fn, stack[top - 1], stack[top]); break;
      }
    }
    return top == 1 ? stack[0] : std::numeric_limits<double>::quiet_NaN();
  }

 private:
  std::string text_;
  std::shared_ptr<detail::expr::Program> prog_;
};

// ---------------------------------------------------------------------------
// Integrands

template <int D>
struct Integrand {
  std::string name;
  std::function<double(const Point<D>&)> eval;
  std::function<double(const Point<D>&, double)> modulus;  // empty: estimate by sampling
  std::vector<Box<D>> null_set;                             // degenerate boxes allowed
  Sign sign = Sign::Mixed;

  double operator()(const Point<D>& x) const { return eval(x); }

  double null_distance(const Space<D>& space, const Point<D>& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : null_set) d = std::min(d, space.dist(x, b.clamp(x)));
    return d;
  }

  Integrand scaled(double c) const {
    Integrand g = *this;
    auto f = eval;
    g.eval = [f, c](const Point<D>& x) { return c * f(x); };
    if (modulus) {
      auto m = modulus;
      const double a = std::abs(c);
      g.modulus = [m, a](const Point<D>& x, double gamma) {
        return a == 0.0 ? std::numeric_limits<double>::infinity() : m(x, gamma / a);
      };
    }
    if (c < 0.0) g.sign = sign == Sign::Nonnegative ? Sign::Nonpositive : sign == Sign::Nonpositive ? Sign::Nonnegative : Sign::Mixed;
    if (c == 0.0) g.sign = Sign::Nonnegative;
    g.name = fmt12(c) + "*(" + name + ")";
    return g;
  }

  // f + g; moduli combine with γ split evenly.
  Integrand plus(const Integrand& o) const {
    Integrand g;
    auto f1 = eval, f2 = o.eval;
    g.eval = [f1, f2](const Point<D>& x) { return f1(x) + f2(x); };
    if (modulus && o.modulus) {
      auto m1 = modulus, m2 = o.modulus;
      g.modulus = [m1, m2](const Point<D>& x, double gamma) { return std::min(m1(x, gamma / 2), m2(x, gamma / 2)); };
    }
    g.null_set = null_set;
    g.null_set.insert(g.null_set.end(), o.null_set.begin(), o.null_set.end());
    g.sign = sign == o.sign ? sign : Sign::Mixed;
    g.name = "(" + name + ")+(" + o.name + ")";
    return g;
  }
};

// Sampled check of a modulus at x: |f(y) - f(x)| < γ at deterministic points
// of the open ball B(x, ρ(x, γ)).
template <int D>
bool verify_modulus(const Integrand<D>& f, const Space<D>& space, const std::type_identity_t<Point<D>>& x, double gamma, int samples = 256) {
  if (!f.modulus) return false;
  const double rho = std::min(f.modulus(x, gamma), 1e6);
  const double fx = f(x);
  for (int k = 1; k <= samples; ++k) {
    const auto h = halton<(D < 8 ? D : 8)>(static_cast<std::uint64_t>(k));
    Point<D> v{};
    for (int i = 0; i < D; ++i) v[i] = 2.0 * h[static_cast<std::size_t>(i % 8)] - 1.0;
    const double n = space.norm(v);
    if (!(n > 0.0)) continue;
    const double t = rho * (1.0 - 1e-9) * radical_inverse(static_cast<std::uint64_t>(k), 23) / n;
    const Point<D> y = x + t * v;
    if (f.null_distance(space, y) == 0.0) continue;
    if (!(std::abs(f(y) - fx) < gamma)) return false;
  }
  return true;
}

// Value override at one point, which joins the null set.
template <int D>
Integrand<D> with_point_value(Integrand<D> f, const std::type_identity_t<Point<D>>& at, double value) {
  auto g = f.eval;
  f.eval = [g, at, value](const Point<D>& x) { return x == at ? value : g(x); };
  f.null_set.push_back(Box<D>{at, at});
  if ((value < 0.0 && f.sign == Sign::Nonnegative) || (value > 0.0 && f.sign == Sign::Nonpositive)) f.sign = Sign::Mixed;
  f.name += " with f(" + [&] {
    std::string s;
    for (int i = 0; i < D; ++i) s += (i ? "," : "") + fmt12(at[i]);
    return s;
  }() + ")=" + fmt12(value);
  return f;
}

template <int D>
Integrand<D> expression_integrand(const std::string& text) {
  const Expression e = Expression::parse(text, D);
  Integrand<D> f;
  f.name = text;
  f.eval = [e](const Point<D>& x) { return e(std::span<const double>(x.data(), x.size())); };
  return f;
}

// A hyperplane {x_axis = at} as a degenerate box.
template <int D>
Box<D> hyperplane(int axis, double at) {
  Box<D> b;
  for (int i = 0; i < D; ++i) {
    b.lo[i] = -std::numeric_limits<double>::infinity();
    b.hi[i] = std::numeric_limits<double>::infinity();
  }
  b.lo[axis] = b.hi[axis] = at;
  return b;
}

inline std::vector<std::string> builtin_integrand_names() {
  return {"one", "x", "x^2", "sin(pi x)", "step", "x1*x2", "x^-1/2"};
}

// Named integrands with analytic moduli. Coordinates are 1-Lipschitz in
// every supported norm, which the moduli use.
template <int D>
Integrand<D> builtin_integrand(const std::string& name) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Integrand<D> f;
  f.name = name;
  if (name == "one" || name.rfind("const:", 0) == 0) {
    const double c = name == "one" ? 1.0 : std::stod(name.substr(6));
    f.eval = [c](const Point<D>&) { return c; };
    f.modulus = [](const Point<D>&, double) { return inf; };
    f.sign = c >= 0.0 ? Sign::Nonnegative : Sign::Nonpositive;
  } else if (name == "x") {
    f.eval = [](const Point<D>& x) { return x[0]; };
    f.modulus = [](const Point<D>&, double g) { return g; };
  } else if (name == "x^2") {
    f.eval = [](const Point<D>& x) { return x[0] * x[0]; };
    f.modulus = [](const Point<D>& x, double g) { return g / (std::sqrt(x[0] * x[0] + g) + std::abs(x[0])); };
    f.sign = Sign::Nonnegative;
  } else if (name == "sin(pi x)") {
    f.eval = [](const Point<D>& x) { return std::sin(std::numbers::pi * x[0]); };
    f.modulus = [](const Point<D>&, double g) { return g / std::numbers::pi; };
  } else if (name == "step") {
    f.eval = [](const Point<D>& x) { return x[0] < 0.5 ? 1.0 : 3.0; };
    f.modulus = [](const Point<D>& x, double) { return std::abs(x[0] - 0.5); };
    f.null_set.push_back(hyperplane<D>(0, 0.5));
    f.sign = Sign::Nonnegative;
  } else if (name == "x1*x2") {
    if constexpr (D < 2) {
      throw InputError("integrand 'x1*x2' needs dimension >= 2");
    } else {
      f.eval = [](const Point<D>& x) { return x[0] * x[1]; };
      // ρ(|x1| + |x2|) + ρ² = γ
      f.modulus = [](const Point<D>& x, double g) {
        const double s = std::abs(x[0]) + std::abs(x[1]);
        return 2.0 * g / (s + std::sqrt(s * s + 4.0 * g));
      };
    }
  } else if (name == "x^-1/2") {
    f.eval = [](const Point<D>& x) { return x[0] > 0.0 ? 1.0 / std::sqrt(x[0]) : inf; };
    // (x - ρ)^(-1/2) - x^(-1/2) = γ
    f.modulus = [](const Point<D>& x, double g) {
      if (!(x[0] > 0.0)) return 0.0;
      const double a = 1.0 / std::sqrt(x[0]) + g;
      return x[0] - 1.0 / (a * a);
    };
    f.null_set.push_back(hyperplane<D>(0, 0.0));
    f.sign = Sign::Nonnegative;
  } else {
    throw InputError("unknown builtin integrand '" + name + "'");
  }
  return f;
}

}  // namespace morsecover

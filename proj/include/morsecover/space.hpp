#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "morsecover/core.hpp"

namespace morsecover {

enum class NormKind { L1, L2, Linf, WeightedLinf };

inline std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
    case NormKind::WeightedLinf: return "wlinf";
  }
  return "?";
}

inline NormKind parse_norm(std::string_view s) {
  if (s == "l1" || s == "L1") return NormKind::L1;
  if (s == "l2" || s == "L2") return NormKind::L2;
  if (s == "linf" || s == "Linf" || s == "inf") return NormKind::Linf;
  if (s == "wlinf" || s == "weighted-linf") return NormKind::WeightedLinf;
  throw InputError("unknown norm '" + std::string(s) + "'");
}

// A d-dimensional real normed space. The weighted sup-norm is
// max_i w_i |x_i|; every supported norm is absolute (depends on |x_i| only)
// and monotone in each |x_i|.
template <int D>
class Space {
  static_assert(D >= 1);

 public:
  Space() { weights_.fill(1.0); }

  explicit Space(NormKind kind) : kind_(kind) {
    if (kind == NormKind::WeightedLinf)
      throw InputError("weighted sup-norm needs a weight vector");
    weights_.fill(1.0);
  }

  Space(NormKind kind, const Point<D>& weights) : kind_(kind), weights_(weights) {
    for (double w : weights_)
      if (!(w > 0.0) || !std::isfinite(w)) throw InputError("norm weights must be positive");
  }

  static constexpr int dim() { return D; }
  NormKind kind() const { return kind_; }
  const Point<D>& weights() const { return weights_; }

  double norm(const Point<D>& x) const {
    switch (kind_) {
      case NormKind::L1: {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
      }
      case NormKind::L2: {
        if constexpr (D == 1) return std::abs(x[0]);
        double scale = 0.0;
        for (double v : x) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (double v : x) s += (v / scale) * (v / scale);
        return scale * std::sqrt(s);
      }
      case NormKind::Linf: {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
      }
      case NormKind::WeightedLinf: {
        double m = 0.0;
        for (int i = 0; i < D; ++i) m = std::max(m, weights_[i] * std::abs(x[i]));
        return m;
      }
    }
    return 0.0;
  }

  double dist(const Point<D>& a, const Point<D>& b) const { return norm(a - b); }

  // max |u_i| over the closed unit ball; a point at coordinate gap g from a
  // hyperplane {x_i = c} is at norm distance g / coord_extent(i).
  double coord_extent(int i) const {
    return kind_ == NormKind::WeightedLinf ? 1.0 / weights_[i] : 1.0;
  }

  double max_coord_extent() const {
    double m = 0.0;
    for (int i = 0; i < D; ++i) m = std::max(m, coord_extent(i));
    return m;
  }

  // sup { <n, u> : ||u|| <= 1 }
  double dual_norm(const Point<D>& n) const {
    switch (kind_) {
      case NormKind::L1: {
        double m = 0.0;
        for (double v : n) m = std::max(m, std::abs(v));
        return m;
      }
      case NormKind::L2: return euclidean<D>(n);
      case NormKind::Linf: {
        double s = 0.0;
        for (double v : n) s += std::abs(v);
        return s;
      }
      case NormKind::WeightedLinf: {
        double s = 0.0;
        for (int i = 0; i < D; ++i) s += std::abs(n[i]) / weights_[i];
        return s;
      }
    }
    return 0.0;
  }

  // Balls are axis-aligned boxes.
  bool balls_are_boxes() const {
    return D == 1 || kind_ == NormKind::Linf || kind_ == NormKind::WeightedLinf;
  }

  // Lebesgue volume of the closed unit ball.
  double unit_ball_volume() const {
    switch (kind_) {
      case NormKind::L1: return std::pow(2.0, D) / std::tgamma(D + 1.0);
      case NormKind::L2:
        return std::pow(std::numbers::pi, D / 2.0) / std::tgamma(D / 2.0 + 1.0);
      case NormKind::Linf: return std::pow(2.0, D);
      case NormKind::WeightedLinf: {
        double v = 1.0;
        for (double w : weights_) v *= 2.0 / w;
        return v;
      }
    }
    return 0.0;
  }

  // Point on the unit sphere in the direction of u (u != 0).
  Point<D> normalize(const Point<D>& u) const {
    const double n = norm(u);
    if (!(n > 0.0)) throw InputError("cannot normalize the zero vector");
    return (1.0 / n) * u;
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.kind_ == b.kind_ && a.weights_ == b.weights_;
  }

 private:
  NormKind kind_ = NormKind::L2;
  Point<D> weights_{};
};

// Norm of a dynamically sized coordinate vector (used at parse boundaries).
template <int D>
double norm_eval(const Space<D>& space, std::span<const double> x) {
  if (static_cast<int>(x.size()) != D)
    throw InputError("dimension mismatch: expected " + std::to_string(D) + " coordinates, got " +
                     std::to_string(x.size()));
  Point<D> p{};
  std::copy(x.begin(), x.end(), p.begin());
  return space.norm(p);
}

template <int D>
Point<D> to_point(std::span<const double> x) {
  if (static_cast<int>(x.size()) != D)
    throw InputError("dimension mismatch: expected " + std::to_string(D) + " coordinates, got " +
                     std::to_string(x.size()));
  Point<D> p{};
  std::copy(x.begin(), x.end(), p.begin());
  return p;
}

}  // namespace morsecover

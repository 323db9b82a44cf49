#pragma once

// Set/set intersection tests for Morse sets. Ball/ball and box/box pairs are
// exact; ball/box uses the nearest point of the box (valid because every
// supported norm is monotone in each |x_i|); planar polygons are handled by
// edge crossings plus vertex containment. Higher-dimensional polytopes fall
// back to bounding-ball rejection followed by deterministic boundary sampling.

#include <optional>

#include "morsecover/box.hpp"
#include "morsecover/morse_set.hpp"

namespace morsecover {

namespace detail {

// Coordinate-wise description of a box-shaped set with open/closed faces.
template <int D>
struct FacedBox {
  Box<D> box;
  bool lo_closed = true;
  bool hi_closed = true;
};

template <int D>
std::optional<FacedBox<D>> as_faced_box(const MorseSet<D>& s) {
  if (const auto* iv = std::get_if<TaggedInterval<D>>(&s.shape()))
    return FacedBox<D>{MorseSet<D>::interval_box(*iv), iv->closed, true};
  if (const auto* b = std::get_if<Ball<D>>(&s.shape()); b && s.space().balls_are_boxes())
    return FacedBox<D>{s.bounding_box(), !b->open, !b->open};
  return std::nullopt;
}

template <int D>
bool faced_boxes_meet(const FacedBox<D>& a, const FacedBox<D>& b, double tol) {
  auto has = [tol](const FacedBox<D>& f, int i, double p) {
    if (std::abs(p - f.box.lo[i]) <= tol) return f.lo_closed;
    if (std::abs(p - f.box.hi[i]) <= tol) return f.hi_closed;
    return p > f.box.lo[i] && p < f.box.hi[i];
  };
  for (int i = 0; i < D; ++i) {
    const double lo = std::max(a.box.lo[i], b.box.lo[i]);
    const double hi = std::min(a.box.hi[i], b.box.hi[i]);
    if (hi > lo + tol) continue;
    if (hi < lo - tol) return false;
    const double p = 0.5 * (lo + hi);
    if (!has(a, i, p) || !has(b, i, p)) return false;
  }
  return true;
}

template <int D>
bool polygonal(const MorseSet<D>& s) {
  if constexpr (D != 2) return false;
  else {
    if (std::holds_alternative<StarPolytope<D>>(s.shape())) return true;
    if (std::holds_alternative<TaggedInterval<D>>(s.shape())) return true;
    return s.space().kind() != NormKind::L2;  // L1/Linf balls are polygons
  }
}

// Outline of a planar polygonal set, counter-clockwise.
inline std::vector<Point<2>> outline(const MorseSet<2>& s) {
  if (const auto* b = std::get_if<Ball<2>>(&s.shape())) {
    const Box<2> bb = s.bounding_box();
    if (s.space().kind() == NormKind::L1) {
      const double R = b->radius;
      const auto& c = b->center;
      return {{c[0] + R, c[1]}, {c[0], c[1] + R}, {c[0] - R, c[1]}, {c[0], c[1] - R}};
    }
    return {bb.corner(0), bb.corner(1), bb.corner(3), bb.corner(2)};
  }
  if (std::holds_alternative<TaggedInterval<2>>(s.shape())) {
    const Box<2> bb = s.bounding_box();
    return {bb.corner(0), bb.corner(1), bb.corner(3), bb.corner(2)};
  }
  return s.vertices();
}

inline bool planar_meet(const MorseSet<2>& a, const MorseSet<2>& b, double tol) {
  const bool pa = polygonal(a), pb = polygonal(b);
  if (!pa && !pb) return false;  // unreachable: disc pairs are handled as balls
  if (pa && pb) {
    const auto va = outline(a), vb = outline(b);
    for (const auto& v : va)
      if (b.contains(v)) return true;
    for (const auto& v : vb)
      if (a.contains(v)) return true;
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = 0; j < vb.size(); ++j)
        if (planar::segments_intersect(va[i], va[(i + 1) % va.size()], vb[j],
                                       vb[(j + 1) % vb.size()], tol))
          return true;
    return false;
  }
  const MorseSet<2>& poly = pa ? a : b;
  const MorseSet<2>& disc = pa ? b : a;
  const auto& ball = std::get<Ball<2>>(disc.shape());
  if (poly.contains(ball.center)) return true;
  const auto v = outline(poly);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = planar::segment_distance(disc.space(), ball.center, v[i], v[(i + 1) % v.size()]);
    if (ball.open ? lt_tol(d, ball.radius, tol) : leq_tol(d, ball.radius, tol)) return true;
  }
  return false;
}

}  // namespace detail

// Number of boundary samples used by the sampled fallback.
inline constexpr std::size_t kIntersectSamples = 512;

template <int D>
bool intersects(const MorseSet<D>& a, const MorseSet<D>& b) {
  if (!(a.space() == b.space())) throw InputError("sets live in different spaces");
  const double tol = kGeomTol * std::min(a.inner_radius(), b.inner_radius());
  const auto& space = a.space();

  const auto* ba = std::get_if<Ball<D>>(&a.shape());
  const auto* bb = std::get_if<Ball<D>>(&b.shape());
  if (ba && bb) {
    const double d = space.dist(ba->center, bb->center);
    const double R = ba->radius + bb->radius;
    return (ba->open || bb->open) ? lt_tol(d, R, tol) : leq_tol(d, R, tol);
  }

  const auto fa = detail::as_faced_box(a), fb = detail::as_faced_box(b);
  if (fa && fb) return detail::faced_boxes_meet(*fa, *fb, tol);

  if ((ba && fb) || (bb && fa)) {
    const Ball<D>& ball = ba ? *ba : *bb;
    const MorseSet<D>& ball_set = ba ? a : b;
    const MorseSet<D>& box_set = ba ? b : a;
    const Point<D> p = (fa ? *fa : *fb).box.clamp(ball.center);
    const double d = space.dist(p, ball.center);
    if (lt_tol(d, ball.radius, tol)) return true;
    if (d > ball.radius + tol) return false;
    return ball_set.contains(p) && box_set.contains(p);
  }

  if constexpr (D == 2) {
    if (detail::polygonal(a) || detail::polygonal(b)) return detail::planar_meet(a, b, tol);
  }

  // Sampled fallback.
  if (space.dist(a.tag(), b.tag()) > a.outer_radius() + b.outer_radius() + tol) return false;
  if (a.contains(b.tag()) || b.contains(a.tag())) return true;
  for (const auto& p : a.boundary_samples(kIntersectSamples))
    if (b.contains(p)) return true;
  for (const auto& p : b.boundary_samples(kIntersectSamples))
    if (a.contains(p)) return true;
  return false;
}

// True when the pair has an exact (non-sampled) intersection test.
template <int D>
bool intersection_is_exact(const MorseSet<D>& a, const MorseSet<D>& b) {
  const bool ba = std::holds_alternative<Ball<D>>(a.shape());
  const bool bb = std::holds_alternative<Ball<D>>(b.shape());
  const bool fa = detail::as_faced_box(a).has_value(), fb = detail::as_faced_box(b).has_value();
  if ((ba || fa) && (bb || fb)) return true;
  if constexpr (D == 2) return true;
  return false;
}

// Lower bound on the norm distance from x to the closed set cl(S); zero when
// x lies in cl(S). Exact for balls and boxes.
template <int D>
double distance_to_set(const MorseSet<D>& s, const std::type_identity_t<Point<D>>& x) {
  const auto& space = s.space();
  if (const auto* b = std::get_if<Ball<D>>(&s.shape()))
    return std::max(0.0, space.dist(x, b->center) - b->radius);
  if (const auto f = detail::as_faced_box(s)) return space.dist(x, f->box.clamp(x));
  if constexpr (D == 2) {
    if (s.closure().contains(x)) return 0.0;
    const auto v = s.vertices();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
      d = std::min(d, planar::segment_distance(space, x, v[i], v[(i + 1) % v.size()]));
    return d;
  }
  return std::max(0.0, space.dist(x, s.tag()) - s.outer_radius());
}

}  // namespace morsecover

#pragma once

// Planar helpers: segment predicates, norm distance to a segment, polygon
// clipping and exact disc/rectangle overlap areas.

#include <algorithm>
#include <cmath>
#include <vector>

#include "morsecover/core.hpp"
#include "morsecover/space.hpp"

namespace morsecover::planar {

using P2 = Point<2>;

inline double cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline double orient(const P2& a, const P2& b, const P2& c) { return cross(b - a, c - a); }

inline bool on_segment(const P2& a, const P2& b, const P2& p, double tol) {
  if (std::abs(orient(a, b, p)) > tol * std::max(1.0, euclidean<2>(b - a))) return false;
  return p[0] >= std::min(a[0], b[0]) - tol && p[0] <= std::max(a[0], b[0]) + tol &&
         p[1] >= std::min(a[1], b[1]) - tol && p[1] <= std::max(a[1], b[1]) + tol;
}

// Closed segments [a,b] and [c,d] share a point (touching counts).
inline bool segments_intersect(const P2& a, const P2& b, const P2& c, const P2& d, double tol) {
  const double d1 = orient(c, d, a), d2 = orient(c, d, b);
  const double d3 = orient(a, b, c), d4 = orient(a, b, d);
  const double s1 = tol * std::max(1.0, euclidean<2>(d - c));
  const double s2 = tol * std::max(1.0, euclidean<2>(b - a));
  auto sgn = [](double v, double s) { return v > s ? 1 : (v < -s ? -1 : 0); };
  const int o1 = sgn(d1, s1), o2 = sgn(d2, s1), o3 = sgn(d3, s2), o4 = sgn(d4, s2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(c, d, a, tol)) return true;
  if (o2 == 0 && on_segment(c, d, b, tol)) return true;
  if (o3 == 0 && on_segment(a, b, c, tol)) return true;
  if (o4 == 0 && on_segment(a, b, d, tol)) return true;
  return false;
}

// Norm distance from p to the closed segment [a,b]. The map t -> ||p - a -
// t(b-a)|| is convex, so a golden-section search converges to the minimum;
// the Euclidean case is solved in closed form.
inline double segment_distance(const Space<2>& space, const P2& p, const P2& a, const P2& b) {
  const P2 e = b - a;
  const double ee = dot<2>(e, e);
  if (ee == 0.0) return space.dist(p, a);
  if (space.kind() == NormKind::L2) {
    const double t = std::clamp(dot<2>(p - a, e) / ee, 0.0, 1.0);
    return space.dist(p, lerp<2>(a, b, t));
  }
  auto f = [&](double t) { return space.dist(p, lerp<2>(a, b, t)); };
  constexpr double g = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 90; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f(0.0), f(1.0), f1, f2});
}

inline double polygon_area(const std::vector<P2>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * s;
}

// Clip a simple polygon against an axis-aligned rectangle
// (Sutherland-Hodgman). The clip region is convex, so the signed area of the
// result equals the area of the intersection even when the output contains
// degenerate bridging edges.
inline std::vector<P2> clip_to_rect(std::vector<P2> poly, const P2& lo, const P2& hi) {
  auto clip = [&](int axis, double bound, bool keep_greater) {
    std::vector<P2> out;
    const std::size_t n = poly.size();
    if (n == 0) return;
    out.reserve(n + 4);
    auto inside = [&](const P2& p) { return keep_greater ? p[axis] >= bound : p[axis] <= bound; };
    for (std::size_t i = 0; i < n; ++i) {
      const P2& cur = poly[i];
      const P2& prev = poly[(i + n - 1) % n];
      const bool ci = inside(cur), pi = inside(prev);
      if (ci != pi) {
        const double t = (bound - prev[axis]) / (cur[axis] - prev[axis]);
        P2 x = lerp<2>(prev, cur, t);
        x[axis] = bound;
        out.push_back(x);
      }
      if (ci) out.push_back(cur);
    }
    poly.swap(out);
  };
  clip(0, lo[0], true);
  clip(0, hi[0], false);
  clip(1, lo[1], true);
  clip(1, hi[1], false);
  return poly;
}

// Area of {x in [x0,x1], 0 <= y <= sqrt(R^2 - x^2)} for |x0|,|x1| <= R.
inline double half_disc_primitive(double x, double R) {
  const double xc = std::clamp(x, -R, R);
  return 0.5 * (xc * std::sqrt(std::max(0.0, R * R - xc * xc)) + R * R * std::asin(xc / R));
}

// Area of {(x,y): x in [x0,x1], y in [0, min(h, sqrt(R^2-x^2))]} with
// 0 <= h; the disc is centered at the origin.
inline double disc_strip_area(double x0, double x1, double h, double R) {
  x0 = std::max(x0, -R);
  x1 = std::min(x1, R);
  if (x1 <= x0 || h <= 0.0) return 0.0;
  if (h >= R) return half_disc_primitive(x1, R) - half_disc_primitive(x0, R);
  // sqrt(R^2-x^2) >= h  <=>  |x| <= w
  const double w = std::sqrt(R * R - h * h);
  double area = 0.0;
  const double a = std::max(x0, -w), b = std::min(x1, w);
  if (b > a) area += h * (b - a);
  if (x0 < -w) area += half_disc_primitive(std::min(x1, -w), R) - half_disc_primitive(x0, R);
  if (x1 > w) area += half_disc_primitive(x1, R) - half_disc_primitive(std::max(x0, w), R);
  return area;
}

// Exact area of the Euclidean disc B(c,R) intersected with [lo,hi].
inline double disc_rect_area(const P2& c, double R, const P2& lo, const P2& hi) {
  const double x0 = lo[0] - c[0], x1 = hi[0] - c[0];
  const double y0 = lo[1] - c[1], y1 = hi[1] - c[1];
  if (x1 <= x0 || y1 <= y0) return 0.0;
  // Signed decomposition in y: area(y in [y0,y1]) from strips anchored at y=0.
  auto up_to = [&](double y) {  // area of disc ∩ {x in [x0,x1], y' between 0 and y}
    if (y >= 0.0) return disc_strip_area(x0, x1, y, R);
    return -disc_strip_area(x0, x1, -y, R);
  };
  return std::max(0.0, up_to(y1) - up_to(y0));
}

}  // namespace morsecover::planar

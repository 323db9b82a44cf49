#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "morsecover/box.hpp"
#include "morsecover/core.hpp"
#include "morsecover/planar.hpp"
#include "morsecover/space.hpp"

namespace morsecover {

// Ball B(center, radius) in the set's norm, closed unless `open`.
template <int D>
struct Ball {
  Point<D> center{};
  double radius = 0.0;
  bool open = false;
};

// {anchor + t : 0 < t_i <= edges_i}; the closed variant also keeps the lower
// faces. `fraction` locates the tag at anchor + edges * fraction.
template <int D>
struct TaggedInterval {
  Point<D> anchor{};
  Point<D> edges{};
  Point<D> fraction{};
  bool closed = false;
};

// Unscaled geometry of a star-shaped polytope, stored relative to its kernel
// center. Planar polytopes are star polygons described by angle-sorted
// vertices; in higher dimensions only convex polytopes are representable and
// membership goes through the half-space description.
template <int D>
struct PolytopeData {
  std::vector<Point<D>> offsets;
  std::vector<double> angles;     // planar only, strictly increasing in (-pi, pi]
  std::vector<Point<D>> normals;  // D >= 3: Euclidean unit outward normals
  std::vector<double> heights;    // <normal, x - center> <= height
  double diameter = 0.0;          // max pairwise vertex distance (set norm)
  double outer = 0.0;             // max vertex norm
  double kernel = 0.0;            // largest r with B(center, r) inside
};

template <int D>
struct StarPolytope {
  std::shared_ptr<const PolytopeData<D>> data;
  double scale = 1.0;
  bool open = false;
};

namespace detail {

// Distance along the ray from the kernel center in direction `angle` to the
// boundary of the unscaled star polygon.
inline double radial_extent(const PolytopeData<2>& poly, double angle) {
  const auto& a = poly.angles;
  const std::size_t n = a.size();
  auto it = std::upper_bound(a.begin(), a.end(), angle);
  const std::size_t hi = (it == a.end()) ? 0 : static_cast<std::size_t>(it - a.begin());
  const std::size_t lo = (hi + n - 1) % n;
  const Point<2>& v0 = poly.offsets[lo];
  const Point<2>& v1 = poly.offsets[hi];
  const Point<2> u{std::cos(angle), std::sin(angle)};
  const Point<2> e = v1 - v0;
  const double den = planar::cross(u, e);
  if (den == 0.0) return std::max(euclidean<2>(v0), euclidean<2>(v1));
  return planar::cross(v0, e) / den;
}

}  // namespace detail

// A lambda-Morse set: tag a, inner radius r and a concrete shape S with
// B(a, r) contained in cl(S), S contained in B(a, lambda r), S starlike with
// respect to every point of B(a, r).
template <int D>
class MorseSet {
 public:
  using Shape = std::variant<Ball<D>, TaggedInterval<D>, StarPolytope<D>>;

  // -- construction ---------------------------------------------------------

  static MorseSet closed_ball(const Space<D>& space, const Point<D>& center, double radius,
                              double lambda = 1.0) {
    return tagged_ball(space, center, radius, center, false, lambda);
  }

  // Ball with the tag anywhere in its interior. The offset ratio
  // w = ||tag - center|| / radius fixes the inner radius radius * (1 - w) and
  // the minimal admissible lambda (1 + w) / (1 - w).
  static MorseSet tagged_ball(const Space<D>& space, const Point<D>& center, double radius,
                              const Point<D>& tag, bool open, double lambda) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be positive");
    check_lambda(lambda);
    const double w = space.dist(tag, center) / radius;
    if (!(w < 1.0)) throw InputError("ball tag must lie in the interior of the ball");
    MorseSet s(space, tag, radius * (1.0 - w), lambda, Ball<D>{center, radius, open});
    s.require_lambda_at_least((1.0 + w) / (1.0 - w));
    return s;
  }

  static MorseSet tagged_interval(const Space<D>& space, const Point<D>& anchor,
                                  const Point<D>& edges, const Point<D>& fraction, double lambda,
                                  bool closed = false) {
    check_lambda(lambda);
    double c2 = 0.0;
    Point<D> tag{};
    for (int i = 0; i < D; ++i) {
      if (!(edges[i] > 0.0)) throw InputError("interval edge lengths must be positive");
      if (!(fraction[i] > 0.0 && fraction[i] < 1.0))
        throw InputError("interval tag fractions must lie in (0,1)");
      c2 += fraction[i] * fraction[i];
      tag[i] = anchor[i] + edges[i] * fraction[i];
    }
    if (!(c2 < 1.0)) throw InputError("interval tag fractions must satisfy sum c_i^2 < 1");
    TaggedInterval<D> iv{anchor, edges, fraction, closed};
    MorseSet s(space, tag, interval_kernel(space, iv, tag), lambda, iv);
    s.require_lambda_at_least(s.outer_radius() / s.inner_radius());
    return s;
  }

  // Planar star polygon with kernel center `center`. Vertices are sorted by
  // polar angle about the center; consecutive angular gaps must stay below pi
  // so every ray from the center leaves through exactly one edge.
  static MorseSet star_polygon(const Space<D>& space, const Point<D>& center, double kernel_radius,
                               const std::vector<Point<D>>& vertices, double lambda)
    requires(D == 2)
  {
    check_lambda(lambda);
    if (!(kernel_radius > 0.0)) throw InputError("kernel radius must be positive");
    if (vertices.size() < 3) throw InputError("star polygon needs at least three vertices");
    std::vector<std::pair<double, Point<2>>> polar;
    for (const auto& v : vertices) {
      const Point<2> o = v - center;
      if (euclidean<2>(o) == 0.0) throw InputError("polygon vertex coincides with kernel center");
      polar.emplace_back(std::atan2(o[1], o[0]), o);
    }
    std::sort(polar.begin(), polar.end(), [](auto& a, auto& b) { return a.first < b.first; });
    auto data = std::make_shared<PolytopeData<2>>();
    for (std::size_t i = 0; i < polar.size(); ++i) {
      if (i > 0 && !(polar[i].first > polar[i - 1].first))
        throw InputError("star polygon vertices must have distinct polar angles");
      data->angles.push_back(polar[i].first);
      data->offsets.push_back(polar[i].second);
    }
    const std::size_t n = data->angles.size();
    for (std::size_t i = 0; i < n; ++i) {
      double gap = (i + 1 < n ? data->angles[i + 1] : data->angles[0] + 2 * std::numbers::pi) -
                   data->angles[i];
      if (!(gap < std::numbers::pi))
        throw InputError("star polygon angular gap must be below pi");
    }
    finish_polytope(space, *data);
    // The kernel ball must see the whole polygon, so it has to lie on the
    // inner side of every edge line (not merely inside the polygon).
    double kernel = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Point<2>& a = data->offsets[i];
      const Point<2>& b = data->offsets[(i + 1) % n];
      const Point<2> normal{b[1] - a[1], a[0] - b[0]};  // outward for CCW order
      kernel = std::min(kernel, dot<2>(normal, a) / space.dual_norm(normal));
    }
    data->kernel = kernel;
    return MorseSet(space, center, kernel_radius, lambda, StarPolytope<D>{std::move(data), 1.0, false});
  }

  // Convex polytope from vertices plus a matching half-space description
  // <normal_k, x - center> <= height_k (normals need not be unit length).
  static MorseSet convex_polytope(const Space<D>& space, const Point<D>& center,
                                  double kernel_radius, const std::vector<Point<D>>& vertices,
                                  const std::vector<Point<D>>& normals,
                                  const std::vector<double>& heights, double lambda)
    requires(D >= 3)
  {
    check_lambda(lambda);
    if (!(kernel_radius > 0.0)) throw InputError("kernel radius must be positive");
    if (vertices.size() < static_cast<std::size_t>(D + 1))
      throw InputError("polytope needs at least d+1 vertices");
    if (normals.size() != heights.size() || normals.size() < static_cast<std::size_t>(D + 1))
      throw InputError("polytope needs at least d+1 half-spaces");
    auto data = std::make_shared<PolytopeData<D>>();
    for (const auto& v : vertices) data->offsets.push_back(v - center);
    double kernel = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < normals.size(); ++k) {
      const double len = euclidean<D>(normals[k]);
      if (!(len > 0.0)) throw InputError("zero half-space normal");
      const Point<D> n = (1.0 / len) * normals[k];
      const double h = heights[k] / len;
      if (!(h > 0.0)) throw InputError("kernel center must be strictly inside every half-space");
      data->normals.push_back(n);
      data->heights.push_back(h);
      kernel = std::min(kernel, h / space.dual_norm(n));
    }
    for (const auto& o : data->offsets) {
      int tight = 0;
      for (std::size_t k = 0; k < data->normals.size(); ++k) {
        const double s = dot<D>(data->normals[k], o);
        if (s > data->heights[k] * (1 + 1e-9)) throw InputError("vertex violates a half-space");
        if (std::abs(s - data->heights[k]) <= 1e-9 * data->heights[k]) ++tight;
      }
      if (tight < D) throw InputError("listed vertex is not a vertex of the half-space polytope");
    }
    finish_polytope(space, *data);
    data->kernel = kernel;
    return MorseSet(space, center, kernel_radius, lambda, StarPolytope<D>{std::move(data), 1.0, false});
  }

  // -- accessors ------------------------------------------------------------

  const Space<D>& space() const { return space_; }
  const Point<D>& tag() const { return tag_; }
  double inner_radius() const { return r_; }
  double lambda() const { return lambda_; }
  const Shape& shape() const { return shape_; }

  // -- predicates -----------------------------------------------------------

  bool contains(const Point<D>& x) const { return test(x, false); }
  bool interior_contains(const Point<D>& x) const { return test(x, true); }
  bool on_boundary(const Point<D>& x) const {
    return closure().contains(x) && !interior_contains(x);
  }
  double tolerance() const { return kGeomTol * r_; }

  // -- metric quantities ----------------------------------------------------

  double diameter() const {
    return std::visit(
        [&](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) return 2.0 * s.radius;
          // Supported norms are monotone in |x_i|, so the longest vertex
          // difference is the full edge vector.
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>) return space_.norm(s.edges);
          else return s.scale * s.data->diameter;
        },
        shape_);
  }

  // sup ||x - tag|| over S.
  double outer_radius() const {
    return std::visit(
        [&](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) return space_.dist(s.center, tag_) + s.radius;
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
            double m = 0.0;
            const Box<D> b = interval_box(s);
            for (unsigned c = 0; c < (1u << D); ++c) m = std::max(m, space_.dist(b.corner(c), tag_));
            return m;
          } else
            return s.scale * s.data->outer;
        },
        shape_);
  }

  // Largest r with B(tag, r) inside cl(S).
  double max_kernel_radius() const {
    return std::visit(
        [&](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) return s.radius - space_.dist(s.center, tag_);
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>) return interval_kernel(space_, s, tag_);
          else return s.scale * s.data->kernel;
        },
        shape_);
  }

  // Smallest lambda for which this shape is a Morse set around its tag.
  double min_lambda() const { return outer_radius() / max_kernel_radius(); }

  Box<D> bounding_box() const {
    return std::visit(
        [&](const auto& s) -> Box<D> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) {
            Point<D> half{};
            for (int i = 0; i < D; ++i) half[i] = s.radius * space_.coord_extent(i);
            return Box<D>::from_center(s.center, half);
          } else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
            return interval_box(s);
          } else {
            Box<D> b{tag_, tag_};
            for (const auto& o : s.data->offsets) {
              const Point<D> v = tag_ + s.scale * o;
              for (int i = 0; i < D; ++i) {
                b.lo[i] = std::min(b.lo[i], v[i]);
                b.hi[i] = std::max(b.hi[i], v[i]);
              }
            }
            return b;
          }
        },
        shape_);
  }

  // Vertices of interval/polytope shapes; empty for balls.
  std::vector<Point<D>> vertices() const {
    std::vector<Point<D>> out;
    if (const auto* iv = std::get_if<TaggedInterval<D>>(&shape_)) {
      const Box<D> b = interval_box(*iv);
      for (unsigned c = 0; c < (1u << D); ++c) out.push_back(b.corner(c));
    } else if (const auto* p = std::get_if<StarPolytope<D>>(&shape_)) {
      for (const auto& o : p->data->offsets) out.push_back(tag_ + p->scale * o);
    }
    return out;
  }

  // -- transformations ------------------------------------------------------

  // S^(p) = {a + p x : a + x in S}, 0 < p <= 1.
  MorseSet scaled(double p) const {
    if (!(p > 0.0 && p <= 1.0)) throw InputError("scale factor must lie in (0,1]");
    return rescaled(p);
  }

  // Homothety about the tag by any positive factor.
  MorseSet rescaled(double f) const {
    if (!(f > 0.0) || !std::isfinite(f)) throw InputError("rescale factor must be positive");
    MorseSet out = *this;
    out.r_ = r_ * f;
    std::visit(
        [&](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) {
            s.center = tag_ + f * (s.center - tag_);
            s.radius *= f;
          } else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
            s.anchor = tag_ + f * (s.anchor - tag_);
            for (int i = 0; i < D; ++i) s.edges[i] *= f;
          } else {
            s.scale *= f;
          }
        },
        out.shape_);
    return out;
  }

  MorseSet translated(const Point<D>& offset) const {
    MorseSet out = *this;
    out.tag_ = tag_ + offset;
    std::visit(
        [&](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) s.center = s.center + offset;
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>) s.anchor = s.anchor + offset;
        },
        out.shape_);
    return out;
  }

  MorseSet closure() const {
    MorseSet out = *this;
    std::visit(
        [](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) s.open = false;
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>) s.closed = true;
          else s.open = false;
        },
        out.shape_);
    return out;
  }

  // Same tag/lambda with the interior of the shape (used for open variants).
  MorseSet interior_variant() const {
    MorseSet out = *this;
    std::visit(
        [](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) s.open = true;
          else if constexpr (std::is_same_v<T, StarPolytope<D>>) s.open = true;
        },
        out.shape_);
    return out;
  }

  // Replace lambda (must stay admissible for balls and intervals).
  MorseSet with_lambda(double lambda) const {
    check_lambda(lambda);
    MorseSet out = *this;
    out.lambda_ = lambda;
    if (!std::holds_alternative<StarPolytope<D>>(shape_)) out.require_lambda_at_least(min_lambda());
    return out;
  }

  // Polytope with one more vertex (star polygons only); used to build
  // shapes that violate the outer containment.
  MorseSet with_extra_vertex(const Point<D>& v) const
    requires(D == 2)
  {
    const auto* p = std::get_if<StarPolytope<D>>(&shape_);
    if (!p) throw InputError("extra vertices only apply to star polygons");
    auto verts = vertices();
    verts.push_back(v);
    return star_polygon(space_, tag_, r_, verts, lambda_);
  }

  // -- deterministic samples ------------------------------------------------

  // Points on the boundary of the shape.
  std::vector<Point<D>> boundary_samples(std::size_t n) const {
    std::vector<Point<D>> out;
    for (const auto& v : vertices()) out.push_back(v);
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) {
            for (std::size_t k = 1; out.size() < n; ++k)
              out.push_back(s.center + s.radius * space_.normalize(direction(k)));
          } else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
            const Box<D> b = interval_box(s);
            for (std::size_t k = 1; out.size() < n; ++k) {
              const auto h = halton<D>(k);
              Point<D> x{};
              for (int i = 0; i < D; ++i) x[i] = b.lo[i] + h[i] * (b.hi[i] - b.lo[i]);
              const int face = static_cast<int>(k % (2 * D));
              x[face / 2] = face % 2 ? b.hi[face / 2] : b.lo[face / 2];
              out.push_back(x);
            }
          } else {
            for (std::size_t k = 1; out.size() < n; ++k) out.push_back(ray_boundary(s, direction(k)));
          }
        },
        shape_);
    out.resize(std::min(out.size(), std::max<std::size_t>(n, vertices().size())));
    return out;
  }

  // Points of S (segments from the tag towards boundary samples).
  std::vector<Point<D>> member_samples(std::size_t n) const {
    std::vector<Point<D>> out;
    const auto bnd = boundary_samples(std::max<std::size_t>(n / 2 + 1, 8));
    for (std::size_t k = 0; out.size() < n; ++k) {
      const Point<D>& b = bnd[k % bnd.size()];
      const double t = radical_inverse(k + 1, 3);
      const Point<D> x = lerp<D>(tag_, b, t);
      out.push_back(x);
    }
    return out;
  }

  // Boundary point on the ray from the tag in direction u.
  Point<D> ray_boundary_point(const Point<D>& u) const {
    return std::visit(
        [&](const auto& s) -> Point<D> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, StarPolytope<D>>) return ray_boundary(s, u);
          else {
            // Bisection on the convex shape along the ray.
            double lo = 0.0, hi = 2.0 * outer_radius() / std::max(space_.norm(u), 1e-300);
            const MorseSet cl = closure();
            for (int it = 0; it < 200; ++it) {
              const double mid = 0.5 * (lo + hi);
              (cl.contains(tag_ + mid * u) ? lo : hi) = mid;
            }
            return tag_ + lo * u;
          }
        },
        shape_);
  }

  // Shape-level approximate equality (same variant, parameters within rel).
  bool approx_equal(const MorseSet& o, double rel) const {
    const double scale = std::max({1.0, outer_radius(), o.outer_radius()});
    const double tol = rel * scale;
    auto close = [&](const Point<D>& a, const Point<D>& b) {
      for (int i = 0; i < D; ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
      return true;
    };
    if (shape_.index() != o.shape_.index() || !(space_ == o.space_)) return false;
    if (!close(tag_, o.tag_) || std::abs(r_ - o.r_) > tol || lambda_ != o.lambda_) return false;
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          const auto& t = std::get<T>(o.shape_);
          if constexpr (std::is_same_v<T, Ball<D>>)
            return close(s.center, t.center) && std::abs(s.radius - t.radius) <= tol && s.open == t.open;
          else if constexpr (std::is_same_v<T, TaggedInterval<D>>)
            return close(s.anchor, t.anchor) && close(s.edges, t.edges) && s.closed == t.closed;
          else
            return s.data == t.data && std::abs(s.scale - t.scale) <= rel * std::max(s.scale, t.scale) &&
                   s.open == t.open;
        },
        shape_);
  }

  static Box<D> interval_box(const TaggedInterval<D>& s) { return {s.anchor, s.anchor + s.edges}; }

 private:
  MorseSet(const Space<D>& space, const Point<D>& tag, double r, double lambda, Shape shape)
      : space_(space), tag_(tag), r_(r), lambda_(lambda), shape_(std::move(shape)) {
    if (!all_finite<D>(tag)) throw InputError("tag must be finite");
    if (!(r > 0.0) || !std::isfinite(r)) throw InputError("inner radius must be positive");
  }

  static void check_lambda(double lambda) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw InputError("lambda must be >= 1");
  }

  void require_lambda_at_least(double min_lambda) const {
    if (lambda_ < min_lambda * (1.0 - 1e-12))
      throw InputError("lambda " + fmt12(lambda_) + " is below the minimum " + fmt12(min_lambda) +
                       " for this shape");
  }

  static double interval_kernel(const Space<D>& space, const TaggedInterval<D>& s, const Point<D>& tag) {
    double k = std::numeric_limits<double>::infinity();
    for (int i = 0; i < D; ++i) {
      const double gap = std::min(tag[i] - s.anchor[i], s.anchor[i] + s.edges[i] - tag[i]);
      k = std::min(k, gap / space.coord_extent(i));
    }
    return k;
  }

  static void finish_polytope(const Space<D>& space, PolytopeData<D>& d) {
    d.outer = 0.0;
    d.diameter = 0.0;
    for (std::size_t i = 0; i < d.offsets.size(); ++i) {
      d.outer = std::max(d.outer, space.norm(d.offsets[i]));
      for (std::size_t j = i + 1; j < d.offsets.size(); ++j)
        d.diameter = std::max(d.diameter, space.dist(d.offsets[i], d.offsets[j]));
    }
  }

  static Point<D> direction(std::size_t k) {
    if constexpr (D == 1) return Point<D>{k % 2 ? 1.0 : -1.0};
    for (std::size_t j = k;; j += 7919) {
      const auto h = halton<D>(j);
      Point<D> u{};
      for (int i = 0; i < D; ++i) u[i] = 2.0 * h[i] - 1.0;
      if (euclidean<D>(u) > 1e-6) return u;
    }
  }

  Point<D> ray_boundary(const StarPolytope<D>& s, const Point<D>& u) const {
    if constexpr (D == 2) {
      const double ang = std::atan2(u[1], u[0]);
      const double t = s.scale * detail::radial_extent(*s.data, ang);
      return tag_ + (t / euclidean<2>(u)) * u;
    } else {
      double t = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < s.data->normals.size(); ++k) {
        const double nu = dot<D>(s.data->normals[k], u);
        if (nu > 0.0) t = std::min(t, s.scale * s.data->heights[k] / nu);
      }
      return tag_ + t * u;
    }
  }

  bool test(const Point<D>& x, bool interior) const {
    const double tol = tolerance();
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball<D>>) {
            const double d = space_.dist(x, s.center);
            return (interior || s.open) ? lt_tol(d, s.radius, tol) : leq_tol(d, s.radius, tol);
          } else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
            for (int i = 0; i < D; ++i) {
              const double t = x[i] - s.anchor[i];
              const bool lower = (interior || !s.closed) ? lt_tol(0.0, t, tol) : leq_tol(0.0, t, tol);
              const bool upper = interior ? lt_tol(t, s.edges[i], tol) : leq_tol(t, s.edges[i], tol);
              if (!lower || !upper) return false;
            }
            return true;
          } else {
            const Point<D> o = x - tag_;
            if constexpr (D == 2) {
              const double d = euclidean<2>(o);
              if (d == 0.0) return true;
              const double ext = s.scale * detail::radial_extent(*s.data, std::atan2(o[1], o[0]));
              return (interior || s.open) ? lt_tol(d, ext, tol) : leq_tol(d, ext, tol);
            } else {
              for (std::size_t k = 0; k < s.data->normals.size(); ++k) {
                const double v = dot<D>(s.data->normals[k], o), h = s.scale * s.data->heights[k];
                if (interior || s.open ? !lt_tol(v, h, tol) : !leq_tol(v, h, tol)) return false;
              }
              return true;
            }
          }
        },
        shape_);
  }

  Space<D> space_;
  Point<D> tag_{};
  double r_ = 0.0;
  double lambda_ = 1.0;
  Shape shape_;
};

// alpha y + (1 - alpha) x for y strictly inside the kernel ball and x in
// cl(S); the result is asserted to lie in int(S).
template <int D>
Point<D> segment_interior(const MorseSet<D>& s, const std::type_identity_t<Point<D>>& y,
                          const std::type_identity_t<Point<D>>& x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractError("segment parameter must lie in (0,1]");
  if (!lt_tol(s.space().dist(y, s.tag()), s.inner_radius(), s.tolerance()))
    throw ContractError("segment start must lie strictly inside the kernel ball");
  if (!s.closure().contains(x)) throw ContractError("segment end must lie in the closure of the set");
  const Point<D> p = alpha * y + (1.0 - alpha) * x;
  if (!s.interior_contains(p)) throw ContractError("segment point left the interior");
  return p;
}

// Segment [y, x] parametrised by alpha: point_at(alpha) = alpha y + (1-alpha) x.
template <int D>
struct Segment {
  Point<D> y{};
  Point<D> x{};
  Point<D> point_at(double alpha) const { return alpha * y + (1.0 - alpha) * x; }
};

// Regular star with `points` outer vertices at distance outer_radius and
// inner vertices at inner_vertex_radius (Euclidean), rotated by `phase`.
inline MorseSet<2> regular_star(const Space<2>& space, const Point<2>& center, int points,
                                double outer_radius, double inner_vertex_radius, double kernel_radius,
                                double lambda, double phase = std::numbers::pi / 2) {
  std::vector<Point<2>> v;
  for (int k = 0; k < 2 * points; ++k) {
    const double ang = phase + k * std::numbers::pi / points;
    const double rad = k % 2 == 0 ? outer_radius : inner_vertex_radius;
    v.push_back(center + Point<2>{rad * std::cos(ang), rad * std::sin(ang)});
  }
  return MorseSet<2>::star_polygon(space, center, kernel_radius, v, lambda);
}

}  // namespace morsecover

#pragma once

// Radon measures built from weighted atoms and affine Lebesgue densities on
// boxes, measurable regions (signed unions of boxes and balls), and measure
// evaluation on Morse sets and regions. Box shapes, balls fully inside a
// density box, planar polygons and planar Euclidean discs are exact; three
// dimensional L1/L2 balls are integrated slice by slice with an adaptive
// Gauss-Kronrod rule; everything else uses a certified dyadic grid whose
// undecided cells are reported as the error.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "morsecover/box.hpp"
#include "morsecover/intersect.hpp"
#include "morsecover/morse_set.hpp"
#include "morsecover/planar.hpp"

namespace morsecover {

template <int D>
struct Atom {
  Point<D> at{};
  double weight = 0.0;
};

// Density value + <slope, x> on a closed box.
template <int D>
struct DensityPiece {
  Box<D> box;
  double value = 0.0;
  Point<D> slope{};

  double at(const Point<D>& x) const { return value + dot<D>(slope, x); }
  bool constant() const { return slope == Point<D>{}; }
  // Integral over a sub-box (affine densities integrate to volume times the
  // value at the centre).
  double integral(const Box<D>& b) const {
    const Box<D> c = box.intersect(b);
    if (c.empty()) return 0.0;
    const double v = c.volume();
    return v > 0.0 ? v * at(c.center()) : 0.0;
  }
  double max_on(const Box<D>& b) const {
    double m = 0.0;
    for (unsigned k = 0; k < (1u << D); ++k) m = std::max(m, at(b.corner(k)));
    return m;
  }
};

struct Measured {
  double value = 0.0;
  double err = 0.0;
};

enum class Part { Whole, Interior };

template <int D>
class RadonMeasure {
 public:
  static RadonMeasure lebesgue(const Box<D>& b, double density = 1.0) {
    RadonMeasure m;
    m.add_density(b, density);
    return m;
  }
  static RadonMeasure dirac(const Point<D>& at, double weight = 1.0) {
    RadonMeasure m;
    m.add_atom(at, weight);
    return m;
  }

  RadonMeasure& add_atom(const Point<D>& at, double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight)) throw InputError("atom weight must be positive");
    if (!all_finite<D>(at)) throw InputError("atom location must be finite");
    atoms_.push_back({at, weight});
    return *this;
  }

  RadonMeasure& add_density(const Box<D>& b, double value, const Point<D>& slope = {}) {
    if (b.empty() || !all_finite<D>(b.lo) || !all_finite<D>(b.hi))
      throw InputError("density box must be finite and non-empty");
    DensityPiece<D> p{b, value, slope};
    for (unsigned k = 0; k < (1u << D); ++k)
      if (!(p.at(b.corner(k)) >= 0.0) || !std::isfinite(p.at(b.corner(k))))
        throw InputError("density must be finite and nonnegative on its box");
    if (b.volume() > 0.0) pieces_.push_back(p);
    return *this;
  }

  friend RadonMeasure operator+(RadonMeasure a, const RadonMeasure& b) {
    a.atoms_.insert(a.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
    a.pieces_.insert(a.pieces_.end(), b.pieces_.begin(), b.pieces_.end());
    return a;
  }

  RadonMeasure scaled(double c) const {
    if (!(c > 0.0)) throw InputError("measure scale must be positive");
    RadonMeasure m = *this;
    for (auto& a : m.atoms_) a.weight *= c;
    for (auto& p : m.pieces_) {
      p.value *= c;
      p.slope = c * p.slope;
    }
    return m;
  }

  const std::vector<Atom<D>>& atoms() const { return atoms_; }
  const std::vector<DensityPiece<D>>& pieces() const { return pieces_; }
  bool has_atoms() const { return !atoms_.empty(); }

  double density_at(const Point<D>& x) const {
    double d = 0.0;
    for (const auto& p : pieces_)
      if (p.box.contains(x)) d += p.at(x);
    return d;
  }

  double total_mass() const {
    CompensatedSum s;
    for (const auto& a : atoms_) s.add(a.weight);
    for (const auto& p : pieces_) s.add(p.integral(p.box));
    return s.value();
  }

  // Smallest box holding the support; nullopt for the zero measure.
  std::optional<Box<D>> support_box() const {
    std::optional<Box<D>> b;
    auto grow = [&](const Box<D>& x) { b = b ? b->hull(x) : x; };
    for (const auto& a : atoms_) grow({a.at, a.at});
    for (const auto& p : pieces_) grow(p.box);
    return b;
  }

  // Density part only, restricted to a box.
  RadonMeasure density_in(const Box<D>& b) const {
    RadonMeasure m;
    for (const auto& p : pieces_) {
      const Box<D> c = p.box.intersect(b);
      if (!c.empty() && c.volume() > 0.0) m.pieces_.push_back({c, p.value, p.slope});
    }
    return m;
  }

  double density_integral(const Box<D>& b) const {
    CompensatedSum s;
    for (const auto& p : pieces_) s.add(p.integral(b));
    return s.value();
  }

 private:
  std::vector<Atom<D>> atoms_;
  std::vector<DensityPiece<D>> pieces_;
};

// ---------------------------------------------------------------------------
// Cell classification for certified grids

enum class CellClass { Inside, Outside, Ambiguous };

template <int D>
CellClass classify_ball(const Space<D>& space, const std::type_identity_t<Point<D>>& c, double R, const Box<D>& cell) {
  if (space.dist(c, cell.clamp(c)) > R) return CellClass::Outside;
  for (unsigned k = 0; k < (1u << D); ++k)
    if (space.dist(c, cell.corner(k)) > R) return CellClass::Ambiguous;
  return CellClass::Inside;
}

template <int D>
CellClass classify_box(const Box<D>& b, const Box<D>& cell) {
  if (b.contains(cell)) return CellClass::Inside;
  const Box<D> x = b.intersect(cell);
  if (x.empty() || x.volume() == 0.0) return CellClass::Outside;
  return CellClass::Ambiguous;
}

// Classification of a cell against a Morse set (Lebesgue-null boundaries are
// ignored, so open/closed variants classify alike).
template <int D>
CellClass classify_set(const MorseSet<D>& s, const Box<D>& cell) {
  const auto& space = s.space();
  if (!s.bounding_box().overlaps(cell)) return CellClass::Outside;
  if (const auto f = detail::as_faced_box(s)) return classify_box(f->box, cell);
  if (const auto* b = std::get_if<Ball<D>>(&s.shape())) return classify_ball(space, b->center, b->radius, cell);
  const auto& p = std::get<StarPolytope<D>>(s.shape());
  const MorseSet<D> cl = s.closure();
  if constexpr (D == 2) {
    const auto v = s.vertices();
    bool crossing = false;
    for (const auto& x : v)
      if (cell.contains(x)) crossing = true;
    const Point<2> q[4] = {cell.corner(0), cell.corner(1), cell.corner(3), cell.corner(2)};
    for (std::size_t i = 0; i < v.size() && !crossing; ++i)
      for (int e = 0; e < 4 && !crossing; ++e)
        if (planar::segments_intersect(v[i], v[(i + 1) % v.size()], q[e], q[(e + 1) % 4], 0.0))
          crossing = true;
    if (crossing) return CellClass::Ambiguous;
    return cl.contains(cell.corner(0)) ? CellClass::Inside : CellClass::Outside;
  } else {
    bool all_in = true;
    for (unsigned k = 0; k < (1u << D); ++k)
      if (!cl.contains(cell.corner(k))) all_in = false;
    if (all_in) return CellClass::Inside;
    for (std::size_t h = 0; h < p.data->normals.size(); ++h) {
      bool all_out = true;
      for (unsigned k = 0; k < (1u << D) && all_out; ++k)
        if (dot<D>(p.data->normals[h], cell.corner(k) - s.tag()) <= p.scale * p.data->heights[h])
          all_out = false;
      if (all_out) return CellClass::Outside;
    }
    return CellClass::Ambiguous;
  }
}

inline CellClass combine_and(CellClass a, CellClass b) {
  if (a == CellClass::Outside || b == CellClass::Outside) return CellClass::Outside;
  if (a == CellClass::Inside && b == CellClass::Inside) return CellClass::Inside;
  return CellClass::Ambiguous;
}

inline constexpr std::size_t kGridCellBudget = 1u << 18;

// Integral of the density part over {cells classified Inside}, refining
// undecided cells dyadically until half their mass drops below
// max(1e-9, 1e-6 value) or the cell budget runs out. Undecided mass is split
// evenly between value and error.
template <int D, class Classify>
Measured certified_grid(const RadonMeasure<D>& mu, const Box<D>& domain, Classify&& cls,
                        std::size_t budget = kGridCellBudget) {
  CompensatedSum inside;
  std::vector<std::pair<Box<D>, const DensityPiece<D>*>> amb, next;
  for (const auto& p : mu.pieces()) {
    const Box<D> c = p.box.intersect(domain);
    if (c.empty() || c.volume() == 0.0) continue;
    amb.push_back({c, &p});
  }
  std::size_t used = amb.size();
  auto pending_mass = [&](const auto& cells) {
    double m = 0.0;
    for (const auto& [b, p] : cells) m += p->integral(b);
    return m;
  };
  std::vector<std::pair<Box<D>, const DensityPiece<D>*>> cur;
  // First pass classifies the starting cells themselves.
  for (auto& c : amb) {
    const CellClass k = cls(c.first);
    if (k == CellClass::Inside) inside.add(c.second->integral(c.first));
    else if (k == CellClass::Ambiguous) cur.push_back(c);
  }
  for (;;) {
    const double pend = pending_mass(cur);
    const double target = std::max(1e-9, 1e-6 * (inside.value() + 0.5 * pend));
    if (0.5 * pend <= target || cur.empty()) break;
    if (used + cur.size() * (1u << D) > budget) break;
    next.clear();
    for (const auto& [b, p] : cur) {
      const Point<D> mid = b.center();
      for (unsigned k = 0; k < (1u << D); ++k) {
        Box<D> child;
        for (int i = 0; i < D; ++i) {
          child.lo[i] = (k >> i) & 1u ? mid[i] : b.lo[i];
          child.hi[i] = (k >> i) & 1u ? b.hi[i] : mid[i];
        }
        ++used;
        const CellClass c = cls(child);
        if (c == CellClass::Inside) inside.add(p->integral(child));
        else if (c == CellClass::Ambiguous) next.push_back({child, p});
      }
    }
    cur.swap(next);
  }
  const double pend = pending_mass(cur);
  return {inside.value() + 0.5 * pend, 0.5 * pend};
}

// ---------------------------------------------------------------------------
// Exact / quadrature paths for single density pieces

namespace detail {

// Area and centroid of a simple polygon (zero area gives a zero centroid).
inline std::pair<double, Point<2>> area_centroid(const std::vector<Point<2>>& poly) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double c = planar::cross(p, q);
    a2 += c;
    cx += (p[0] + q[0]) * c;
    cy += (p[1] + q[1]) * c;
  }
  if (a2 == 0.0) return {0.0, {0.0, 0.0}};
  return {0.5 * a2, {cx / (3.0 * a2), cy / (3.0 * a2)}};
}

inline double polygon_piece_integral(const std::vector<Point<2>>& poly, const DensityPiece<2>& p) {
  const auto clipped = planar::clip_to_rect(poly, p.box.lo, p.box.hi);
  if (clipped.size() < 3) return 0.0;
  const auto [area, cen] = area_centroid(clipped);
  return std::abs(area) * p.at(cen);
}

// Area of the planar L1 disc {|x-c|_1 <= R} inside [lo,hi].
inline double diamond_rect_area(const Point<2>& c, double R, const Point<2>& lo, const Point<2>& hi) {
  if (R <= 0.0) return 0.0;
  const std::vector<Point<2>> d{{c[0] + R, c[1]}, {c[0], c[1] + R}, {c[0] - R, c[1]}, {c[0], c[1] - R}};
  const auto clipped = planar::clip_to_rect(d, lo, hi);
  return clipped.size() < 3 ? 0.0 : std::abs(planar::polygon_area(clipped));
}

// Integral of an affine density over {|x-c|_2 <= R} ∩ box in the plane:
// x = c0 + R sin t removes the square-root endpoints, each column is
// integrated in closed form, and breakpoints sit where the disc boundary
// crosses the horizontal box edges.
inline Measured disc_piece_integral(const Point<2>& c, double R, const DensityPiece<2>& p) {
  const double xa = std::max(p.box.lo[0], c[0] - R), xb = std::min(p.box.hi[0], c[0] + R);
  if (!(xb > xa) || !(R > 0.0)) return {};
  auto theta = [&](double x) { return std::asin(std::clamp((x - c[0]) / R, -1.0, 1.0)); };
  std::vector<double> cuts{theta(xa), theta(xb)};
  for (double y : {p.box.lo[1], p.box.hi[1]}) {
    const double dy = y - c[1];
    if (std::abs(dy) < R) {
      const double w = std::sqrt(R * R - dy * dy);
      for (double x : {c[0] - w, c[0] + w})
        if (x > xa && x < xb) cuts.push_back(theta(x));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  auto column = [&](double t) {
    const double x = c[0] + R * std::sin(t), h = R * std::cos(t);
    const double y0 = std::max(p.box.lo[1], c[1] - h), y1 = std::min(p.box.hi[1], c[1] + h);
    if (!(y1 > y0)) return 0.0;
    return (y1 - y0) * (p.value + p.slope[0] * x + p.slope[1] * 0.5 * (y0 + y1)) * R * std::cos(t);
  };
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double e = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(column, cuts[i], cuts[i + 1], 15, 1e-14, &e);
    err += e;
  }
  return {total, err};
}

// 3D L1/L2 ball inside a box with constant density: integrate exact planar
// slice areas over z with breakpoints at every kink of the slice profile.
inline Measured ball3_box(const Space<3>& space, const Point<3>& c, double R, const Box<3>& b) {
  const double z0 = std::max(b.lo[2], c[2] - R), z1 = std::min(b.hi[2], c[2] + R);
  if (!(z1 > z0)) return {0.0, 0.0};
  const Point<2> cc{c[0], c[1]}, lo{b.lo[0], b.lo[1]}, hi{b.hi[0], b.hi[1]};
  const bool l1 = space.kind() == NormKind::L1;
  auto slice_radius = [&](double z) {
    const double t = std::abs(z - c[2]);
    return l1 ? std::max(0.0, R - t) : std::sqrt(std::max(0.0, R * R - t * t));
  };
  auto area = [&](double z) {
    const double r = slice_radius(z);
    return l1 ? diamond_rect_area(cc, r, lo, hi) : planar::disc_rect_area(cc, r, lo, hi);
  };
  std::vector<double> cuts{z0, z1, c[2]};
  std::vector<double> dists{std::abs(c[0] - lo[0]), std::abs(c[0] - hi[0]), std::abs(c[1] - lo[1]),
                            std::abs(c[1] - hi[1])};
  for (double dx : {c[0] - lo[0], c[0] - hi[0]})
    for (double dy : {c[1] - lo[1], c[1] - hi[1]})
      dists.push_back(l1 ? std::abs(dx) + std::abs(dy) : std::hypot(dx, dy));
  for (double d : dists) {
    const double t = l1 ? R - d : std::sqrt(std::max(0.0, R * R - d * d));
    if (d < R) {
      cuts.push_back(c[2] - t);
      cuts.push_back(c[2] + t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], z0), bb = std::min(cuts[i + 1], z1);
    if (!(bb > a)) continue;
    double e = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(area, a, bb, 15, 1e-12, &e);
    err += e;
  }
  return {total, err};
}

}  // namespace detail

// Density part of μ on S for one piece.
template <int D>
Measured piece_measure(const DensityPiece<D>& p, const MorseSet<D>& s) {
  const Box<D> bb = s.bounding_box();
  if (!bb.overlaps(p.box)) return {};
  if (const auto f = detail::as_faced_box(s)) return {p.integral(f->box), 0.0};
  const auto& space = s.space();
  if (const auto* b = std::get_if<Ball<D>>(&s.shape())) {
    // Norm balls are centrally symmetric, so affine densities integrate to
    // volume times the value at the centre.
    if (p.box.contains(bb)) return {space.unit_ball_volume() * std::pow(b->radius, D) * p.at(b->center), 0.0};
    if constexpr (D == 2) {
      if (space.kind() == NormKind::L1) {
        const auto& c = b->center;
        const double R = b->radius;
        return {detail::polygon_piece_integral(
                    {{c[0] + R, c[1]}, {c[0], c[1] + R}, {c[0] - R, c[1]}, {c[0], c[1] - R}}, p),
                0.0};
      }
      if (p.constant()) return {p.value * planar::disc_rect_area(b->center, b->radius, p.box.lo, p.box.hi), 0.0};
      return detail::disc_piece_integral(b->center, b->radius, p);
    }
    if constexpr (D == 3) {
      if (p.constant()) {
        const auto m = detail::ball3_box(space, b->center, b->radius, p.box);
        return {p.value * m.value, p.value * m.err};
      }
    }
  }
  if constexpr (D == 2) {
    if (std::holds_alternative<StarPolytope<2>>(s.shape()))
      return {detail::polygon_piece_integral(s.vertices(), p), 0.0};
  }
  RadonMeasure<D> one;
  one.add_density(p.box, p.value, p.slope);
  return certified_grid(one, bb, [&](const Box<D>& cell) { return classify_set(s, cell); });
}

// μ(S) (Part::Whole) or μ(int S) (Part::Interior); atoms are counted by exact
// membership, so the two differ only by atoms on the boundary.
template <int D>
Measured measure_of(const RadonMeasure<D>& mu, const MorseSet<D>& s, Part part = Part::Whole) {
  CompensatedSum v;
  double err = 0.0;
  for (const auto& a : mu.atoms())
    if (part == Part::Whole ? s.contains(a.at) : s.interior_contains(a.at)) v.add(a.weight);
  for (const auto& p : mu.pieces()) {
    const Measured m = piece_measure(p, s);
    v.add(m.value);
    err += m.err;
  }
  return {v.value(), err};
}

// ---------------------------------------------------------------------------
// Regions

template <int D>
struct RegionPiece {
  bool is_ball = false;
  Box<D> box;          // the box, or the bounding box of the ball
  Point<D> center{};
  double radius = 0.0;
};

// (∪ plus) \ (∪ minus) ∪ points, or the whole space.
template <int D>
class Region {
 public:
  explicit Region(const Space<D>& space = Space<D>()) : space_(space) {}

  static Region box(const Box<D>& b, const Space<D>& space = Space<D>()) {
    Region r(space);
    r.add_box(b);
    return r;
  }
  static Region ball(const Space<D>& space, const Point<D>& c, double radius) {
    Region r(space);
    r.add_ball(c, radius);
    return r;
  }
  static Region whole(const Space<D>& space = Space<D>()) {
    Region r(space);
    r.whole_ = true;
    return r;
  }

  Region& add_box(const Box<D>& b, bool subtract = false) {
    if (b.empty() || !all_finite<D>(b.lo) || !all_finite<D>(b.hi)) throw InputError("region box must be finite and non-empty");
    (subtract ? minus_ : plus_).push_back({false, b, {}, 0.0});
    return *this;
  }
  Region& add_ball(const Point<D>& c, double radius, bool subtract = false) {
    if (!(radius > 0.0) || !all_finite<D>(c)) throw InputError("region ball radius must be positive");
    Point<D> half{};
    for (int i = 0; i < D; ++i) half[i] = radius * space_.coord_extent(i);
    (subtract ? minus_ : plus_).push_back({true, Box<D>::from_center(c, half), c, radius});
    return *this;
  }
  Region& add_point(const Point<D>& p) {
    points_.push_back(p);
    return *this;
  }

  const Space<D>& space() const { return space_; }
  bool whole_space() const { return whole_; }
  const std::vector<RegionPiece<D>>& plus() const { return plus_; }
  const std::vector<RegionPiece<D>>& minus() const { return minus_; }
  const std::vector<Point<D>>& points() const { return points_; }
  bool box_only() const {
    auto no_ball = [](const auto& v) { return std::none_of(v.begin(), v.end(), [](const auto& p) { return p.is_ball; }); };
    return no_ball(plus_) && no_ball(minus_);
  }

  bool contains(const Point<D>& x) const {
    for (const auto& p : points_)
      if (p == x) return true;
    if (whole_) {
      for (const auto& m : minus_)
        if (piece_contains(m, x)) return false;
      return true;
    }
    bool in = false;
    for (const auto& p : plus_)
      if (piece_contains(p, x)) {
        in = true;
        break;
      }
    if (!in) return false;
    for (const auto& m : minus_)
      if (piece_contains(m, x)) return false;
    return true;
  }

  // Lower bound on the distance from x to the complement (0 outside).
  double inner_distance(const Point<D>& x) const {
    if (!contains(x)) return 0.0;
    double d = whole_ ? std::numeric_limits<double>::infinity() : 0.0;
    for (const auto& p : plus_) {
      if (!piece_contains(p, x)) continue;
      double m;
      if (p.is_ball) {
        m = p.radius - space_.dist(x, p.center);
      } else {
        m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < D; ++i)
          m = std::min(m, std::min(x[i] - p.box.lo[i], p.box.hi[i] - x[i]) / space_.coord_extent(i));
      }
      d = std::max(d, m);
    }
    for (const auto& n : minus_) {
      const double m = n.is_ball ? space_.dist(x, n.center) - n.radius : space_.dist(x, n.box.clamp(x));
      d = std::min(d, m);
    }
    return std::max(0.0, d);
  }

  // Bounding box of the non-point part (nullopt when unbounded or empty).
  std::optional<Box<D>> bounding_box() const {
    if (whole_ || plus_.empty()) return std::nullopt;
    Box<D> b = plus_.front().box;
    for (const auto& p : plus_) b = b.hull(p.box);
    return b;
  }

  // Outer parallel body: every point within distance eta of the region.
  Region dilated(double eta) const {
    Region r(space_);
    r.whole_ = whole_;
    r.points_ = points_;
    for (const auto& p : plus_) {
      if (p.is_ball) r.add_ball(p.center, p.radius + eta);
      else {
        Box<D> b = p.box;
        for (int i = 0; i < D; ++i) {
          b.lo[i] -= eta * space_.coord_extent(i);
          b.hi[i] += eta * space_.coord_extent(i);
        }
        r.add_box(b);
      }
    }
    for (const auto& n : minus_) {
      if (n.is_ball) {
        if (n.radius > eta) r.add_ball(n.center, n.radius - eta, true);
      } else {
        Box<D> b = n.box;
        bool ok = true;
        for (int i = 0; i < D; ++i) {
          b.lo[i] += eta * space_.coord_extent(i);
          b.hi[i] -= eta * space_.coord_extent(i);
          if (!(b.lo[i] < b.hi[i])) ok = false;
        }
        if (ok) r.add_box(b, true);
      }
    }
    // Isolated points grow into small balls.
    for (const auto& p : points_) r.add_ball(p, eta);
    return r;
  }

  CellClass classify(const Box<D>& cell) const {
    for (const auto& n : minus_)
      if (classify_piece(n, cell) == CellClass::Inside) return CellClass::Outside;
    bool any_minus_touch = false;
    for (const auto& n : minus_)
      if (classify_piece(n, cell) != CellClass::Outside) any_minus_touch = true;
    if (whole_) return any_minus_touch ? CellClass::Ambiguous : CellClass::Inside;
    bool inside = false, touch = false;
    for (const auto& p : plus_) {
      const CellClass c = classify_piece(p, cell);
      if (c == CellClass::Inside) inside = true;
      if (c != CellClass::Outside) touch = true;
    }
    if (!touch) return CellClass::Outside;
    if (inside && !any_minus_touch) return CellClass::Inside;
    return CellClass::Ambiguous;
  }

 private:
  bool piece_contains(const RegionPiece<D>& p, const Point<D>& x) const {
    return p.is_ball ? space_.dist(x, p.center) <= p.radius : p.box.contains(x);
  }
  CellClass classify_piece(const RegionPiece<D>& p, const Box<D>& cell) const {
    return p.is_ball ? classify_ball(space_, p.center, p.radius, cell) : classify_box(p.box, cell);
  }

  Space<D> space_;
  std::vector<RegionPiece<D>> plus_, minus_;
  std::vector<Point<D>> points_;
  bool whole_ = false;
};

// Density part of μ restricted to a box-only region, as disjoint weighted
// boxes (coordinate compression); atoms inside the region are kept.
template <int D>
std::optional<RadonMeasure<D>> restrict_measure(const RadonMeasure<D>& mu, const Region<D>& omega) {
  if (!omega.box_only()) return std::nullopt;
  RadonMeasure<D> out;
  for (const auto& a : mu.atoms())
    if (omega.contains(a.at)) out.add_atom(a.at, a.weight);
  if (omega.whole_space() && omega.minus().empty()) {
    for (const auto& p : mu.pieces()) out.add_density(p.box, p.value, p.slope);
    return out;
  }
  for (const auto& p : mu.pieces()) {
    std::array<std::vector<double>, D> cuts;
    for (int i = 0; i < D; ++i) {
      cuts[i] = {p.box.lo[i], p.box.hi[i]};
      for (const auto* list : {&omega.plus(), &omega.minus()})
        for (const auto& q : *list)
          for (double v : {q.box.lo[i], q.box.hi[i]})
            if (v > p.box.lo[i] && v < p.box.hi[i]) cuts[i].push_back(v);
      std::sort(cuts[i].begin(), cuts[i].end());
      cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    }
    std::array<std::size_t, D> idx{};
    for (;;) {
      Box<D> cell;
      for (int i = 0; i < D; ++i) {
        cell.lo[i] = cuts[i][idx[i]];
        cell.hi[i] = cuts[i][idx[i] + 1];
      }
      if (omega.classify(cell) == CellClass::Inside) out.add_density(cell, p.value, p.slope);
      int i = D - 1;
      while (i >= 0 && idx[i] + 2 == cuts[i].size()) {
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++idx[i];
    }
  }
  return out;
}

namespace detail {

template <int D>
Measured density_on_piece(const RadonMeasure<D>& mu, const Space<D>& space, const RegionPiece<D>& p) {
  if (!p.is_ball) return {mu.density_integral(p.box), 0.0};
  return measure_of(mu.density_in(p.box), MorseSet<D>::closed_ball(space, p.center, p.radius));
}

// Density part of one plus piece minus holes with pairwise disjoint bounding
// boxes, by inclusion-exclusion; nullopt when two balls would have to meet.
template <int D>
std::optional<Measured> holes_measure(const RadonMeasure<D>& mu, const Region<D>& omega) {
  if (omega.whole_space() || omega.plus().size() != 1) return std::nullopt;
  const auto& P = omega.plus().front();
  const auto& minus = omega.minus();
  for (std::size_t i = 0; i < minus.size(); ++i) {
    if (P.is_ball && minus[i].is_ball && P.box.overlaps(minus[i].box)) return std::nullopt;
    for (std::size_t j = i + 1; j < minus.size(); ++j) {
      const Box<D> x = minus[i].box.intersect(minus[j].box).intersect(P.box);
      if (!x.empty() && x.volume() > 0.0) return std::nullopt;
    }
  }
  const auto& space = omega.space();
  Measured total = density_on_piece(mu, space, P);
  for (const auto& m : minus) {
    if (!m.box.overlaps(P.box)) continue;
    const auto& box_piece = P.is_ball ? m : P;
    const auto& other = P.is_ball ? P : m;
    const Measured cut = density_on_piece(mu.density_in(box_piece.box), space, other);
    total.value -= cut.value;
    total.err += cut.err;
  }
  total.value = std::max(0.0, total.value);
  return total;
}

}  // namespace detail

// μ(Ω).
template <int D>
Measured measure_of(const RadonMeasure<D>& mu, const Region<D>& omega) {
  if (auto r = restrict_measure(mu, omega)) return {r->total_mass(), 0.0};
  CompensatedSum v;
  for (const auto& a : mu.atoms())
    if (omega.contains(a.at)) v.add(a.weight);
  if (omega.plus().size() == 1 && omega.minus().empty() && !omega.whole_space()) {
    const auto& b = omega.plus().front();
    const auto ball = MorseSet<D>::closed_ball(omega.space(), b.center, b.radius);
    double err = 0.0;
    for (const auto& p : mu.pieces()) {
      const auto m = piece_measure(p, ball);
      v.add(m.value);
      err += m.err;
    }
    return {v.value(), err};
  }
  if (auto m = detail::holes_measure(mu, omega)) {
    v.add(m->value);
    return {v.value(), m->err};
  }
  const auto sb = mu.support_box();
  if (!sb) return {v.value(), 0.0};
  const Box<D> domain = omega.bounding_box() ? sb->intersect(*omega.bounding_box()) : *sb;
  if (domain.empty()) return {v.value(), 0.0};
  const auto g = certified_grid(mu, domain, [&](const Box<D>& c) { return omega.classify(c); });
  v.add(g.value);
  return {v.value(), g.err};
}

// μ(S ∩ Ω). `restricted` is restrict_measure(mu, omega) when available.
template <int D>
Measured measure_in(const RadonMeasure<D>& mu, const std::optional<RadonMeasure<D>>& restricted,
                    const MorseSet<D>& s, const Region<D>& omega, Part part = Part::Whole,
                    std::size_t budget = kGridCellBudget) {
  if (restricted) return measure_of(*restricted, s, part);
  if (omega.inner_distance(s.tag()) > s.outer_radius()) return measure_of(mu, s, part);
  CompensatedSum v;
  for (const auto& a : mu.atoms())
    if (omega.contains(a.at) && (part == Part::Whole ? s.contains(a.at) : s.interior_contains(a.at)))
      v.add(a.weight);
  if constexpr (D == 2) {
    if (std::holds_alternative<StarPolytope<2>>(s.shape()))
      throw UnsupportedError("star polygon intersected with a curved region is not supported");
  }
  const auto g = certified_grid(mu.density_in(s.bounding_box()), s.bounding_box(), [&](const Box<D>& c) {
    return combine_and(classify_set(s, c), omega.classify(c));
  }, budget);
  v.add(g.value);
  return {v.value(), g.err};
}

}  // namespace morsecover

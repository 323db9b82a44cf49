#pragma once

// Static SVG rendering of planar covers; one colour per family.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "morsecover/morse_set.hpp"

namespace morsecover {

// `palette_size` evenly spaced hues.
inline std::string family_color(std::size_t family, std::size_t palette_size) {
  const double hue = 360.0 * static_cast<double>(family) / static_cast<double>(std::max<std::size_t>(1, palette_size));
  std::ostringstream os;
  os << "hsl(" << fmt12(std::round(hue)) << ",70%,50%)";
  return os.str();
}

namespace detail {

inline std::vector<Point<2>> norm_ball_outline(const Space<2>& space, const Point<2>& c, double r) {
  std::vector<Point<2>> out;
  const double wx = r * space.coord_extent(0), wy = r * space.coord_extent(1);
  switch (space.kind()) {
    case NormKind::Linf:
    case NormKind::WeightedLinf:
      return {{c[0] - wx, c[1] - wy}, {c[0] + wx, c[1] - wy}, {c[0] + wx, c[1] + wy}, {c[0] - wx, c[1] + wy}};
    case NormKind::L1:
      return {{c[0] - wx, c[1]}, {c[0], c[1] - wy}, {c[0] + wx, c[1]}, {c[0], c[1] + wy}};
    case NormKind::L2:
      for (int k = 0; k < 96; ++k) {
        const double a = 2 * std::numbers::pi * k / 96;
        out.push_back({c[0] + r * std::cos(a), c[1] + r * std::sin(a)});
      }
      return out;
  }
  return out;
}

}  // namespace detail

// Planar outline of a set (vertices in order).
inline std::vector<Point<2>> outline(const MorseSet<2>& s) {
  if (const auto* b = std::get_if<Ball<2>>(&s.shape())) return detail::norm_ball_outline(s.space(), b->center, b->radius);
  if (std::holds_alternative<TaggedInterval<2>>(s.shape())) {
    const Box<2> b = s.bounding_box();
    return {{b.lo[0], b.lo[1]}, {b.hi[0], b.lo[1]}, {b.hi[0], b.hi[1]}, {b.lo[0], b.hi[1]}};
  }
  return s.vertices();
}

// `family[i]` colours set i; `palette` is the number of colours (≥ 1).
inline std::string render_svg(const std::vector<MorseSet<2>>& sets, const std::vector<std::size_t>& family,
                              std::size_t palette, double width_px = 800.0) {
  Box<2> bb{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
            {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const auto& s : sets) {
    const Box<2> b = s.bounding_box();
    for (int i = 0; i < 2; ++i) {
      bb.lo[i] = std::min(bb.lo[i], b.lo[i]);
      bb.hi[i] = std::max(bb.hi[i], b.hi[i]);
    }
  }
  if (sets.empty()) bb = Box<2>{{0.0, 0.0}, {1.0, 1.0}};
  const double w = std::max(bb.hi[0] - bb.lo[0], 1e-300), h = std::max(bb.hi[1] - bb.lo[1], 1e-300);
  const double scale = width_px / w;
  const double height_px = h * scale;
  auto X = [&](double x) { return fmt12((x - bb.lo[0]) * scale); };
  auto Y = [&](double y) { return fmt12((bb.hi[1] - y) * scale); };
  const double dot = std::max(0.5, 0.002 * width_px);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt12(width_px) << "\" height=\"" << fmt12(height_px)
     << "\" viewBox=\"0 0 " << fmt12(width_px) << ' ' << fmt12(height_px) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string col = family_color(i < family.size() ? family[i] : 0, palette);
    os << "<polygon data-family=\"" << (i < family.size() ? family[i] : 0) << "\" points=\"";
    bool first = true;
    for (const auto& p : outline(sets[i])) {
      os << (first ? "" : " ") << X(p[0]) << ',' << Y(p[1]);
      first = false;
    }
    os << "\" fill=\"" << col << "\" fill-opacity=\"0.35\" stroke=\"" << col << "\" stroke-width=\"0.5\"/>\n";
    os << "<circle cx=\"" << X(sets[i].tag()[0]) << "\" cy=\"" << Y(sets[i].tag()[1]) << "\" r=\"" << fmt12(dot)
       << "\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace morsecover

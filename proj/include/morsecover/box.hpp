#pragma once

#include <algorithm>

#include "morsecover/core.hpp"

namespace morsecover {

// Closed axis-aligned box [lo, hi].
template <int D>
struct Box {
  Point<D> lo{};
  Point<D> hi{};

  static Box from_center(const Point<D>& c, const Point<D>& half) { return {c - half, c + half}; }

  bool empty() const {
    for (int i = 0; i < D; ++i)
      if (!(lo[i] <= hi[i])) return true;
    return false;
  }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < D; ++i) v *= std::max(0.0, hi[i] - lo[i]);
    return v;
  }

  bool contains(const Point<D>& x) const {
    for (int i = 0; i < D; ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  bool contains(const Box& b) const {
    for (int i = 0; i < D; ++i)
      if (b.lo[i] < lo[i] || b.hi[i] > hi[i]) return false;
    return true;
  }

  // Closed boxes share a point.
  bool overlaps(const Box& b) const {
    for (int i = 0; i < D; ++i)
      if (b.lo[i] > hi[i] || b.hi[i] < lo[i]) return false;
    return true;
  }

  Box intersect(const Box& b) const {
    Box r;
    for (int i = 0; i < D; ++i) {
      r.lo[i] = std::max(lo[i], b.lo[i]);
      r.hi[i] = std::min(hi[i], b.hi[i]);
    }
    return r;
  }

  Box hull(const Box& b) const {
    Box r;
    for (int i = 0; i < D; ++i) {
      r.lo[i] = std::min(lo[i], b.lo[i]);
      r.hi[i] = std::max(hi[i], b.hi[i]);
    }
    return r;
  }

  Point<D> center() const { return 0.5 * (lo + hi); }

  Point<D> clamp(const Point<D>& x) const {
    Point<D> r{};
    for (int i = 0; i < D; ++i) r[i] = std::clamp(x[i], lo[i], hi[i]);
    return r;
  }

  double max_extent() const {
    double m = 0.0;
    for (int i = 0; i < D; ++i) m = std::max(m, hi[i] - lo[i]);
    return m;
  }

  // Corner selected by the low D bits of mask.
  Point<D> corner(unsigned mask) const {
    Point<D> r{};
    for (int i = 0; i < D; ++i) r[i] = (mask >> i) & 1u ? hi[i] : lo[i];
    return r;
  }

  friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

}  // namespace morsecover

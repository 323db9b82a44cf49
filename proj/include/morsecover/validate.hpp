#pragma once

#include <string>

#include "morsecover/morse_set.hpp"

namespace morsecover {

struct MorseReport {
  bool valid = true;
  double min_lambda = 1.0;
  std::string violation;      // empty when valid
  std::size_t samples = 0;    // starlikeness checks performed
  bool sampled = false;       // verdict relies on sampling
};

inline constexpr std::size_t kDefaultValidationSamples = 4096;

// Checks B(tag, r) ⊆ S ⊆ B(tag, λr) and starlikeness of S with respect to the
// kernel ball on a deterministic low-discrepancy sample.
template <int D>
MorseReport validate_morse(const MorseSet<D>& s, std::size_t samples = kDefaultValidationSamples) {
  if (samples == 0) throw InputError("validation needs a positive sample count");
  MorseReport rep;
  const double kernel = s.max_kernel_radius();
  const double outer = s.outer_radius();
  const double r = s.inner_radius();
  rep.min_lambda = kernel > 0.0 ? outer / kernel : std::numeric_limits<double>::infinity();
  rep.sampled = std::holds_alternative<StarPolytope<D>>(s.shape());

  if (kernel < r * (1.0 - 1e-9)) {
    rep.valid = false;
    rep.violation = "kernel ball B(tag, " + fmt12(r) + ") is not inside the set (largest is " +
                    fmt12(kernel) + ")";
    return rep;
  }
  if (outer > s.lambda() * r * (1.0 + 1e-9)) {
    rep.valid = false;
    rep.violation = "set reaches distance " + fmt12(outer) + " from its tag, beyond lambda*r = " +
                    fmt12(s.lambda() * r);
    return rep;
  }

  const MorseSet<D> cl = s.closure();
  const auto targets = cl.boundary_samples(std::max<std::size_t>(64, samples / 16));
  for (std::size_t k = 1; k <= samples; ++k) {
    const auto h = halton<(D + 2 <= 8 ? D + 2 : 8)>(k);
    Point<D> u{};
    for (int i = 0; i < D; ++i) u[i] = 2.0 * h[i] - 1.0;
    if (euclidean<D>(u) < 1e-12) continue;
    const Point<D> y = s.tag() + (r * h[D] * 0.999999) * s.space().normalize(u);
    const Point<D>& x = targets[k % targets.size()];
    const double alpha = h[D + 1 < 8 ? D + 1 : 0];
    const Point<D> p = alpha * y + (1.0 - alpha) * x;
    ++rep.samples;
    if (!cl.contains(p)) {
      rep.valid = false;
      rep.violation = "not starlike: a segment from the kernel ball leaves the set";
      return rep;
    }
  }
  return rep;
}

}  // namespace morsecover

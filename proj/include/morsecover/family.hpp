#pragma once

// Fine Morse covers as generators: a family produces, for any tag and any
// bound R > 0, a tagged Morse set S with λ r ≤ p R (hence S ⊆ B(tag, R)),
// where p ∈ (0,1] is the family's scale (S^(p) of a scaled cover).

#include <cmath>
#include <optional>
#include <string>

#include "morsecover/morse_set.hpp"
#include "morsecover/packing.hpp"

namespace morsecover {

enum class FamilyKind { Ball, OffsetBall, Interval, Prototype };

inline std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Ball: return "ball";
    case FamilyKind::OffsetBall: return "offset-ball";
    case FamilyKind::Interval: return "interval";
    case FamilyKind::Prototype: return "prototype";
  }
  return "?";
}

inline FamilyKind parse_family_kind(std::string_view s) {
  if (s == "ball") return FamilyKind::Ball;
  if (s == "offset-ball") return FamilyKind::OffsetBall;
  if (s == "interval") return FamilyKind::Interval;
  if (s == "prototype" || s == "star") return FamilyKind::Prototype;
  throw InputError("unknown family kind '" + std::string(s) + "'");
}

template <int D>
class MorseFamily {
 public:
  // Balls tagged at their centres.
  static MorseFamily balls(const Space<D>& space, double lambda = 1.0, bool open = false) {
    MorseFamily f(space, FamilyKind::Ball, lambda);
    f.open_ = open;
    return f;
  }

  // Balls whose tag sits at `offset` (in units of the radius) from the centre.
  static MorseFamily offset_balls(const Space<D>& space, const Point<D>& offset, double lambda) {
    const double w = space.norm(offset);
    if (!(w < 1.0)) throw InputError("ball tag offset must have norm < 1");
    MorseFamily f(space, FamilyKind::OffsetBall, lambda);
    f.offset_ = offset;
    f.proto_.emplace(MorseSet<D>::tagged_ball(space, -1.0 * offset, 1.0, zero_point<D>(), false, lambda));
    return f;
  }

  // Half-open intervals with edge proportions `edges` and tag fractions.
  static MorseFamily intervals(const Space<D>& space, const Point<D>& edges, const Point<D>& fraction,
                               double lambda, bool closed = false) {
    MorseFamily f(space, FamilyKind::Interval, lambda);
    Point<D> anchor{};
    for (int i = 0; i < D; ++i) anchor[i] = -edges[i] * fraction[i];
    f.proto_.emplace(MorseSet<D>::tagged_interval(space, anchor, edges, fraction, lambda, closed));
    return f;
  }

  // Homothetic copies of a prototype set, translated to each tag.
  static MorseFamily prototype(const MorseSet<D>& proto) {
    MorseFamily f(proto.space(), FamilyKind::Prototype, proto.lambda());
    f.proto_.emplace(proto.translated(-1.0 * proto.tag()));
    return f;
  }

  FamilyKind kind() const { return kind_; }
  const Space<D>& space() const { return space_; }
  double lambda() const { return lambda_; }
  double scale() const { return scale_; }
  bool centered_balls() const { return kind_ == FamilyKind::Ball && !open_; }
  const std::optional<MorseSet<D>>& prototype_set() const { return proto_; }

  // S^(p) family.
  MorseFamily with_scale(double p) const {
    if (!(p > 0.0 && p <= 1.0)) throw InputError("family scale must lie in (0,1]");
    MorseFamily f = *this;
    f.scale_ = p;
    return f;
  }

  // Set tagged at `tag` with λ r = p R.
  MorseSet<D> make(const Point<D>& tag, double R) const {
    if (!(R > 0.0) || !std::isfinite(R))
      throw ContractError("family cannot produce a set at " + describe_point(tag) + " with bound " + fmt12(R));
    const double target = scale_ * R;
    if (kind_ == FamilyKind::Ball)
      return MorseSet<D>::tagged_ball(space_, tag, target / lambda_, tag, open_, lambda_);
    const auto& p = *proto_;
    return p.rescaled(target / (lambda_ * p.inner_radius())).translated(tag);
  }

  // Unscaled member with λ r = R; a fine family has one at every size, so
  // S^(p) of a suitable member can always be made to fill a given bound.
  MorseSet<D> fit(const Point<D>& tag, double R) const { return with_scale(1.0).make(tag, R); }

  std::uint64_t kappa() const {
    return kappa_bound(space_, lambda_, centered_balls() ? KappaMode::Balls : KappaMode::Morse);
  }

  std::string describe() const {
    std::string s(to_string(kind_));
    s += " lambda=" + fmt12(lambda_) + " scale=" + fmt12(scale_);
    return s;
  }

  static std::string describe_point(const Point<D>& x) {
    std::string s = "(";
    for (int i = 0; i < D; ++i) s += (i ? ", " : "") + fmt12(x[i]);
    return s + ")";
  }

 private:
  MorseFamily(const Space<D>& space, FamilyKind kind, double lambda) : space_(space), kind_(kind), lambda_(lambda) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw InputError("lambda must be >= 1");
  }

  Space<D> space_;
  FamilyKind kind_;
  double lambda_ = 1.0;
  double scale_ = 1.0;
  bool open_ = false;
  Point<D> offset_{};
  std::optional<MorseSet<D>> proto_;
};

}  // namespace morsecover

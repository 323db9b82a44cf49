#pragma once

// JSON records for shapes, covers, certificates and reports. Reals are
// rounded to 12 significant digits so reports are stable across runs.

#include "json.hpp"
#include <string>
#include <vector>

#include "morsecover/covering.hpp"
#include "morsecover/exhaustion.hpp"
#include "morsecover/integrate.hpp"
#include "morsecover/packing.hpp"
#include "morsecover/pv.hpp"
#include "morsecover/validate.hpp"

namespace morsecover {

using Json = nlohmann::ordered_json;

inline Json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round12(v);
}

template <int D>
Json point_json(const Point<D>& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(num(v));
  return a;
}

template <int D>
Point<D> point_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(D))
    throw InputError(std::string(what) + " must be a list of " + std::to_string(D) + " numbers");
  Point<D> p{};
  for (int i = 0; i < D; ++i) {
    if (!j[i].is_number()) throw InputError(std::string(what) + " must hold numbers");
    p[i] = j[i].template get<double>();
  }
  return p;
}

inline Json space_json(NormKind k) { return std::string(to_string(k)); }

// {kind, tag, r, lambda, payload}
template <int D>
Json shape_json(const MorseSet<D>& s) {
  Json j;
  Json payload;
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Ball<D>>) {
          j["kind"] = "ball";
          payload["center"] = point_json<D>(sh.center);
          payload["radius"] = num(sh.radius);
          payload["open"] = sh.open;
        } else if constexpr (std::is_same_v<T, TaggedInterval<D>>) {
          j["kind"] = "interval";
          payload["anchor"] = point_json<D>(sh.anchor);
          payload["edges"] = point_json<D>(sh.edges);
          payload["fraction"] = point_json<D>(sh.fraction);
          payload["closed"] = sh.closed;
        } else {
          j["kind"] = D == 2 ? "star_polygon" : "polytope";
          Json v = Json::array();
          for (const auto& p : s.vertices()) v.push_back(point_json<D>(p));
          payload["vertices"] = std::move(v);
          if constexpr (D >= 3) {
            Json n = Json::array(), h = Json::array();
            for (std::size_t k = 0; k < sh.data->normals.size(); ++k) {
              n.push_back(point_json<D>(sh.data->normals[k]));
              h.push_back(num(sh.scale * sh.data->heights[k]));
            }
            payload["normals"] = std::move(n);
            payload["heights"] = std::move(h);
          }
          payload["open"] = sh.open;
        }
      },
      s.shape());
  j["tag"] = point_json<D>(s.tag());
  j["r"] = num(s.inner_radius());
  j["lambda"] = num(s.lambda());
  j["payload"] = std::move(payload);
  return j;
}

template <int D>
MorseSet<D> shape_from_json(const Space<D>& space, const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("shape record needs a kind");
  const std::string kind = j["kind"].template get<std::string>();
  const Json& p = j.contains("payload") ? j["payload"] : j;
  const double lambda = j.value("lambda", 1.0);
  auto need = [&](const char* key) -> const Json& {
    if (!p.contains(key)) throw InputError(kind + " record needs '" + key + "'");
    return p[key];
  };
  auto vertices = [&] {
    std::vector<Point<D>> v;
    for (const auto& e : need("vertices")) v.push_back(point_from_json<D>(e, "vertex"));
    return v;
  };
  if (kind == "ball") {
    const Point<D> c = point_from_json<D>(need("center"), "center");
    const Point<D> tag = j.contains("tag") ? point_from_json<D>(j["tag"], "tag") : c;
    return MorseSet<D>::tagged_ball(space, c, need("radius").template get<double>(), tag, p.value("open", false), lambda);
  }
  if (kind == "interval")
    return MorseSet<D>::tagged_interval(space, point_from_json<D>(need("anchor"), "anchor"),
                                        point_from_json<D>(need("edges"), "edges"),
                                        point_from_json<D>(need("fraction"), "fraction"), lambda,
                                        p.value("closed", false));
  if (!j.contains("tag") || !j.contains("r")) throw InputError(kind + " record needs tag and r");
  const Point<D> tag = point_from_json<D>(j["tag"], "tag");
  const double r = j["r"].template get<double>();
  if (kind == "star_polygon") {
    if constexpr (D == 2) return MorseSet<D>::star_polygon(space, tag, r, vertices(), lambda);
    throw InputError("star polygons need dimension 2");
  }
  if (kind == "polytope") {
    if constexpr (D >= 3) {
      std::vector<Point<D>> normals;
      std::vector<double> heights;
      for (const auto& e : need("normals")) normals.push_back(point_from_json<D>(e, "normal"));
      for (const auto& e : need("heights")) heights.push_back(e.template get<double>());
      return MorseSet<D>::convex_polytope(space, tag, r, vertices(), normals, heights, lambda);
    }
    throw InputError("polytopes need dimension >= 3");
  }
  throw InputError("unknown shape kind '" + kind + "'");
}

template <int D>
Json cover_json(const AeCover<D>& c, bool listing) {
  Json j;
  j["count"] = c.count;
  j["rounds"] = c.rounds;
  j["kappa"] = c.kappa;
  j["decay_factor"] = num(c.decay_factor());
  j["omega_mass"] = num(c.omega_mass);
  j["covered"] = num(c.covered);
  j["residual"] = num(c.residual);
  j["tol"] = num(c.tol);
  j["eps"] = num(c.eps);
  j["excess"] = num(c.excess);
  j["excess_bound"] = num(c.excess_bound);
  j["dropped"] = num(c.dropped);
  j["converged"] = c.converged;
  Json h = Json::array();
  for (double v : c.residual_history) h.push_back(num(v));
  j["residual_history"] = std::move(h);
  j["round_counts"] = c.round_counts;
  if (listing) {
    Json sets = Json::array();
    for (std::size_t i = 0; i < c.sequence.size(); ++i) {
      Json s = shape_json(c.sequence[i]);
      if (i < c.masses.size()) s["mass"] = num(c.masses[i]);
      sets.push_back(std::move(s));
    }
    j["sets"] = std::move(sets);
  }
  return j;
}

template <int D>
Json certificate_json(const IntegralCertificate<D>& c) {
  Json j;
  j["integrand"] = c.integrand;
  j["family"] = c.family;
  j["gauge"] = std::string(to_string(c.gauge));
  j["seed"] = c.seed;
  j["value"] = num(c.value);
  j["eps"] = num(c.eps);
  j["error_bound"] = num(c.error_bound());
  j["sum"] = num(c.sum);
  j["abs_sum"] = num(c.abs_sum);
  j["sum_plus"] = num(c.sum_plus);
  j["sum_minus"] = num(c.sum_minus);
  j["sup_tag_abs"] = num(c.sup_tag_abs);
  j["rounds"] = c.rounds;
  j["count"] = c.count;
  j["omega_mass"] = num(c.omega_mass);
  j["covered"] = num(c.covered);
  j["residual"] = num(c.residual);
  j["tol"] = num(c.tol);
  j["excess"] = num(c.excess);
  j["excess_bound"] = num(c.excess_bound);
  j["converged"] = c.converged;
  j["diagnostic"] = c.diagnostic;
  Json cover = cover_json(c.cover, false);
  if (c.listing_complete) {
    Json sets = Json::array();
    for (std::size_t i = 0; i < c.cover.sequence.size(); ++i) {
      Json s = shape_json(c.cover.sequence[i]);
      s["mass"] = num(c.cover.masses[i]);
      s["f"] = num(c.tag_values[i]);
      sets.push_back(std::move(s));
    }
    cover["sets"] = std::move(sets);
  } else {
    cover["sets"] = nullptr;
    cover["note"] = "listing omitted; the cover is reproducible from the seed";
  }
  j["cover"] = std::move(cover);
  return j;
}

inline Json pv_rows_json(const std::vector<PvRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["n_balls"] = r.n_balls;
    j["central_radius"] = num(r.central_radius);
    j["sum"] = num(r.sum);
    j["abs_sum"] = num(r.abs_sum);
    j["outside_length"] = num(r.outside_length);
    j["central_mass"] = num(r.central_mass);
    a.push_back(std::move(j));
  }
  return a;
}

template <int D>
Json packing_json(const PackingResult<D>& r, bool verified) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["container_radius"] = num(r.witness.container_radius);
  j["min_distance"] = num(r.witness.min_pairwise_distance);
  j["anchored"] = r.witness.anchored;
  j["surface_only"] = r.witness.surface_only;
  j["witness_verified"] = verified;
  Json pts = Json::array();
  for (const auto& p : r.witness.points) pts.push_back(point_json<D>(p));
  j["witness"] = std::move(pts);
  return j;
}

inline Json partition_json(const Partition& p) {
  Json j;
  j["kappa"] = p.kappa;
  j["families"] = p.families.size();
  j["selection_order"] = p.selection_order;
  j["partition"] = p.families;
  return j;
}

inline Json morse_report_json(const MorseReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["min_lambda"] = num(r.min_lambda);
  j["samples"] = r.samples;
  j["sampled"] = r.sampled;
  if (!r.valid) j["violation"] = r.violation;
  return j;
}

}  // namespace morsecover

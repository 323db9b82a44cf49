#pragma once

// YAML run configuration. Every error names the file and line of the
// offending node.

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <optional>
#include <string>

#include "morsecover/morsecover.hpp"

namespace morsecover::cli {

// Input error already carrying a file:line prefix.
struct LocatedError : InputError {
  using InputError::InputError;
};

class ConfigFile {
 public:
  ConfigFile() : root_(YAML::NodeType::Map) {}

  static ConfigFile load(const std::string& path) {
    ConfigFile c;
    c.path_ = path;
    if (!std::filesystem::exists(path)) throw InputError(path + ": no such file");
    try {
      c.root_ = YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
      throw InputError(path + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (c.root_.IsNull()) c.root_ = YAML::Node(YAML::NodeType::Map);
    if (!c.root_.IsMap()) throw c.error(c.root_, "configuration must be a key: value mapping");
    return c;
  }

  const YAML::Node& root() const { return root_; }
  const std::string& path() const { return path_; }

  LocatedError error(const YAML::Node& n, const std::string& msg) const {
    const std::string where = path_.empty() ? "config" : path_;
    if (n.IsDefined() && n.Mark().line >= 0) return LocatedError(where + ":" + std::to_string(n.Mark().line + 1) + ": " + msg);
    return LocatedError(where + ": " + msg);
  }

  // Node at `key` of a map, undefined when absent.
  YAML::Node at(const YAML::Node& map, const std::string& key) const {
    if (!map.IsDefined() || map.IsNull()) return YAML::Node();
    if (!map.IsMap()) throw error(map, "expected a mapping");
    return map[key];
  }

  bool has(const YAML::Node& map, const std::string& key) const {
    const YAML::Node n = at(map, key);
    return n.IsDefined() && !n.IsNull();
  }

  double number(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) throw error(n, what + " must be a number");
    const std::string s = n.Scalar();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      if (s == "inf" || s == ".inf") return std::numeric_limits<double>::infinity();
      throw error(n, what + " must be a number, got '" + s + "'");
    }
  }

  double number(const YAML::Node& map, const std::string& key, double def) const {
    const YAML::Node n = at(map, key);
    return n.IsDefined() && !n.IsNull() ? number(n, key) : def;
  }

  long integer(const YAML::Node& map, const std::string& key, long def) const {
    const YAML::Node n = at(map, key);
    if (!n.IsDefined() || n.IsNull()) return def;
    const double v = number(n, key);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw error(n, key + " must be an integer");
    return static_cast<long>(v);
  }

  std::string text(const YAML::Node& map, const std::string& key, const std::string& def) const {
    const YAML::Node n = at(map, key);
    if (!n.IsDefined() || n.IsNull()) return def;
    if (!n.IsScalar()) throw error(n, key + " must be a string");
    return n.Scalar();
  }

  bool flag(const YAML::Node& map, const std::string& key, bool def) const {
    const YAML::Node n = at(map, key);
    if (!n.IsDefined() || n.IsNull()) return def;
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      throw error(n, key + " must be true or false");
    }
  }

  template <int D>
  Point<D> point(const YAML::Node& n, const std::string& what) const {
    if (D == 1 && n.IsScalar()) return Point<D>{number(n, what)};
    if (!n.IsSequence() || n.size() != static_cast<std::size_t>(D))
      throw error(n, what + " must be a list of " + std::to_string(D) + " numbers");
    Point<D> p{};
    for (int i = 0; i < D; ++i) p[i] = number(n[i], what);
    return p;
  }

  template <int D>
  Point<D> point_at(const YAML::Node& map, const std::string& key) const {
    const YAML::Node n = at(map, key);
    if (!n.IsDefined() || n.IsNull()) throw error(map, "missing '" + key + "'");
    return point<D>(n, key);
  }

  // A nested section given inline or as a path to another YAML file.
  std::pair<YAML::Node, ConfigFile> section(const std::string& key) const {
    const YAML::Node n = at(root_, key);
    if (n.IsScalar()) {
      std::filesystem::path p(n.Scalar());
      if (p.is_relative() && !path_.empty()) p = std::filesystem::path(path_).parent_path() / p;
      ConfigFile sub = load(p.string());
      return {sub.root(), sub};
    }
    return {n, *this};
  }

  // YAML subtree as JSON, scalars typed by content.
  Json to_json(const YAML::Node& n) const {
    if (n.IsSequence()) {
      Json a = Json::array();
      for (const auto& e : n) a.push_back(to_json(e));
      return a;
    }
    if (n.IsMap()) {
      Json o = Json::object();
      for (const auto& kv : n) o[kv.first.Scalar()] = to_json(kv.second);
      return o;
    }
    if (n.IsNull() || !n.IsDefined()) return nullptr;
    const std::string s = n.Scalar();
    if (s == "true") return true;
    if (s == "false") return false;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return s;
  }

 private:
  YAML::Node root_;
  std::string path_;
};

template <int D>
Space<D> make_space(const ConfigFile& cfg, const std::string& norm_flag) {
  const auto& r = cfg.root();
  const std::string norm = !norm_flag.empty() ? norm_flag : cfg.text(r, "norm", "L2");
  NormKind kind;
  try {
    kind = parse_norm(norm);
  } catch (const InputError& e) {
    throw cfg.error(cfg.at(r, "norm"), e.what());
  }
  if (kind == NormKind::WeightedLinf) return Space<D>(kind, cfg.point_at<D>(r, "weights"));
  return Space<D>(kind);
}

template <int D>
Box<D> read_box(const ConfigFile& cfg, const YAML::Node& n) {
  Box<D> b{cfg.point_at<D>(n, "lo"), cfg.point_at<D>(n, "hi")};
  for (int i = 0; i < D; ++i)
    if (!(b.lo[i] <= b.hi[i])) throw cfg.error(n, "box needs lo <= hi in every coordinate");
  return b;
}

// atoms: [{at, weight}], densities: [{lo, hi, value, slope}]
template <int D>
std::optional<RadonMeasure<D>> read_measure(const ConfigFile& cfg) {
  if (!cfg.has(cfg.root(), "measure")) return std::nullopt;
  const auto [n, file] = cfg.section("measure");
  if (!n.IsMap()) throw file.error(n, "measure must list atoms and densities");
  RadonMeasure<D> mu;
  for (const auto& key : {"atoms", "densities"})
    if (file.has(n, key) && !n[key].IsSequence()) throw file.error(n[key], std::string(key) + " must be a list");
  if (file.has(n, "atoms"))
    for (const auto& a : n["atoms"]) {
      const double w = file.number(a, "weight", 1.0);
      if (!(w > 0.0)) throw file.error(a, "atom weight must be positive");
      mu.add_atom(file.point_at<D>(a, "at"), w);
    }
  if (file.has(n, "densities"))
    for (const auto& d : n["densities"]) {
      try {
        const Point<D> slope = file.has(d, "slope") ? file.point_at<D>(d, "slope") : Point<D>{};
        mu.add_density(read_box<D>(file, d), file.number(d, "value", 1.0), slope);
      } catch (const LocatedError&) {
        throw;
      } catch (const InputError& e) {
        throw file.error(d, e.what());
      }
    }
  return mu;
}

// boxes: [{lo, hi, subtract}], balls: [{center, radius, subtract}], points: [..], whole: bool
template <int D>
std::optional<Region<D>> read_region(const ConfigFile& cfg, const Space<D>& space) {
  if (!cfg.has(cfg.root(), "region")) return std::nullopt;
  const auto [n, file] = cfg.section("region");
  if (!n.IsMap()) throw file.error(n, "region must list boxes, balls or points");
  if (file.flag(n, "whole", false)) return Region<D>::whole(space);
  Region<D> omega(space);
  if (file.has(n, "boxes"))
    for (const auto& b : n["boxes"]) omega.add_box(read_box<D>(file, b), file.flag(b, "subtract", false));
  if (file.has(n, "balls"))
    for (const auto& b : n["balls"]) {
      const double r = file.number(b, "radius", 0.0);
      if (!(r > 0.0)) throw file.error(b, "ball radius must be positive");
      omega.add_ball(file.point_at<D>(b, "center"), r, file.flag(b, "subtract", false));
    }
  if (file.has(n, "points"))
    for (const auto& p : n["points"]) omega.add_point(file.point<D>(p, "point"));
  if (omega.plus().empty() && omega.points().empty()) throw file.error(n, "region is empty");
  return omega;
}

// family: {kind: ball|offset_ball|interval, lambda, scale, open, offset, edges, fraction}
template <int D>
MorseFamily<D> read_family(const ConfigFile& cfg, const Space<D>& space, std::optional<double> lambda_flag) {
  const YAML::Node n = cfg.at(cfg.root(), "family");
  const std::string kind = cfg.text(n, "kind", "ball");
  const double lambda = lambda_flag ? *lambda_flag : cfg.number(n, "lambda", kind == "ball" ? 1.0 : 3.0);
  try {
    MorseFamily<D> f = [&] {
      if (kind == "ball") return MorseFamily<D>::balls(space, lambda, cfg.flag(n, "open", false));
      if (kind == "offset_ball") return MorseFamily<D>::offset_balls(space, cfg.point_at<D>(n, "offset"), lambda);
      if (kind == "interval") {
        Point<D> edges, fraction;
        edges.fill(1.0);
        fraction.fill(0.5);
        if (cfg.has(n, "edges")) edges = cfg.point_at<D>(n, "edges");
        if (cfg.has(n, "fraction")) fraction = cfg.point_at<D>(n, "fraction");
        return MorseFamily<D>::intervals(space, edges, fraction, lambda, cfg.flag(n, "closed", false));
      }
      throw InputError("unknown family kind '" + kind + "'");
    }();
    const double scale = cfg.number(n, "scale", 1.0);
    return scale == 1.0 ? f : f.with_scale(scale);
  } catch (const LocatedError&) {
    throw;
  } catch (const InputError& e) {
    throw cfg.error(n.IsDefined() ? n : cfg.root(), e.what());
  }
}

template <int D>
std::vector<MorseSet<D>> read_sets(const ConfigFile& cfg, const YAML::Node& list, const Space<D>& space) {
  if (!list.IsSequence()) throw cfg.error(list, "sets must be a list of shape records");
  std::vector<MorseSet<D>> out;
  for (const auto& s : list) {
    try {
      out.push_back(shape_from_json<D>(space, cfg.to_json(s)));
    } catch (const LocatedError&) {
      throw;
    } catch (const InputError& e) {
      throw cfg.error(s, e.what());
    } catch (const Json::exception& e) {
      throw cfg.error(s, std::string("malformed shape record: ") + e.what());
    }
  }
  return out;
}

}  // namespace morsecover::cli

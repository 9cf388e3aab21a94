#pragma once

// JSON file formats. Rationals are written as "p/q" strings; on input a
// coordinate may be a "p/q" or decimal string, or a plain JSON number.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "primend/circular_order.hpp"
#include "primend/grid_domain.hpp"
#include "primend/polygon_domain.hpp"
#include "primend/prime_ends.hpp"

namespace primend::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Serializes with sorted keys, no whitespace, and floats as %.12g.
inline void write_canonical(std::ostream& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      out << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out << ',';
        first = false;
        out << json(k).dump() << ':';
        write_canonical(out, v);
      }
      out << '}';
      break;
    }
    case json::value_t::array: {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',';
        write_canonical(out, j[i]);
      }
      out << ']';
      break;
    }
    case json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", d == 0.0 ? 0.0 : d);
      out << buf;
      break;
    }
    default:
      out << j.dump();
  }
}

inline std::string canonical(const json& j) {
  std::ostringstream s;
  write_canonical(s, j);
  return s.str();
}

// ---- scalars ----

inline bool is_exact_value(const json& j) { return j.is_string() || j.is_number_integer() || j.is_number_unsigned(); }

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(j.get<long>());
  if (j.is_number_float()) return to_rational(j.get<double>());
  throw Error(ErrorCode::ParseError, "expected a number or \"p/q\" string, got " + j.dump());
}

inline double double_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

inline json rational_json(const Rational& r) { return to_string(r); }

inline Vec2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "expected [x, y], got " + j.dump());
  return {double_from(j[0]), double_from(j[1])};
}

inline json point_json(Vec2 p) { return json::array({p.x, p.y}); }

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---- circle maps ----

/// A map file is exact when every coordinate is a string or an integer.
using AnyMap = std::variant<PLMap, ExactPLMap>;

inline AnyMap map_from_json(const json& j) {
  const int degree = member(j, "degree").get<int>();
  const json& bps = member(j, "breakpoints");
  if (!bps.is_array()) throw Error(ErrorCode::ParseError, "breakpoints must be an array");
  bool exact = true;
  for (const auto& bp : bps) {
    if (!bp.is_array() || bp.size() != 2) throw Error(ErrorCode::ParseError, "breakpoint must be [x, y]");
    exact = exact && is_exact_value(bp[0]) && is_exact_value(bp[1]);
  }
  if (exact) {
    std::vector<Breakpoint<Rational>> pts;
    for (const auto& bp : bps) pts.push_back({rational_from(bp[0]), rational_from(bp[1])});
    return ExactPLMap::make(std::move(pts), degree);
  }
  std::vector<Breakpoint<double>> pts;
  for (const auto& bp : bps) pts.push_back({double_from(bp[0]), double_from(bp[1])});
  return PLMap::make(std::move(pts), degree);
}

inline json map_json(const ExactPLMap& m) {
  json bps = json::array();
  for (const auto& bp : m.breakpoints()) bps.push_back({rational_json(bp.x), rational_json(bp.y)});
  return {{"degree", m.degree()}, {"breakpoints", bps}};
}

inline json map_json(const PLMap& m) {
  json bps = json::array();
  for (const auto& bp : m.breakpoints()) bps.push_back({bp.x, bp.y});
  return {{"degree", m.degree()}, {"breakpoints", bps}};
}

// ---- arc families and bijections ----

inline ExactArcFamily family_from_json(const json& j) {
  const json& arcs = member(j, "arcs");
  if (!arcs.is_array()) throw Error(ErrorCode::ParseError, "arcs must be an array");
  std::vector<ExactArc> out;
  for (const auto& a : arcs) {
    const std::string kind = a.value("kind", std::string("interval"));
    const std::string label = a.value("label", std::string("J") + std::to_string(out.size() + 1));
    if (kind == "point") {
      const json& at = a.contains("at") ? a.at("at") : member(a, "a");
      out.push_back(ExactArc::point(rational_from(at), label));
    } else if (kind == "interval") {
      out.push_back(ExactArc::interval(rational_from(member(a, "a")), rational_from(member(a, "b")), label));
    } else {
      throw Error(ErrorCode::ParseError, "unknown arc kind '" + kind + "'");
    }
  }
  return ExactArcFamily::make(std::move(out));
}

inline json family_json(const ExactArcFamily& f) {
  json arcs = json::array();
  for (const auto& a : f.arcs()) {
    if (a.trivial())
      arcs.push_back({{"kind", "point"}, {"a", rational_json(a.a)}, {"label", a.label}});
    else
      arcs.push_back({{"kind", "interval"}, {"a", rational_json(a.a)}, {"b", rational_json(a.b)}, {"label", a.label}});
  }
  return {{"arcs", arcs}};
}

inline std::map<std::string, std::string> label_map_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "bijection must be an object of label pairs");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorCode::ParseError, "bijection target for '" + k + "' is not a label");
    out[k] = v.get<std::string>();
  }
  return out;
}

// ---- domains ----

inline PolygonalDomain domain_from_json(const json& j) {
  std::vector<Vec2> outer;
  for (const auto& p : member(j, "outer")) outer.push_back(point_from(p));
  std::vector<Slit> slits;
  if (j.contains("slits")) {
    for (const auto& s : j.at("slits")) {
      Slit slit;
      slit.attach_index = member(s, "attach_index").get<std::size_t>();
      for (const auto& p : member(s, "points")) slit.points.push_back(point_from(p));
      slits.push_back(std::move(slit));
    }
  }
  return PolygonalDomain(std::move(outer), std::move(slits));
}

inline json domain_json(const PolygonalDomain& d) {
  json outer = json::array();
  for (Vec2 p : d.outer()) outer.push_back(point_json(p));
  json slits = json::array();
  for (const auto& s : d.slits()) {
    json pts = json::array();
    for (Vec2 p : s.points) pts.push_back(point_json(p));
    slits.push_back({{"attach_index", s.attach_index}, {"points", pts}});
  }
  return {{"outer", outer}, {"slits", slits}};
}

inline bool is_grid_json(const json& j) { return j.is_object() && j.contains("rows"); }

inline GridDomain grid_from_json(const json& j) {
  const double cs = j.contains("cell_size") ? double_from(j.at("cell_size")) : 1.0;
  Vec2 origin{0, 0};
  if (j.contains("origin")) origin = point_from(j.at("origin"));
  return GridDomain::make(cs, member(j, "rows").get<std::vector<std::string>>(), origin);
}

// ---- automorphisms ----

/// {"kind":"rotation","center":[x,y],"degrees":90},
/// {"kind":"reflection","point":[x,y],"direction":[dx,dy]},
/// {"kind":"vertex_map","map":[...]} or {"kind":"identity"}.
inline DomainAutomorphism automorphism_from_json(const json& j) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "identity") return DomainAutomorphism::identity();
  if (kind == "rotation")
    return DomainAutomorphism::rotation(j.contains("center") ? point_from(j.at("center")) : Vec2{0, 0},
                                        double_from(member(j, "degrees")));
  if (kind == "reflection")
    return DomainAutomorphism::reflection(j.contains("point") ? point_from(j.at("point")) : Vec2{0, 0},
                                          point_from(member(j, "direction")));
  if (kind == "vertex_map") return DomainAutomorphism::vertex_map(member(j, "map").get<std::vector<std::size_t>>());
  throw Error(ErrorCode::ParseError, "unknown automorphism kind '" + kind + "'");
}

}  // namespace primend::io

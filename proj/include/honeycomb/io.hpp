#pragma once

// JSON forms of grids, cocirculations, edge sets, honeycombs and traces.
// Rationals travel as reduced "p/q" strings. Readers accept either the bare
// object or a bundle holding it under "grid", "cocirculation", "fixed" or
// "honeycomb".

#include "honeycomb/errors.hpp"
#include "honeycomb/grid.hpp"
#include "honeycomb/honeycomb.hpp"
#include "honeycomb/integralizer.hpp"
#include "honeycomb/legal_path.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace honeycomb::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorKind::Malformed, what); }

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::int64_t integer(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer()) malformed(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

inline Q rational(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_string()) malformed(std::string("\"") + key + "\" must be a \"p/q\" string");
  auto q = parse_rational(v.get<std::string>());
  if (!q) malformed("bad rational \"" + v.get<std::string>() + "\"");
  return *q;
}

inline const Json& array_of(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_array()) malformed(std::string("\"") + key + "\" must be an array");
  return v;
}

inline const Json& unwrap(const Json& j, const char* bundle_key, const char* own_key) {
  if (j.is_object() && j.contains(bundle_key) && !j.contains(own_key)) return j.at(bundle_key);
  return j;
}

inline int direction(const Json& j, const char* key) {
  auto d = integer(j, key);
  if (d < 1 || d > 3) malformed(std::string("\"") + key + "\" must be 1, 2 or 3");
  return static_cast<int>(d);
}

inline GridEdge edge(const Json& j) { return GridEdge{{integer(j, "a"), integer(j, "b")}, direction(j, "dir")}; }

}  // namespace detail

inline Json to_json(const ConvexGrid& g) {
  Json tris = Json::array();
  for (const auto& t : g.triangles()) tris.push_back({{"up", t.up}, {"a", t.base.a}, {"b", t.base.b}});
  return {{"triangles", tris}};
}

/// Parses and validates the grid shape.
inline ConvexGrid grid_from_json(const Json& j0) {
  const auto& j = detail::unwrap(j0, "grid", "triangles");
  std::vector<Triangle> tris;
  for (const auto& t : detail::array_of(j, "triangles")) {
    const auto& up = detail::member(t, "up");
    if (!up.is_boolean()) detail::malformed("\"up\" must be a boolean");
    tris.push_back(Triangle{up.get<bool>(), {detail::integer(t, "a"), detail::integer(t, "b")}});
  }
  ConvexGrid g(std::move(tris));
  validate_grid(g);
  return g;
}

inline Json to_json(const Cocirculation& h) {
  Json es = Json::array();
  for (const auto& [e, v] : h.values())
    es.push_back({{"a", e.tail.a}, {"b", e.tail.b}, {"dir", e.dir}, {"value", to_string(v)}});
  return {{"edges", es}};
}

inline Cocirculation cocirculation_from_json(const Json& j0) {
  const auto& j = detail::unwrap(j0, "cocirculation", "edges");
  Cocirculation h;
  for (const auto& e : detail::array_of(j, "edges")) {
    auto edge = detail::edge(e);
    if (h.contains(edge)) detail::malformed("edge listed twice");
    h.set(edge, detail::rational(e, "value"));
  }
  return h;
}

inline Json edges_to_json(const std::vector<GridEdge>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back({{"a", e.tail.a}, {"b", e.tail.b}, {"dir", e.dir}});
  return {{"edges", out}};
}

inline std::vector<GridEdge> edges_from_json(const Json& j0) {
  const auto& j = detail::unwrap(j0, "fixed", "edges");
  std::vector<GridEdge> out;
  for (const auto& e : detail::array_of(j, "edges")) out.push_back(detail::edge(e));
  return out;
}

inline Json point_json(const DualPoint& p) { return {{"d1", to_string(p.d1())}, {"d2", to_string(p.d2())}}; }

inline Json to_json(const Honeycomb& h) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : h.vertices()) vs.push_back(point_json(v));
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto& [line, w] = h.edges()[e];
    Json item{{"class", line.cls}, {"weight", w}};
    if (line.kind() == LineKind::Finite) {
      item["kind"] = "finite";
      item["ends"] = Json::array({h.end_vertex(e, +1), h.end_vertex(e, -1)});
    } else {
      int s = line.ray_sign();
      item["kind"] = "ray";
      item["ends"] = Json::array({h.end_vertex(e, s)});
      item["sign"] = s > 0 ? "+" : "-";
    }
    es.push_back(std::move(item));
  }
  return {{"vertices", vs}, {"edges", es}};
}

/// Parses a honeycomb; the structural checks of Honeycomb::assemble apply,
/// the axioms are left to validate_honeycomb.
inline Honeycomb honeycomb_from_json(const Json& j0) {
  const auto& j = detail::unwrap(j0, "honeycomb", "vertices");
  std::vector<DualPoint> vs;
  for (const auto& v : detail::array_of(j, "vertices")) vs.emplace_back(detail::rational(v, "d1"), detail::rational(v, "d2"));
  std::vector<HEdge> es;
  auto vertex = [&](const Json& ends, std::size_t k) {
    if (!ends[k].is_number_integer()) detail::malformed("edge ends must be vertex indices");
    auto i = ends[k].get<std::int64_t>();
    if (i < 0 || i >= static_cast<std::int64_t>(vs.size())) detail::malformed("edge end out of range");
    return vs[static_cast<std::size_t>(i)];
  };
  for (const auto& e : detail::array_of(j, "edges")) {
    int cls = detail::direction(e, "class");
    auto w = detail::integer(e, "weight");
    const auto& kind = detail::member(e, "kind");
    const auto& ends = detail::array_of(e, "ends");
    HLine line;
    if (kind == "finite") {
      if (ends.size() != 2) detail::malformed("finite edge needs two ends");
      line = HLine::segment(vertex(ends, 0), vertex(ends, 1));
      if (line.cls != cls) detail::malformed("edge class does not match its ends");
    } else if (kind == "ray") {
      if (ends.size() != 1) detail::malformed("ray needs one end");
      const auto& sign = detail::member(e, "sign");
      if (sign != "+" && sign != "-") detail::malformed("ray sign must be \"+\" or \"-\"");
      line = HLine::ray(vertex(ends, 0), cls, sign == "+" ? +1 : -1);
    } else {
      detail::malformed("edge kind must be \"finite\" or \"ray\"");
    }
    es.push_back({line, w});
  }
  return Honeycomb::assemble(std::move(vs), std::move(es));
}

inline Json to_json(const Potential& p) {
  return {{"beta", p.beta}, {"delta", p.delta}, {"omega", p.omega}, {"eta", p.eta()}};
}

inline Json to_json(const TraceStep& s) {
  Json kinds = Json::array();
  for (auto k : s.kinds) kinds.push_back(to_string(k));
  return {{"eps", to_string(s.eps)},
          {"kinds", kinds},
          {"before", to_json(s.before)},
          {"after", to_json(s.after)},
          {"cycle", s.cycle},
          {"direction", s.direction == Direction::Right ? "right" : "left"},
          {"path_edges", s.path_edges}};
}

inline Json to_json(const LegalPath& p) {
  Json vs = Json::array(), es = Json::array(), bends = Json::array();
  for (int v : p.vertices) vs.push_back(v);
  for (auto e : p.edges) es.push_back(e);
  for (const auto& b : p.bends) bends.push_back({{"at", b.at}, {"turn", b.turn == Turn::Right ? "right" : "left"}});
  return {{"cycle", p.is_cycle}, {"vertices", vs}, {"edges", es}, {"bends", bends}};
}

}  // namespace honeycomb::io

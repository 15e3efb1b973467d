#pragma once

// Whether a concave cocirculation is pinned down by its tiling and a set of
// fixed edges, and the two-lines test on the honeycomb side.

#include "honeycomb/duality.hpp"
#include "honeycomb/errors.hpp"
#include "honeycomb/grid.hpp"
#include "honeycomb/honeycomb.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace honeycomb {

struct VertexCheck {
  bool vertex = false;
  std::size_t degrees_of_freedom = 0;
  std::optional<Cocirculation> solution;  // set when the system has a unique solution
};

namespace detail {

// Incremental row echelon form over the rationals. Rows are sparse maps from
// column to coefficient plus a right-hand side.
class Echelon {
 public:
  struct Row {
    std::map<int, Q> coef;
    Q rhs;
  };

  /// Reduces `r` against the current pivots; keeps it if independent.
  /// Returns false if the row reduces to 0 = nonzero.
  bool add(Row r) {
    while (!r.coef.empty()) {
      auto [lead, value] = *r.coef.begin();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        Q scale = value;
        for (auto& [c, v] : r.coef) v /= scale;
        r.rhs /= scale;
        pivots_.emplace(lead, std::move(r));
        return true;
      }
      Q factor = value;
      for (const auto& [c, v] : it->second.coef) {
        auto& slot = r.coef[c];
        slot -= factor * v;
        if (slot == 0) r.coef.erase(c);
      }
      r.rhs -= factor * it->second.rhs;
    }
    return r.rhs == 0;
  }

  std::size_t rank() const { return pivots_.size(); }

  /// Unique solution when every column in [0, n) has a pivot.
  std::optional<std::vector<Q>> solve(int n) const {
    if (static_cast<int>(pivots_.size()) != n) return std::nullopt;
    std::vector<Q> x(n);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Q v = it->second.rhs;
      for (const auto& [c, a] : it->second.coef)
        if (c != it->first) v -= a * x[c];
      x[it->first] = v;
    }
    return x;
  }

 private:
  std::map<int, Row> pivots_;
};

}  // namespace detail

/// Solves the system "flat on every tile of `tiling`, zero sum around every
/// little triangle, x_e = value on each pinned edge" exactly.
inline VertexCheck solve_flat(const ConvexGrid& g, const Tiling& tiling,
                              const std::vector<std::pair<GridEdge, Q>>& pins) {
  for (const auto& [e, v] : pins)
    if (!g.has_edge(e)) throw Error(ErrorKind::FNotSubsetOfEdges, "fixed edge outside the grid");

  const auto& edges = g.edges();
  detail::UnionFind uf(edges.size());
  for (const auto& r : rhombi(g)) {
    auto tris = g.triangles_of(r.diagonal);
    if (tiling.tile_of[g.triangle_index(tris[0])] != tiling.tile_of[g.triangle_index(tris[1])]) continue;
    for (const auto& [x, y] : r.pairs) uf.unite(g.edge_index(x), g.edge_index(y));
  }
  std::map<std::size_t, int> column;
  std::vector<int> col_of(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [it, fresh] = column.emplace(uf.find(i), static_cast<int>(column.size()));
    col_of[i] = it->second;
  }
  const int n = static_cast<int>(column.size());

  detail::Echelon ech;
  bool consistent = true;
  std::set<std::map<int, Q>> seen;
  for (const auto& t : g.triangles()) {
    detail::Echelon::Row row;
    for (const auto& e : t.edges()) row.coef[col_of[g.edge_index(e)]] += 1;
    std::erase_if(row.coef, [](const auto& kv) { return kv.second == 0; });
    if (row.coef.empty() || !seen.insert(row.coef).second) continue;
    consistent &= ech.add(std::move(row));
  }
  for (const auto& [e, v] : pins) {
    detail::Echelon::Row row;
    row.coef[col_of[g.edge_index(e)]] = 1;
    row.rhs = v;
    consistent &= ech.add(std::move(row));
  }
  if (!consistent) throw Error(ErrorKind::InvalidArgument, "flatness equations have no solution");

  VertexCheck out;
  out.degrees_of_freedom = static_cast<std::size_t>(n) - ech.rank();
  out.vertex = out.degrees_of_freedom == 0;
  if (auto x = ech.solve(n)) {
    Cocirculation sol;
    for (std::size_t i = 0; i < edges.size(); ++i) sol.set(edges[i], (*x)[col_of[i]]);
    out.solution = std::move(sol);
  }
  return out;
}

/// Whether h is the only cocirculation with its tiling and its values on
/// `fixed`.
inline VertexCheck vertex_check(const ConvexGrid& g, const Cocirculation& h, const std::vector<GridEdge>& fixed) {
  auto tiling = tiling_of(g, h);
  std::vector<std::pair<GridEdge, Q>> pins;
  for (const auto& e : fixed) {
    if (!g.has_edge(e)) throw Error(ErrorKind::FNotSubsetOfEdges, "fixed edge outside the grid");
    pins.emplace_back(e, h.at(e));
  }
  return solve_flat(g, tiling, pins);
}

inline bool is_vertex(const ConvexGrid& g, const Cocirculation& h, const std::vector<GridEdge>& fixed) {
  return vertex_check(g, h, fixed).vertex;
}

/// Maximal straight unions of edges, as lists of edge ids.
inline std::vector<std::vector<std::size_t>> maximal_lines(const Honeycomb& h) {
  std::vector<std::vector<std::size_t>> out;
  const auto& es = h.edges();
  // edges are sorted by class, constant coordinate, then position
  for (std::size_t e = 0; e < es.size(); ++e) {
    bool joins = false;
    if (!out.empty()) {
      const auto& prev = es[out.back().back()].line;
      const auto& cur = es[e].line;
      joins = prev.cls == cur.cls && prev.c == cur.c && prev.hi && cur.lo && *prev.hi == *cur.lo;
    }
    if (joins) out.back().push_back(e);
    else out.push_back({e});
  }
  return out;
}

/// Sufficient test for extremality: every vertex lies on at least two
/// maximal lines that each carry an edge from `family`.
inline bool condition_C_extreme(const Honeycomb& h, const std::set<std::size_t>& family) {
  std::vector<int> hits(h.vertices().size(), 0);
  for (const auto& line : maximal_lines(h)) {
    bool marked = std::any_of(line.begin(), line.end(), [&](std::size_t e) { return family.count(e) != 0; });
    if (!marked) continue;
    std::set<int> on;
    for (auto e : line)
      for (int s : {+1, -1})
        if (int v = h.end_vertex(e, s); v >= 0) on.insert(v);
    for (int v : on) ++hits[v];
  }
  return std::all_of(hits.begin(), hits.end(), [](int n) { return n >= 2; });
}

/// Boundary edges of g whose dual ray (in the honeycomb of h) is one of
/// `rays`.
inline std::vector<GridEdge> grid_edges_of_rays(const ConvexGrid& g, const Cocirculation& h, const Honeycomb& hc,
                                                const std::set<std::size_t>& rays) {
  auto tiling = tiling_of(g, h);
  auto pts = tile_points(g, h, tiling);
  std::vector<GridEdge> out;
  for (const auto& e : g.boundary_edges()) {
    auto tri = g.triangles_of(e).front();
    int v = hc.vertex_index(pts[tiling.tile_of[g.triangle_index(tri)]]);
    if (v < 0) throw Error(ErrorKind::InvalidArgument, "honeycomb does not match the grid");
    int ray = hc.incident(v, e.dir, tri.up ? +1 : -1);
    if (ray >= 0 && rays.count(static_cast<std::size_t>(ray))) out.push_back(e);
  }
  return out;
}

/// Edges of the boundary sides with outward normal (dir, sign).
inline std::vector<GridEdge> side_edges(const ConvexGrid& g, int dir, int sign) {
  std::vector<GridEdge> out;
  for (const auto& s : sides(g))
    if (s.dir == dir && s.sign == sign) out.insert(out.end(), s.edges.begin(), s.edges.end());
  return out;
}

}  // namespace honeycomb

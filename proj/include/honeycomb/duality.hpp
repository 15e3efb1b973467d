#pragma once

// Conversion between concave cocirculations on a convex grid and honeycombs.

#include "honeycomb/errors.hpp"
#include "honeycomb/grid.hpp"
#include "honeycomb/honeycomb.hpp"

#include <array>
#include <map>
#include <queue>
#include <vector>

namespace honeycomb {

struct GridInstance {
  ConvexGrid grid;
  Cocirculation h;
};

/// Dual point of a tile: d_i equals the common value of h on its edges
/// parallel to xi_i.
inline std::vector<DualPoint> tile_points(const ConvexGrid& g, const Cocirculation& h, const Tiling& tiling) {
  std::vector<std::optional<DualPoint>> pts(tiling.count);
  for (std::size_t t = 0; t < g.triangles().size(); ++t) {
    auto& slot = pts[tiling.tile_of[t]];
    if (slot) continue;
    auto es = g.triangles()[t].edges();
    slot = DualPoint(h.at(es[0]), h.at(es[1]));
  }
  std::vector<DualPoint> out;
  for (auto& p : pts) out.push_back(*p);
  return out;
}

inline Honeycomb grid_to_honeycomb(const ConvexGrid& g, const Cocirculation& h) {
  auto tiling = tiling_of(g, h);
  auto pts = tile_points(g, h, tiling);
  XiSystem sys;
  for (const auto& e : g.edges()) {
    auto tris = g.triangles_of(e);
    int t0 = tiling.tile_of[g.triangle_index(tris[0])];
    if (tris.size() == 1) {
      sys.add(HLine::ray(pts[t0], e.dir, tris[0].up ? +1 : -1), 1);
      continue;
    }
    int t1 = tiling.tile_of[g.triangle_index(tris[1])];
    if (t0 != t1) sys.add(HLine::segment(pts[t0], pts[t1]), 1);
  }
  return canonicalize(sys);
}

namespace detail {

// Sides of the local grid of a vertex in anticlockwise order.
inline constexpr std::array<std::pair<int, int>, 6> kSideOrder{{{1, +1}, {3, -1}, {2, +1}, {1, -1}, {3, +1}, {2, -1}}};

inline int side_slot(int cls, int sign) {
  for (int k = 0; k < 6; ++k)
    if (kSideOrder[k].first == cls && kSideOrder[k].second == sign) return k;
  return -1;
}

// Corners of the local polygon of v starting from the origin:
// corner[k] is where side k starts, corner[k + 1] where it ends.
inline std::array<GridPoint, 7> local_corners(const Honeycomb& h, std::size_t v) {
  std::array<GridPoint, 7> corner{};
  for (int k = 0; k < 6; ++k) {
    auto [cls, sign] = kSideOrder[k];
    corner[k + 1] = corner[k] + xi(cls) * (sign * h.w(v, cls, sign));
  }
  return corner;
}

}  // namespace detail

/// Glues the local grids of all vertices along the finite edges. The result
/// is placed with its lexicographically least vertex at the origin.
inline GridInstance honeycomb_to_grid(const Honeycomb& hc) {
  const auto n = hc.vertices().size();
  if (n == 0) throw Error(ErrorKind::InvalidHoneycomb, "no vertices");
  std::vector<std::array<GridPoint, 7>> corners(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!hc.ray_weights_at(v).balanced()) throw Error(ErrorKind::InvalidHoneycomb, "unbalanced vertex");
    corners[v] = detail::local_corners(hc, v);
    if (corners[v][6] != GridPoint{0, 0}) throw Error(ErrorKind::InvalidHoneycomb, "local grid does not close");
  }

  std::vector<std::optional<GridPoint>> offset(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (offset[root]) continue;
    if (root != 0) throw Error(ErrorKind::InvalidHoneycomb, "honeycomb is not connected");
    offset[root] = GridPoint{0, 0};
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      auto u = todo.front();
      todo.pop();
      for (int i = 1; i <= 3; ++i)
        for (int s : {+1, -1}) {
          int e = hc.incident(u, i, s);
          if (e < 0) continue;
          int v = hc.opposite_end(e, static_cast<int>(u));
          if (v < 0) continue;
          int ku = detail::side_slot(i, s), kv = detail::side_slot(i, -s);
          GridPoint want = *offset[u] + corners[u][ku + 1] - corners[v][kv];
          if (!offset[v]) {
            offset[v] = want;
            todo.push(v);
          } else if (*offset[v] != want) {
            throw Error(ErrorKind::InvalidHoneycomb, "local grids do not glue consistently");
          }
        }
    }
  }

  std::map<Triangle, std::size_t> owner;
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t a_lo = INT64_MAX, a_hi = INT64_MIN, b_lo = INT64_MAX, b_hi = INT64_MIN, c_lo = INT64_MAX,
                 c_hi = INT64_MIN;
    for (int k = 0; k < 6; ++k) {
      GridPoint p = corners[v][k] + *offset[v];
      a_lo = std::min(a_lo, p.a);
      a_hi = std::max(a_hi, p.a);
      b_lo = std::min(b_lo, p.b);
      b_hi = std::max(b_hi, p.b);
      c_lo = std::min(c_lo, p.a - p.b);
      c_hi = std::max(c_hi, p.a - p.b);
    }
    auto inside = [&](GridPoint p) {
      return p.a >= a_lo && p.a <= a_hi && p.b >= b_lo && p.b <= b_hi && p.a - p.b >= c_lo && p.a - p.b <= c_hi;
    };
    for (auto a = a_lo - 1; a <= a_hi; ++a)
      for (auto b = b_lo - 1; b <= b_hi + 1; ++b)
        for (bool up : {true, false}) {
          Triangle t{up, {a, b}};
          auto cs = t.corners();
          if (!std::all_of(cs.begin(), cs.end(), inside)) continue;
          if (!owner.emplace(t, v).second) throw Error(ErrorKind::InvalidHoneycomb, "local grids overlap");
        }
  }

  std::vector<Triangle> tris;
  for (const auto& [t, v] : owner) tris.push_back(t);
  ConvexGrid grid(std::move(tris));
  Cocirculation h;
  for (const auto& [t, v] : owner)
    for (const auto& e : t.edges()) {
      const Q& value = hc.vertices()[v](e.dir);
      if (h.contains(e) && h.at(e) != value) throw Error(ErrorKind::InvalidHoneycomb, "glued edge gets two values");
      h.set(e, value);
    }
  GridPoint shift = GridPoint{0, 0} - grid.anchor();
  return {grid.translated(shift), h.translated(shift)};
}

}  // namespace honeycomb

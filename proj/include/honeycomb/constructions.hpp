#pragma once

// Explicit instances: the truncated integer dual grid, the hexagon with a
// denominator-k vertex, their sum as a fractional vertex on a 3-side grid,
// and a small half-integer instance whose integral edges cannot all be kept.

#include "honeycomb/duality.hpp"
#include "honeycomb/errors.hpp"
#include "honeycomb/extremality.hpp"
#include "honeycomb/grid.hpp"
#include "honeycomb/honeycomb.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace honeycomb {

/// Integer dual points v with |v^i| < n and v^i - v^{i+1} <= n, joined by
/// unit edges, with rays of weight 1 or 2 leaving the outer rim.
inline Honeycomb dual_grid_honeycomb(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dual grid size must be positive");
  auto inside = [n](std::int64_t v1, std::int64_t v2) {
    std::int64_t v[3] = {v1, v2, -v1 - v2};
    for (int i = 0; i < 3; ++i)
      if (v[i] <= -n || v[i] >= n || v[i] - v[(i + 1) % 3] > n) return false;
    return true;
  };
  XiSystem s;
  // neighbours at l1-distance 2, one orientation per pair
  static constexpr std::int64_t steps[3][2] = {{1, -1}, {0, 1}, {-1, 0}};
  for (std::int64_t a = -n + 1; a < n; ++a)
    for (std::int64_t b = -n + 1; b < n; ++b) {
      if (!inside(a, b)) continue;
      DualPoint v{Q(a), Q(b)};
      for (const auto& st : steps)
        if (inside(a + st[0], b + st[1])) s.add(HLine::segment(v, DualPoint{Q(a + st[0]), Q(b + st[1])}), 1);
      std::int64_t c[3] = {a, b, -a - b};
      for (int i = 1; i <= 3; ++i) {
        std::int64_t here = c[i - 1], there = c[next_class(i) - 1];
        std::int64_t diff = here - there;
        if (diff != n && diff != n - 1) continue;
        int w = (diff == n - 1 && here != 0 && there != 0) ? 1 : 2;
        s.add(HLine::ray(v, prev_class(i), +1), w);
      }
    }
  return canonicalize(s);
}

/// Replaces each ray Xi_i^-(v) by the segment to the nearest integer point
/// u beyond v plus the rays Xi_{i-1}^+(u) and Xi_{i+1}^+(u), same weight.
inline Honeycomb fix_boundary(const Honeycomb& h) {
  XiSystem s;
  for (const auto& [line, w] : h.edges()) {
    if (line.ray_sign() >= 0) {
      s.add(line, w);
      continue;
    }
    if (!is_integer(line.c)) throw Error(ErrorKind::NonIntegerTruncationPoint, "ray has a fractional constant coordinate");
    const Q& tv = *line.hi;
    Q tu = is_integer(tv) ? tv - 1 : Q(floor(tv));
    DualPoint v = line.point_at(tv), u = line.point_at(tu);
    s.add(HLine::segment(u, v), w);
    s.add(HLine::ray(u, prev_class(line.cls), +1), w);
    s.add(HLine::ray(u, next_class(line.cls), +1), w);
  }
  return canonicalize(s);
}

struct HexagonInstance {
  ConvexGrid grid;
  Cocirculation h;
  Tiling tiling;                             // the prescribed tiling
  std::vector<std::pair<GridEdge, Q>> pins;  // boundary values
};

namespace detail {

// Renumbers tiles by least triangle, as tiling_of does.
inline Tiling normalized_tiling(const std::vector<std::size_t>& root) {
  Tiling t;
  t.tile_of.assign(root.size(), -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < root.size(); ++i) {
    auto [it, fresh] = ids.emplace(root[i], t.count);
    if (fresh) ++t.count;
    t.tile_of[i] = it->second;
  }
  return t;
}

// Triangle sums and equal opposite sides inside tiles, applied until
// nothing changes. Visits triangles in the given order each round.
inline std::map<GridEdge, Q> propagate(const ConvexGrid& g, const Tiling& tiling, std::map<GridEdge, Q> known,
                                       const std::vector<std::size_t>& order) {
  auto put = [&](const GridEdge& e, const Q& v) {
    auto [it, fresh] = known.emplace(e, v);
    if (!fresh && it->second != v) throw Error(ErrorKind::InvalidArgument, "propagation reached a conflict");
    return fresh;
  };
  auto rh = rhombi(g);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto ti : order) {
      auto es = g.triangles()[ti].edges();
      int missing = -1, count = 0;
      Q total;
      for (int j = 0; j < 3; ++j) {
        auto it = known.find(es[j]);
        if (it == known.end()) {
          missing = j;
          ++count;
        } else {
          total += it->second;
        }
      }
      if (count == 1) changed |= put(es[missing], -total);
    }
    for (const auto& r : rh) {
      auto tris = g.triangles_of(r.diagonal);
      if (tiling.tile_of[g.triangle_index(tris[0])] != tiling.tile_of[g.triangle_index(tris[1])]) continue;
      for (const auto& [x, y] : r.pairs) {
        auto ix = known.find(x), iy = known.find(y);
        if (ix != known.end() && iy == known.end()) changed |= put(y, ix->second);
        else if (iy != known.end() && ix == known.end()) changed |= put(x, iy->second);
        else if (ix != known.end() && ix->second != iy->second)
          throw Error(ErrorKind::InvalidArgument, "propagation reached a conflict");
      }
    }
  }
  return known;
}

}  // namespace detail

/// Hexagon with short S and N sides and four sides of length k. Named
/// points: x_i = (0,-i), x'_i = (i,i), y_i = (k+1-i,-i), y'_i = (k+1,i),
/// z_i = x_i + (1,0), z'_i = x'_i + (1,0).
inline HexagonInstance hexagon_instance(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "hexagon parameter must be positive");
  const std::int64_t K = k;
  HexagonInstance out;
  out.grid = grid_from_bounds(0, K + 1, -K, K, 0, K + 1);
  const auto& g = out.grid;

  // boundary values
  auto& pins = out.pins;
  for (std::int64_t i = 1; i <= K; ++i) {
    Q left = i == 1 ? Q(-1) : Q(i - 1);
    pins.emplace_back(GridEdge{{0, -i}, 2}, left);             // x_i x_{i-1}
    pins.emplace_back(GridEdge{{i, i}, 3}, left);              // x'_i x'_{i-1}
    pins.emplace_back(GridEdge{{K + 2 - i, 1 - i}, 3}, Q(1 - i));  // y_{i-1} y_i
    pins.emplace_back(GridEdge{{K + 1, i - 1}, 2}, Q(1 - i));      // y'_{i-1} y'_i
  }
  pins.emplace_back(GridEdge{{0, -K}, 1}, Q(0));  // x_k y_k
  pins.emplace_back(GridEdge{{K, K}, 1}, Q(0));   // x'_k y'_k
  for (const auto& [e, v] : pins)
    if (!g.is_boundary(e)) throw Error(ErrorKind::InvalidArgument, "hexagon pin is not on the boundary");

  // tiles: horizontal strips of the big rhombus, the small rhombus at x_0,
  // and single triangles elsewhere
  auto in_big = [K](GridPoint p) { return p.a >= 1 && p.a <= K + 1 && p.a - p.b >= 1 && p.a - p.b <= K + 1; };
  std::vector<std::size_t> root(g.triangles().size());
  std::map<std::int64_t, std::size_t> strip;
  std::optional<std::size_t> small;
  for (std::size_t i = 0; i < g.triangles().size(); ++i) {
    const auto& t = g.triangles()[i];
    root[i] = i;
    auto c = t.corners();
    if (std::all_of(c.begin(), c.end(), in_big)) {
      std::int64_t row = t.up ? t.base.b : t.base.b - 1;
      root[i] = strip.emplace(row, i).first->second;
    } else if (t.base == GridPoint{0, 0}) {
      if (!small) small = i;
      root[i] = *small;
    }
  }
  out.tiling = detail::normalized_tiling(root);

  auto exact = solve_flat(g, out.tiling, pins);
  if (!exact.solution) throw Error(ErrorKind::InvalidArgument, "hexagon values are not determined");

  // second route: seed the values as drawn and spread them
  std::map<GridEdge, Q> seeds(pins.begin(), pins.end());
  const Q inv(1, static_cast<unsigned>(k));
  for (const auto& e : g.edges())
    if (e.dir == 1 && in_big(e.tail) && in_big(e.head())) seeds.emplace(e, -inv);
  for (std::int64_t i = 0; i < K; ++i) {
    seeds.emplace(GridEdge{{1, -i - 1}, 2}, Q(i) + inv);     // z_{i+1} z_i
    seeds.emplace(GridEdge{{i + 2, i + 1}, 3}, Q(i) + inv);  // z'_{i+1} z'_i
  }
  seeds.emplace(GridEdge{{1, 0}, 3}, Q(-1));  // z_0 x_1
  seeds.emplace(GridEdge{{1, 0}, 2}, Q(-1));  // z_0 x'_1
  std::vector<std::size_t> upward(g.triangles().size());
  std::iota(upward.begin(), upward.end(), 0);
  std::vector<std::size_t> downward(upward.rbegin(), upward.rend());
  auto a = detail::propagate(g, out.tiling, seeds, upward);
  auto b = detail::propagate(g, out.tiling, seeds, downward);
  if (a.size() != g.edges().size() || a != b)
    throw Error(ErrorKind::InvalidArgument, "hexagon propagation is incomplete");
  for (const auto& [e, v] : a)
    if (exact.solution->at(e) != v) throw Error(ErrorKind::InvalidArgument, "hexagon routes disagree");

  out.h = *exact.solution;
  return out;
}

struct FractionalInstance {
  ConvexGrid grid;
  Cocirculation h;
  std::vector<GridEdge> fixed;  // edges of the two sides dual to Xi_1^+ and Xi_2^+ rays
  Honeycomb honeycomb;
  int n = 0;  // size of the dual grid part
};

/// A 3-side grid with integer boundary values whose cocirculation is the
/// only one with its values on two sides, yet has denominator k somewhere.
inline FractionalInstance fractional_vertex_instance(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "denominator must be positive");
  auto hex = hexagon_instance(k);
  FractionalInstance out;
  out.n = 2 * k + 1;
  out.honeycomb = sum(dual_grid_honeycomb(out.n), fix_boundary(grid_to_honeycomb(hex.grid, hex.h)));
  auto inst = honeycomb_to_grid(out.honeycomb);
  out.grid = std::move(inst.grid);
  out.h = std::move(inst.h);
  std::set<std::size_t> rays;
  const auto& es = out.honeycomb.edges();
  for (std::size_t e = 0; e < es.size(); ++e)
    if (es[e].line.ray_sign() > 0 && es[e].line.cls != 3) rays.insert(e);
  out.fixed = grid_edges_of_rays(out.grid, out.h, out.honeycomb, rays);
  return out;
}

/// Stable text form "dir a b value" per edge, sorted, for checksums.
inline std::string canonical_text(const Cocirculation& h) {
  std::ostringstream os;
  for (const auto& [e, v] : h.values()) os << e.dir << ' ' << e.tail.a << ' ' << e.tail.b << ' ' << to_string(v) << '\n';
  return os.str();
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t x = 14695981039346656037ull;
  for (unsigned char c : s) {
    x ^= c;
    x *= 1099511628211ull;
  }
  return x;
}

/// Three vertices v = (0,0), u = (1,0), z = (1,-1) with divergencies 2, 0, 0
/// and ten edges, seven of them rays. Shifted by `shift` if given.
inline XiSystem three_vertex_system(const DualPoint& shift = DualPoint()) {
  auto at = [&](int d1, int d2) { return DualPoint(Q(d1) + shift.d1(), Q(d2) + shift.d2()); };
  DualPoint v = at(0, 0), u = at(1, 0), z = at(1, -1);
  XiSystem s;
  s.add(HLine::ray(u, 1, +1), 1);
  s.add(HLine::segment(u, z), 1);
  s.add(HLine::segment(u, v), 1);
  s.add(HLine::ray(u, 2, -1), 1);
  s.add(HLine::ray(z, 1, -1), 1);
  s.add(HLine::segment(z, v), 3);
  s.add(HLine::ray(z, 3, +1), 3);
  s.add(HLine::ray(v, 1, +1), 2);
  s.add(HLine::ray(v, 3, -1), 1);
  s.add(HLine::ray(v, 2, +1), 3);
  return s;
}

struct FixtureInstance {
  ConvexGrid grid;
  Cocirculation h;
};

/// Half-integer instance on 16 triangles. Its honeycomb has unit weights and
/// three vertices with a single integer dual coordinate.
inline FixtureInstance counterexample_instance() {
  FixtureInstance out;
  out.grid = grid_from_bounds(0, 4, 0, 3, -1, 2);
  const Q half(1, 2);
  struct Entry {
    int dir;
    std::int64_t a, b;
    Q v;
  };
  const std::vector<Entry> table = {
      // horizontal edges, bottom row first
      {1, 0, 0, Q(1)}, {1, 1, 0, Q(0)},
      {1, 0, 1, Q(2)}, {1, 1, 1, half}, {1, 2, 1, Q(0)},
      {1, 1, 2, Q(1)}, {1, 2, 2, half}, {1, 3, 2, Q(-1)},
      {1, 2, 3, Q(1)}, {1, 3, 3, Q(0)},
      // edges going up-right
      {2, 0, 0, -half}, {2, 1, 0, half}, {2, 2, 0, Q(1)},
      {2, 1, 1, -half}, {2, 2, 1, Q(0)}, {2, 3, 1, half},
      {2, 2, 2, Q(-1)}, {2, 3, 2, -half}, {2, 4, 2, half},
      // edges going down-left
      {3, 1, 1, Q(-3, 2)}, {3, 2, 1, Q(-1)}, {3, 3, 1, Q(-1)},
      {3, 1, 2, Q(-3, 2)}, {3, 2, 2, -half}, {3, 3, 2, -half}, {3, 4, 2, half},
      {3, 2, 3, Q(0)}, {3, 3, 3, Q(0)}, {3, 4, 3, half},
  };
  for (const auto& [dir, a, b, v] : table) {
    GridEdge e{{a, b}, dir};
    if (!out.grid.has_edge(e)) throw Error(ErrorKind::InvalidArgument, "fixture edge outside its grid");
    out.h.set(e, v);
  }
  check_cocirculation(out.grid, out.h);
  return out;
}

}  // namespace honeycomb

#pragma once

// Convex triangular grids and cocirculations on them.
//
// A grid point (a, b) stands for a*xi1 + b*xi2 where xi1 = (1, 0) and
// xi2 = (-1, sqrt 3)/2; xi3 = -xi1 - xi2 is (-1, -1) in these coordinates.
// A grid is stored as its set of little triangles. An up-triangle with base p
// has corners p, p+xi1, p+xi1+xi2 and is bounded by an anticlockwise
// 3-circuit; a down-triangle with base p has corners p, p+xi1, p-xi2 and a
// clockwise 3-circuit.

#include "honeycomb/errors.hpp"
#include "honeycomb/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace honeycomb {

struct GridPoint {
  std::int64_t a = 0;
  std::int64_t b = 0;

  auto operator<=>(const GridPoint&) const = default;
  GridPoint operator+(GridPoint o) const { return {a + o.a, b + o.b}; }
  GridPoint operator-(GridPoint o) const { return {a - o.a, b - o.b}; }
  GridPoint operator*(std::int64_t k) const { return {a * k, b * k}; }
};

/// Generator xi_dir in lattice coordinates, dir in {1,2,3}.
inline GridPoint xi(int dir) {
  switch (dir) {
    case 1: return {1, 0};
    case 2: return {0, 1};
    default: return {-1, -1};
  }
}

/// Index 0..5 of a unit lattice step, anticlockwise from xi1 in 60 degree steps.
inline int step_angle(GridPoint step) {
  static const std::array<GridPoint, 6> steps{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}};
  for (int k = 0; k < 6; ++k)
    if (steps[k] == step) return k;
  return -1;
}

struct GridEdge {
  GridPoint tail;
  int dir = 1;

  auto operator<=>(const GridEdge&) const = default;
  GridPoint head() const { return tail + xi(dir); }
};

struct Triangle {
  bool up = true;
  GridPoint base;

  auto operator<=>(const Triangle&) const = default;

  std::array<GridPoint, 3> corners() const {
    if (up) return {base, base + xi(1), base + GridPoint{1, 1}};
    return {base, base + xi(1), base - xi(2)};
  }

  /// Edges ordered by direction class 1, 2, 3.
  std::array<GridEdge, 3> edges() const {
    if (up) return {GridEdge{base, 1}, GridEdge{base + GridPoint{1, 0}, 2}, GridEdge{base + GridPoint{1, 1}, 3}};
    return {GridEdge{base, 1}, GridEdge{base + GridPoint{0, -1}, 2}, GridEdge{base + GridPoint{1, 0}, 3}};
  }
};

/// The (at most two) little triangles having `e` on their boundary: the up one first.
inline std::array<Triangle, 2> triangles_around(const GridEdge& e) {
  const auto& p = e.tail;
  switch (e.dir) {
    case 1: return {Triangle{true, p}, Triangle{false, p}};
    case 2: return {Triangle{true, p + GridPoint{-1, 0}}, Triangle{false, p + GridPoint{0, 1}}};
    default: return {Triangle{true, p + GridPoint{-1, -1}}, Triangle{false, p + GridPoint{-1, 0}}};
  }
}

class ConvexGrid {
 public:
  ConvexGrid() = default;

  explicit ConvexGrid(std::vector<Triangle> triangles) : triangles_(std::move(triangles)) {
    std::sort(triangles_.begin(), triangles_.end());
    triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
    if (triangles_.empty()) throw Error(ErrorKind::EmptyGrid, "grid has no triangles");
    std::map<GridEdge, int> count;
    for (const auto& t : triangles_)
      for (const auto& e : t.edges()) ++count[e];
    for (const auto& [e, n] : count) {
      edges_.push_back(e);
      if (n == 1) boundary_.push_back(e);
    }
  }

  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<GridEdge>& edges() const { return edges_; }
  const std::vector<GridEdge>& boundary_edges() const { return boundary_; }

  bool has_triangle(const Triangle& t) const {
    return std::binary_search(triangles_.begin(), triangles_.end(), t);
  }
  bool has_edge(const GridEdge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
  bool is_boundary(const GridEdge& e) const {
    return std::binary_search(boundary_.begin(), boundary_.end(), e);
  }

  std::size_t triangle_index(const Triangle& t) const {
    return std::lower_bound(triangles_.begin(), triangles_.end(), t) - triangles_.begin();
  }
  std::size_t edge_index(const GridEdge& e) const {
    return std::lower_bound(edges_.begin(), edges_.end(), e) - edges_.begin();
  }

  std::vector<Triangle> triangles_of(const GridEdge& e) const {
    std::vector<Triangle> out;
    for (const auto& t : triangles_around(e))
      if (has_triangle(t)) out.push_back(t);
    return out;
  }

  std::vector<GridPoint> vertices() const {
    std::set<GridPoint> pts;
    for (const auto& t : triangles_)
      for (const auto& p : t.corners()) pts.insert(p);
    return {pts.begin(), pts.end()};
  }

  /// Lexicographically least vertex.
  GridPoint anchor() const {
    GridPoint best = triangles_.front().corners()[0];
    for (const auto& t : triangles_)
      for (const auto& p : t.corners()) best = std::min(best, p);
    return best;
  }

  ConvexGrid translated(GridPoint offset) const {
    std::vector<Triangle> moved;
    moved.reserve(triangles_.size());
    for (const auto& t : triangles_) moved.push_back({t.up, t.base + offset});
    return ConvexGrid(std::move(moved));
  }

  bool operator==(const ConvexGrid& o) const { return triangles_ == o.triangles_; }

 private:
  std::vector<Triangle> triangles_;
  std::vector<GridEdge> edges_;
  std::vector<GridEdge> boundary_;
};

/// Boundary edge traversed with the region on its left.
struct OrientedEdge {
  GridEdge edge;
  int sign = +1;  // +1 when traversed tail -> head

  GridPoint from() const { return sign > 0 ? edge.tail : edge.head(); }
  GridPoint to() const { return sign > 0 ? edge.head() : edge.tail; }
};

/// Maximal straight run of the boundary. Its outward normal points in the
/// direction of the half-lines Xi_dir^sign used by the dual honeycomb.
struct Side {
  int dir = 1;
  int sign = +1;
  std::vector<GridEdge> edges;
};

/// Anticlockwise boundary walk; throws NotConnected or NotConvex.
inline std::vector<OrientedEdge> boundary_cycle(const ConvexGrid& g) {
  std::map<GridPoint, std::vector<OrientedEdge>> outgoing;
  for (const auto& e : g.boundary_edges()) {
    auto tris = g.triangles_of(e);
    OrientedEdge oe{e, tris.front().up ? +1 : -1};
    outgoing[oe.from()].push_back(oe);
  }
  for (const auto& [p, list] : outgoing)
    if (list.size() != 1) throw Error(ErrorKind::NotConvex, "boundary touches itself at a vertex");

  std::vector<OrientedEdge> cycle;
  GridPoint start = outgoing.begin()->first;
  GridPoint at = start;
  do {
    const auto& oe = outgoing.at(at).front();
    cycle.push_back(oe);
    at = oe.to();
    if (cycle.size() > g.boundary_edges().size()) break;
  } while (at != start);
  if (cycle.size() != g.boundary_edges().size())
    throw Error(ErrorKind::NotConvex, "boundary is not a single closed curve");
  return cycle;
}

/// Checks that the triangles are edge-connected and span a convex polygon.
inline void validate_grid(const ConvexGrid& g) {
  const auto& tris = g.triangles();
  std::vector<char> seen(tris.size(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    auto i = todo.front();
    todo.pop();
    for (const auto& e : tris[i].edges())
      for (const auto& t : g.triangles_of(e)) {
        auto j = g.triangle_index(t);
        if (!seen[j]) {
          seen[j] = 1;
          ++reached;
          todo.push(j);
        }
      }
  }
  if (reached != tris.size()) throw Error(ErrorKind::NotConnected, "triangles are not edge-connected");

  auto cycle = boundary_cycle(g);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& cur = cycle[i];
    const auto& nxt = cycle[(i + 1) % cycle.size()];
    int turn = (step_angle(nxt.to() - nxt.from()) - step_angle(cur.to() - cur.from()) + 6) % 6;
    // exterior turn of 0, 60 or 120 degrees to the left
    if (turn > 2) throw Error(ErrorKind::NotConvex, "reflex boundary turn");
  }
}

inline std::vector<Side> sides(const ConvexGrid& g) {
  auto cycle = boundary_cycle(g);
  // rotate so that the walk starts at a corner
  std::size_t start = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& prev = cycle[(i + cycle.size() - 1) % cycle.size()];
    if (prev.edge.dir != cycle[i].edge.dir || prev.sign != cycle[i].sign) {
      start = i;
      break;
    }
  }
  std::vector<Side> out;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const auto& oe = cycle[(start + k) % cycle.size()];
    if (out.empty() || out.back().dir != oe.edge.dir || out.back().sign != oe.sign)
      out.push_back(Side{oe.edge.dir, oe.sign, {}});
    out.back().edges.push_back(oe.edge);
  }
  return out;
}

/// Maximum side length.
inline std::size_t grid_size(const ConvexGrid& g) {
  std::size_t best = 0;
  for (const auto& s : sides(g)) best = std::max(best, s.edges.size());
  return best;
}

/// All triangles whose corners satisfy lo <= a <= hi, lo <= b <= hi and
/// lo <= a - b <= hi for the three given ranges.
inline ConvexGrid grid_from_bounds(std::int64_t a_lo, std::int64_t a_hi, std::int64_t b_lo, std::int64_t b_hi,
                                   std::int64_t c_lo, std::int64_t c_hi) {
  auto inside = [&](GridPoint p) {
    return p.a >= a_lo && p.a <= a_hi && p.b >= b_lo && p.b <= b_hi && p.a - p.b >= c_lo && p.a - p.b <= c_hi;
  };
  std::vector<Triangle> tris;
  for (auto a = a_lo - 1; a <= a_hi + 1; ++a)
    for (auto b = b_lo - 1; b <= b_hi + 1; ++b)
      for (bool up : {true, false}) {
        Triangle t{up, {a, b}};
        auto c = t.corners();
        if (std::all_of(c.begin(), c.end(), inside)) tris.push_back(t);
      }
  return ConvexGrid(std::move(tris));
}

/// Big up-triangle with corners (0,0), (n,0), (n,n).
inline ConvexGrid three_side_grid(int n) { return grid_from_bounds(0, n, 0, n, 0, n); }

/// Regular hexagon with all six sides of length s.
inline ConvexGrid hexagon_grid(int s) { return grid_from_bounds(0, 2 * s, 0, 2 * s, -s, s); }

class Cocirculation {
 public:
  Cocirculation() = default;

  const Q& at(const GridEdge& e) const {
    auto it = values_.find(e);
    if (it == values_.end()) throw Error(ErrorKind::InvalidArgument, "no value on edge");
    return it->second;
  }
  bool contains(const GridEdge& e) const { return values_.count(e) != 0; }
  void set(const GridEdge& e, Q v) { values_[e] = std::move(v); }
  const std::map<GridEdge, Q>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool operator==(const Cocirculation& o) const { return values_ == o.values_; }

  Cocirculation translated(GridPoint offset) const {
    Cocirculation out;
    for (const auto& [e, v] : values_) out.set({e.tail + offset, e.dir}, v);
    return out;
  }

 private:
  std::map<GridEdge, Q> values_;
};

/// Throws unless h carries a value on exactly the edges of g and sums to
/// zero around every little triangle.
inline void check_cocirculation(const ConvexGrid& g, const Cocirculation& h) {
  for (const auto& [e, v] : h.values())
    if (!g.has_edge(e)) throw Error(ErrorKind::DanglingEdge, "value on an edge outside the grid");
  for (const auto& e : g.edges())
    if (!h.contains(e)) throw Error(ErrorKind::InvalidArgument, "grid edge without a value");
  for (const auto& t : g.triangles()) {
    auto es = t.edges();
    if (h.at(es[0]) + h.at(es[1]) + h.at(es[2]) != 0)
      throw Error(ErrorKind::NotACocirculation, "nonzero sum around a little triangle");
  }
}

/// Little rhombus around an interior edge. In each parallel pair the first
/// edge enters an obtuse vertex; concavity asks h(first) >= h(second).
struct Rhombus {
  GridEdge diagonal;
  std::array<std::pair<GridEdge, GridEdge>, 2> pairs;
};

inline std::vector<Rhombus> rhombi(const ConvexGrid& g) {
  std::vector<Rhombus> out;
  for (const auto& d : g.edges()) {
    auto tris = g.triangles_of(d);
    if (tris.size() != 2) continue;
    Rhombus r{d, {}};
    int k = 0;
    for (int dir = 1; dir <= 3; ++dir) {
      if (dir == d.dir) continue;
      GridEdge e0 = tris[0].edges()[dir - 1];
      GridEdge e1 = tris[1].edges()[dir - 1];
      bool e0_enters = e0.head() == d.tail || e0.head() == d.head();
      r.pairs[k++] = e0_enters ? std::pair{e0, e1} : std::pair{e1, e0};
    }
    out.push_back(r);
  }
  return out;
}

inline bool is_concave(const ConvexGrid& g, const Cocirculation& h) {
  check_cocirculation(g, h);
  for (const auto& r : rhombi(g))
    for (const auto& [e, f] : r.pairs)
      if (h.at(e) < h.at(f)) return false;
  return true;
}

/// Partition of the little triangles into flatspaces.
struct Tiling {
  std::vector<int> tile_of;  // aligned with ConvexGrid::triangles()
  int count = 0;

  std::vector<std::vector<std::size_t>> tiles() const {
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < tile_of.size(); ++i) out[tile_of[i]].push_back(i);
    return out;
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

}  // namespace detail

/// Tiles are the components of triangles joined across rhombi that hold
/// with equality. Tile ids are numbered by their least triangle.
inline Tiling tiling_of(const ConvexGrid& g, const Cocirculation& h) {
  if (!is_concave(g, h)) throw Error(ErrorKind::NotConcave, "cocirculation is not concave");
  detail::UnionFind uf(g.triangles().size());
  for (const auto& r : rhombi(g)) {
    const auto& [e, f] = r.pairs[0];
    if (h.at(e) == h.at(f)) {
      auto tris = g.triangles_of(r.diagonal);
      uf.unite(g.triangle_index(tris[0]), g.triangle_index(tris[1]));
    }
  }
  Tiling t;
  t.tile_of.assign(g.triangles().size(), -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < g.triangles().size(); ++i) {
    auto root = uf.find(i);
    auto [it, fresh] = ids.emplace(root, t.count);
    if (fresh) ++t.count;
    t.tile_of[i] = it->second;
  }
  return t;
}

struct IntegerEdgeSets {
  std::vector<GridEdge> boundary;  // O_h
  std::vector<GridEdge> interior;  // I_h
};

inline IntegerEdgeSets integer_edge_sets(const ConvexGrid& g, const Cocirculation& h) {
  IntegerEdgeSets out;
  for (const auto& e : g.boundary_edges())
    if (is_integer(h.at(e))) out.boundary.push_back(e);
  std::set<GridEdge> inner;
  for (const auto& t : g.triangles()) {
    auto es = t.edges();
    if (std::all_of(es.begin(), es.end(), [&](const GridEdge& e) { return is_integer(h.at(e)); }))
      inner.insert(es.begin(), es.end());
  }
  out.interior.assign(inner.begin(), inner.end());
  return out;
}

/// Cocirculation h(e) = g(head) - g(tail) of a function on lattice points.
template <class Potential>
Cocirculation cocirculation_from_potential(const ConvexGrid& grid, Potential&& g) {
  Cocirculation h;
  for (const auto& e : grid.edges()) h.set(e, g(e.head()) - g(e.tail));
  return h;
}

/// Concave quadratic potential g = -q1*x^2 - q2*y^2 + l1*a + l2*b sampled on
/// the lattice, where (x, y) are the plane coordinates of (a, b). All
/// parameters are random rationals with denominators at most `denom_bound`.
/// The result is strictly concave, so every tile is a single triangle.
inline Cocirculation random_concave(const ConvexGrid& grid, std::uint64_t seed, int denom_bound) {
  if (denom_bound < 1) throw Error(ErrorKind::InvalidArgument, "denominator bound must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, denom_bound);
  auto positive = [&] {
    int d = den(rng);
    return Q(std::uniform_int_distribution<int>(1, 2 * d)(rng), d);
  };
  auto any = [&] {
    int d = den(rng);
    return Q(std::uniform_int_distribution<int>(-3 * d, 3 * d)(rng), d);
  };
  // the rhombus inequality in the (x2, x3)-rhombi needs q1 < 3 q2
  Q q1 = positive(), q2 = positive();
  while (q1 >= 3 * q2) {
    q1 = positive();
    q2 = positive();
  }
  Q l1 = any(), l2 = any();
  return cocirculation_from_potential(grid, [&](GridPoint p) {
    Q a(p.a), b(p.b);
    Q x = a - b / 2;
    return -q1 * x * x - q2 * Q(3, 4) * b * b + l1 * a + l2 * b;
  });
}

}  // namespace honeycomb

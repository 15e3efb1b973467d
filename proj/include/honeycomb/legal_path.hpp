#pragma once

// Legal paths and cycles through the nonintegral part of a honeycomb.

#include "honeycomb/errors.hpp"
#include "honeycomb/honeycomb.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace honeycomb {

enum class Turn { Right, Left };

/// Direction of Xi_cls^sign in degrees, anticlockwise from the x-axis.
inline int ray_angle(int cls, int sign) {
  static constexpr int plus[3] = {270, 30, 150};
  return (plus[cls - 1] + (sign > 0 ? 0 : 180)) % 360;
}

/// Turn made when arriving at v along `in` and leaving along `out`; nullopt
/// when the edges are opposite at v.
inline std::optional<Turn> turn_at(const Honeycomb& h, std::size_t v, std::size_t in, std::size_t out) {
  const auto& li = h.edges()[in].line;
  const auto& lo = h.edges()[out].line;
  int heading = (ray_angle(li.cls, h.sign_at(in, static_cast<int>(v))) + 180) % 360;
  int turn = (ray_angle(lo.cls, h.sign_at(out, static_cast<int>(v))) - heading + 720) % 360;
  if (turn == 0) return std::nullopt;
  return turn > 180 ? Turn::Right : Turn::Left;
}

inline bool is_nonintegral(const Honeycomb& h, std::size_t e) { return !is_integer(h.edges()[e].line.c); }

inline bool is_dominating(const Honeycomb& h, std::size_t v, std::size_t e) {
  const auto& line = h.edges()[e].line;
  int s = h.sign_at(e, static_cast<int>(v));
  return h.w(v, line.cls, s) > h.w(v, line.cls, -s);
}

/// Edges e_i^s(v) with w_i^s(v) > w_i^{-s}(v); either none or three.
inline std::vector<std::size_t> dominating_edges(const Honeycomb& h, std::size_t v) {
  std::vector<std::size_t> out;
  for (int i = 1; i <= 3; ++i)
    for (int s : {+1, -1})
      if (h.w(v, i, s) > h.w(v, i, -s)) out.push_back(static_cast<std::size_t>(h.incident(v, i, s)));
  return out;
}

inline bool is_legal_pair(const Honeycomb& h, std::size_t v, std::size_t e, std::size_t f) {
  if (e == f || !is_nonintegral(h, e) || !is_nonintegral(h, f)) return false;
  const auto& le = h.edges()[e].line;
  const auto& lf = h.edges()[f].line;
  int se = h.sign_at(e, static_cast<int>(v)), sf = h.sign_at(f, static_cast<int>(v));
  if (le.cls == lf.cls && se == -sf) return true;
  return is_dominating(h, v, e) && is_dominating(h, v, f);
}

struct Bend {
  std::size_t at = 0;  // bend (edges[at-1], vertices[at], edges[at % k])
  Turn turn = Turn::Right;
};

/// Alternating walk v0, q1, v1, ..., qk, vk stored as vertices[0..k] and
/// edges[0..k-1]. Dummy ends of open paths are -1. In a cycle
/// vertices[0] == vertices[k] and a bend may sit at position k.
struct LegalPath {
  std::vector<int> vertices;
  std::vector<std::size_t> edges;
  bool is_cycle = false;
  std::vector<Bend> bends;
};

/// Fills in `bends` from the vertex and edge sequence.
inline void mark_bends(const Honeycomb& h, LegalPath& p) {
  p.bends.clear();
  const std::size_t k = p.edges.size();
  const std::size_t last = p.is_cycle ? k : k - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    auto t = turn_at(h, p.vertices[i], p.edges[i - 1], p.edges[i % k]);
    if (t) p.bends.push_back({i, *t});
  }
}

namespace detail {

inline auto edge_order_key(const Honeycomb& h, std::size_t v, std::size_t e) {
  const auto& line = h.edges()[e].line;
  return std::make_tuple(line.cls, h.sign_at(e, static_cast<int>(v)), line.c);
}

}  // namespace detail

/// Grows a legal path edge by edge until it leaves along a ray or closes a
/// cycle. The result has every edge at most twice (twice only in opposite
/// directions and on edges of weight above 1) and at most min(2, |div|)
/// bends per vertex.
inline LegalPath find_legal_path(const Honeycomb& h) {
  const auto& edges = h.edges();
  std::optional<std::size_t> start;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!is_nonintegral(h, e) || edges[e].line.kind() != LineKind::Ray) continue;
    auto key = [&](std::size_t x) { return std::make_tuple(edges[x].line.cls, edges[x].line.ray_sign(), edges[x].line.c); };
    if (!start || key(e) < key(*start)) start = e;
  }
  LegalPath p;
  if (start) {
    p.vertices = {-1, h.end_vertex(*start, edges[*start].line.ray_sign())};
    p.edges = {*start};
  } else {
    for (std::size_t e = 0; e < edges.size() && !start; ++e)
      if (is_nonintegral(h, e) && edges[e].line.kind() == LineKind::Finite) start = e;
    if (!start) throw Error(ErrorKind::NoNonintegralEdge, "all edges are integral");
    p.vertices = {h.end_vertex(*start, +1), h.end_vertex(*start, -1)};
    p.edges = {*start};
  }

  auto bend_count = [&](int v) {
    std::size_t n = 0;
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
      if (p.vertices[i] == v && turn_at(h, v, p.edges[i - 1], p.edges[i])) ++n;
    return n;
  };

  const std::size_t limit = 2 * edges.size() + 1;
  while (p.edges.size() <= limit) {
    const int v = p.vertices.back();
    const std::size_t e = p.edges.back();
    const auto& le = edges[e].line;
    const int se = h.sign_at(e, v);
    const std::size_t opposite = static_cast<std::size_t>(h.incident(v, le.cls, -se));

    std::optional<std::size_t> next;
    if (!is_dominating(h, v, e)) {
      next = opposite;
    } else {
      // a bend at v avoiding e hands over its outgoing edge
      for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        if (p.vertices[i] != v || !turn_at(h, v, p.edges[i - 1], p.edges[i])) continue;
        if (p.edges[i - 1] == e || p.edges[i] == e) continue;
        if (!next || detail::edge_order_key(h, v, p.edges[i]) < detail::edge_order_key(h, v, *next))
          next = p.edges[i];
      }
      if (!next && static_cast<std::int64_t>(bend_count(v)) < excess(h, v)) {
        for (auto f : dominating_edges(h, v))
          if (f != e && is_nonintegral(h, f) &&
              (!next || detail::edge_order_key(h, v, f) < detail::edge_order_key(h, v, *next)))
            next = f;
      }
      if (!next) next = opposite;
    }

    for (std::size_t j = 0; j < p.edges.size(); ++j)
      if (p.edges[j] == *next && p.vertices[j] == v) {
        LegalPath cycle;
        cycle.is_cycle = true;
        cycle.vertices.assign(p.vertices.begin() + j, p.vertices.end());
        cycle.edges.assign(p.edges.begin() + j, p.edges.end());
        mark_bends(h, cycle);
        return cycle;
      }
    p.edges.push_back(*next);
    p.vertices.push_back(h.opposite_end(*next, v));
    if (p.vertices.back() < 0) {
      mark_bends(h, p);
      return p;
    }
  }
  throw Error(ErrorKind::InvalidHoneycomb, "legal path growth did not terminate");
}

}  // namespace honeycomb

#pragma once

// Moving a unit copy of a legal path sideways by a distance eps, and finding
// how far it may move.

#include "honeycomb/errors.hpp"
#include "honeycomb/honeycomb.hpp"
#include "honeycomb/legal_path.hpp"
#include "honeycomb/potential.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace honeycomb {

enum class Direction { Right, Left };

/// Maximal straight pieces L_1..L_r of a legal path between bend (or dummy)
/// vertices u_0..u_r.
struct PathLines {
  struct Piece {
    HLine line;
    int travel = +1;  // +1 when the parameter grows from u_{i-1} to u_i
  };
  std::vector<Piece> lines;
  std::vector<int> ends;                    // u_0..u_r, -1 for a dummy
  std::vector<std::optional<Turn>> turns;   // turn at u_0..u_r
  bool is_cycle = false;
  std::map<std::size_t, int> occurrences;   // edge -> times used by the path

  std::size_t size() const { return lines.size(); }
};

/// Same path walked backwards.
inline LegalPath reversed(const Honeycomb& h, const LegalPath& p) {
  LegalPath r;
  r.is_cycle = p.is_cycle;
  r.vertices.assign(p.vertices.rbegin(), p.vertices.rend());
  r.edges.assign(p.edges.rbegin(), p.edges.rend());
  mark_bends(h, r);
  return r;
}

inline PathLines decompose(const Honeycomb& h, LegalPath p) {
  if (p.is_cycle) {
    if (p.bends.empty()) throw Error(ErrorKind::InvalidArgument, "legal cycle without bends");
    // start the cycle at a bend vertex
    const std::size_t k = p.edges.size(), b = p.bends.front().at % k;
    LegalPath q;
    q.is_cycle = true;
    for (std::size_t j = 0; j < k; ++j) {
      q.vertices.push_back(p.vertices[(b + j) % k]);
      q.edges.push_back(p.edges[(b + j) % k]);
    }
    q.vertices.push_back(q.vertices.front());
    mark_bends(h, q);
    p = std::move(q);
  }
  const std::size_t k = p.edges.size();
  PathLines pl;
  pl.is_cycle = p.is_cycle;
  for (auto e : p.edges) ++pl.occurrences[e];

  std::vector<std::size_t> cuts{0};
  for (const auto& b : p.bends)
    if (b.at < k) cuts.push_back(b.at);
  cuts.push_back(k);
  std::map<std::size_t, Turn> turn_at_pos;
  for (const auto& b : p.bends) turn_at_pos[b.at] = b.turn;

  for (std::size_t c : cuts) {
    pl.ends.push_back(p.vertices[c]);
    auto it = turn_at_pos.find(c == 0 && p.is_cycle ? k : c);
    pl.turns.push_back(it == turn_at_pos.end() ? std::nullopt : std::optional<Turn>(it->second));
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto& first = h.edges()[p.edges[cuts[i]]].line;
    HLine line{first.cls, first.c, std::nullopt, std::nullopt};
    int from = pl.ends[i], to = pl.ends[i + 1];
    int travel;
    if (from >= 0 && to >= 0) {
      Q a = line.param(h.vertices()[from]), b = line.param(h.vertices()[to]);
      travel = a < b ? +1 : -1;
      line.lo = std::min(a, b);
      line.hi = std::max(a, b);
    } else if (to >= 0) {
      // arrives from infinity along a ray
      travel = -h.sign_at(p.edges[cuts[i + 1] - 1], to);
      Q t = line.param(h.vertices()[to]);
      (travel > 0 ? line.hi : line.lo) = t;
    } else if (from >= 0) {
      travel = h.sign_at(p.edges[cuts[i]], from);
      Q t = line.param(h.vertices()[from]);
      (travel > 0 ? line.lo : line.hi) = t;
    } else {
      // no bends at all: the two rays at the ends span a full line
      int v1 = p.vertices[1];
      travel = -h.sign_at(p.edges[0], v1);
    }
    pl.lines.push_back({line, travel});
  }
  return pl;
}

/// Shift of a bend vertex where a class-p line and a class-p2 line meet, both
/// with sign `sign` at the vertex.
inline DualPoint shifted_point(const DualPoint& u, int p, int p2, int sign, const Q& eps) {
  std::array<Q, 3> d{u(1), u(2), u(3)};
  d[p - 1] -= sign * eps;
  d[p2 - 1] += sign * eps;
  return DualPoint(d[0], d[1]);
}

/// Upper bound from lines that shrink: the least length of a finite L_i with
/// right turns at both ends.
inline std::optional<Q> vanishing_bound(const PathLines& pl) {
  std::optional<Q> best;
  for (std::size_t i = 0; i < pl.size(); ++i) {
    const auto& line = pl.lines[i].line;
    if (line.kind() != LineKind::Finite) continue;
    if (pl.turns[i] != Turn::Right || pl.turns[i + 1] != Turn::Right) continue;
    if (!best || line.length() < *best) best = line.length();
  }
  return best;
}

struct Affine {
  Q c0, c1;  // c0 + c1 * eps
  Q at(const Q& eps) const { return c0 + c1 * eps; }
};

struct AffinePoint {
  std::array<Affine, 3> d;
  DualPoint at(const Q& eps) const { return DualPoint(d[0].at(eps), d[1].at(eps)); }
  bool moving() const { return d[0].c1 != 0 || d[1].c1 != 0; }

  static AffinePoint fixed(const DualPoint& p) {
    return {{Affine{p(1), 0}, Affine{p(2), 0}, Affine{p(3), 0}}};
  }
  /// Point with d_i = ci and d_j = cj.
  static AffinePoint meet(int i, const Affine& ci, int j, const Affine& cj) {
    AffinePoint out;
    out.d[i - 1] = ci;
    out.d[j - 1] = cj;
    out.d[6 - i - j - 1] = Affine{-ci.c0 - cj.c0, -ci.c1 - cj.c1};
    return out;
  }
};

struct MovingLine {
  int cls = 1;
  Affine c;
  std::optional<Affine> lo, hi;
  std::int64_t weight = 1;

  bool moving() const { return c.c1 != 0 || (lo && lo->c1 != 0) || (hi && hi->c1 != 0); }
  HLine at(const Q& eps) const {
    HLine l{cls, c.at(eps), std::nullopt, std::nullopt};
    if (lo) l.lo = lo->at(eps);
    if (hi) l.hi = hi->at(eps);
    return l;
  }
  AffinePoint point(const Affine& t) const {
    return AffinePoint::meet(cls, c, next_class(cls), t);
  }
};

/// The deformed system with every coordinate affine in eps: background edges
/// with reduced weights, the moved lines L'_i and the bend lines R_i.
struct MovingSystem {
  std::vector<MovingLine> lines;
  std::vector<AffinePoint> shifted;  // u'_0..u'_r (meaningless at dummies)

  XiSystem at(const Q& eps) const {
    XiSystem s;
    for (const auto& l : lines) s.add(l.at(eps), l.weight);
    return s;
  }
};

namespace detail {

inline MovingSystem moving_system(const Honeycomb& h, const PathLines& pl) {
  MovingSystem ms;
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto& [line, w] = h.edges()[e];
    auto it = pl.occurrences.find(e);
    std::int64_t left = w - (it == pl.occurrences.end() ? 0 : it->second);
    if (left < 0) throw Error(ErrorKind::InvalidArgument, "path uses an edge more often than its weight");
    if (left == 0) continue;
    MovingLine m{line.cls, Affine{line.c, 0}, std::nullopt, std::nullopt, left};
    if (line.lo) m.lo = Affine{*line.lo, 0};
    if (line.hi) m.hi = Affine{*line.hi, 0};
    ms.lines.push_back(std::move(m));
  }
  const std::size_t r = pl.size();
  std::vector<Affine> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = Affine{pl.lines[i].line.c, Q(pl.lines[i].travel)};

  ms.shifted.resize(r + 1);
  for (std::size_t i = 0; i <= r; ++i) {
    if (pl.ends[i] < 0) continue;
    // u_i joins L_i and L_{i+1}; for a cycle u_0 = u_r joins L_r and L_1
    std::size_t in = i == 0 ? r - 1 : i - 1, out = i == r ? 0 : i;
    int p = pl.lines[in].line.cls, p2 = pl.lines[out].line.cls;
    ms.shifted[i] = AffinePoint::meet(p, c[in], p2, c[out]);

    const DualPoint& u = h.vertices()[pl.ends[i]];
    // same point from the explicit sign rule
    int sign = pl.lines[out].travel;
    DualPoint check = shifted_point(u, p, p2, sign, Q(1));
    if (check != ms.shifted[i].at(Q(1)))
      throw Error(ErrorKind::InvalidArgument, "bend shift disagrees with the sign rule");

    int third = 6 - p - p2;
    const auto& moved = ms.shifted[i];
    Affine t_moving = moved.d[next_class(third) - 1];
    Affine t_fixed{u(next_class(third)), 0};
    MovingLine bend{third, Affine{u(third), 0}, std::nullopt, std::nullopt,
                    pl.turns[i] == Turn::Right ? 1 : -1};
    if (t_moving.c1 > 0) {
      bend.lo = t_fixed;
      bend.hi = t_moving;
    } else {
      bend.lo = t_moving;
      bend.hi = t_fixed;
    }
    if (i == r && pl.is_cycle) continue;  // u_r is u_0
    ms.lines.push_back(std::move(bend));
  }
  if (pl.is_cycle) ms.shifted[r] = ms.shifted[0];

  for (std::size_t i = 0; i < r; ++i) {
    int p = pl.lines[i].line.cls;
    MovingLine m{p, c[i], std::nullopt, std::nullopt, 1};
    std::optional<Affine> from, to;
    if (pl.ends[i] >= 0) from = ms.shifted[i].d[next_class(p) - 1];
    if (pl.ends[i + 1] >= 0) to = ms.shifted[i + 1].d[next_class(p) - 1];
    if (pl.lines[i].travel > 0) {
      m.lo = from;
      m.hi = to;
    } else {
      m.lo = to;
      m.hi = from;
    }
    ms.lines.push_back(std::move(m));
  }
  return ms;
}

inline PathLines oriented(const Honeycomb& h, const LegalPath& p, Direction dir) {
  return decompose(h, dir == Direction::Right ? p : reversed(h, p));
}

}  // namespace detail

/// Pre-honeycomb obtained by moving the path by eps to the given side.
inline XiSystem build_deformed_system(const Honeycomb& h, const LegalPath& p, const Q& eps, Direction dir) {
  auto pl = detail::oriented(h, p, dir);
  auto bound = vanishing_bound(pl);
  if (eps < 0 || (bound && eps > *bound)) throw Error(ErrorKind::EpsilonOutOfRange, "eps outside [0, shortest shrinking line]");
  return detail::moving_system(h, pl).at(eps);
}

enum class StopKind { BoundaryIntegral, OppositeSignsMerge, HitsIntegerVertex, LineVanishes, ValidityBound };

inline const char* to_string(StopKind k) {
  switch (k) {
    case StopKind::BoundaryIntegral: return "E1_boundary_integral";
    case StopKind::OppositeSignsMerge: return "E2_opposite_signs_merge";
    case StopKind::HitsIntegerVertex: return "E3_hits_integer_vertex";
    case StopKind::LineVanishes: return "EPS0_line_vanishes";
    case StopKind::ValidityBound: return "EPS1_validity_bound";
  }
  return "unknown";
}

struct StopEvent {
  Q eps;
  std::vector<StopKind> kinds;

  bool has(StopKind k) const { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); }
};

namespace detail {

inline bool within(const MovingLine& l, const Affine& t, const Q& eps) {
  Q v = t.at(eps);
  return (!l.lo || l.lo->at(eps) <= v) && (!l.hi || v <= l.hi->at(eps));
}

inline bool on_line(const MovingLine& l, const AffinePoint& p, const Q& eps) {
  return within(l, p.d[next_class(l.cls) - 1], eps);
}

// Root of a(eps) = b(eps) if it is positive and at most `cap`.
inline std::optional<Q> crossing_time(const Affine& a, const Affine& b, const std::optional<Q>& cap) {
  Q slope = a.c1 - b.c1;
  if (slope == 0) return std::nullopt;
  Q t = (b.c0 - a.c0) / slope;
  if (t <= 0 || (cap && t > *cap)) return std::nullopt;
  return t;
}

/// All eps in (0, cap] at which the combinatorics of the moving system can
/// change, sorted and without duplicates.
inline std::vector<Q> event_candidates(const MovingSystem& ms, const std::optional<Q>& cap) {
  std::vector<Q> out;
  const auto& L = ms.lines;

  struct Probe {
    AffinePoint at;
    int line_a = -1, line_b = -1;  // lines that must contain the point
  };
  std::vector<Probe> probes;
  std::map<DualPoint, bool> fixed_seen;
  for (std::size_t a = 0; a < L.size(); ++a)
    for (const auto& end : {L[a].lo, L[a].hi}) {
      if (!end) continue;
      AffinePoint p = L[a].point(*end);
      if (!p.moving()) {
        if (fixed_seen.emplace(p.at(Q(0)), true).second) probes.push_back({p, -1, -1});
        continue;
      }
      probes.push_back({p, static_cast<int>(a), -1});
    }
  for (std::size_t a = 0; a < L.size(); ++a) {
    if (!L[a].moving()) continue;
    for (std::size_t b = 0; b < L.size(); ++b) {
      if (L[b].cls == L[a].cls || (L[b].moving() && b < a)) continue;
      if (!L[b].moving()) continue;  // crossings with fixed lines come from the point-on-line test
      probes.push_back({AffinePoint::meet(L[a].cls, L[a].c, L[b].cls, L[b].c), static_cast<int>(a), static_cast<int>(b)});
    }
  }

  for (const auto& pr : probes) {
    for (std::size_t l = 0; l < L.size(); ++l) {
      if (static_cast<int>(l) == pr.line_a || static_cast<int>(l) == pr.line_b) continue;
      if (!pr.at.moving() && !L[l].moving()) continue;
      auto t = crossing_time(pr.at.d[L[l].cls - 1], L[l].c, cap);
      if (!t) continue;
      if (!on_line(L[l], pr.at, *t)) continue;
      if (pr.line_a >= 0 && !on_line(L[pr.line_a], pr.at, *t)) continue;
      if (pr.line_b >= 0 && !on_line(L[pr.line_b], pr.at, *t)) continue;
      out.push_back(*t);
    }
  }
  for (std::size_t a = 0; a < L.size(); ++a) {
    if (!L[a].moving()) continue;
    if (L[a].lo && L[a].hi)
      if (auto t = crossing_time(*L[a].lo, *L[a].hi, cap)) out.push_back(*t);
    for (std::size_t b = 0; b < L.size(); ++b) {
      if (b == a || L[b].cls != L[a].cls) continue;
      if (auto t = crossing_time(L[a].c, L[b].c, cap)) out.push_back(*t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::int64_t incident_weight(const Honeycomb& h, const DualPoint& p) {
  int v = h.vertex_index(p);
  if (v < 0) return 0;
  std::int64_t total = 0;
  for (int i = 1; i <= 3; ++i)
    for (int s : {+1, -1}) total += h.w(v, i, s);
  return total;
}

}  // namespace detail

struct DeformResult {
  Honeycomb honeycomb;
  StopEvent stop;
  Potential before, after;
};

/// Moves the path until the potential drops, a moved line vanishes, an end
/// line becomes integral or the system stops being a pre-honeycomb.
inline DeformResult deform(const Honeycomb& h, const LegalPath& p, Direction dir) {
  auto pl = detail::oriented(h, p, dir);
  auto ms = detail::moving_system(h, pl);

  std::optional<Q> eps0 = vanishing_bound(pl), eps_e1;
  if (!pl.is_cycle)
    for (const auto* piece : {&pl.lines.front(), &pl.lines.back()}) {
      const Q& c = piece->line.c;
      Q t = piece->travel > 0 ? ceil(c) - c : c - floor(c);
      if (t == 0) t = 1;
      if (!eps_e1 || t < *eps_e1) eps_e1 = t;
    }
  std::optional<Q> cap = eps0;
  if (eps_e1 && (!cap || *eps_e1 < *cap)) cap = eps_e1;
  if (!cap) throw Error(ErrorKind::InvalidArgument, "deformation has no finite bound");

  auto times = detail::event_candidates(ms, cap);
  if (times.empty() || times.back() != *cap) times.push_back(*cap);

  DeformResult res;
  res.before = potential(h);
  std::vector<DualPoint> integral;
  for (const auto& v : h.vertices())
    if (v.integral()) integral.push_back(v);

  Q prev(0);
  for (const auto& t : times) {
    auto mid = ms.at((prev + t) / 2);
    bool valid = is_prehoneycomb(mid);
    XiSystem sys;
    if (valid) {
      sys = ms.at(t);
      valid = is_prehoneycomb(sys);
    }
    if (!valid) {
      if (prev == 0) throw Error(ErrorKind::NotPreHoneycomb, "deformed system is invalid for every positive eps");
      res.honeycomb = canonicalize(ms.at(prev));
      res.stop = {prev, {StopKind::ValidityBound}};
      break;
    }
    Honeycomb moved = canonicalize(sys);
    Potential pot = potential(moved);
    bool bound_hit = t == *cap;
    if (!bound_hit && pot.eta() >= res.before.eta()) {
      prev = t;
      continue;
    }
    res.honeycomb = std::move(moved);
    res.stop.eps = t;
    if (eps_e1 && t == *eps_e1) res.stop.kinds.push_back(StopKind::BoundaryIntegral);
    if (pot.delta < res.before.delta) res.stop.kinds.push_back(StopKind::OppositeSignsMerge);
    for (const auto& v : integral)
      if (detail::incident_weight(res.honeycomb, v) > detail::incident_weight(h, v)) {
        res.stop.kinds.push_back(StopKind::HitsIntegerVertex);
        break;
      }
    if (eps0 && t == *eps0) res.stop.kinds.push_back(StopKind::LineVanishes);
    break;
  }
  res.after = potential(res.honeycomb);
  return res;
}

/// Open paths move right; a cycle moves to the side where two consecutive
/// bends turn right.
inline Direction choose_direction(const LegalPath& p) {
  if (!p.is_cycle) return Direction::Right;
  const auto& b = p.bends;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].turn == Turn::Right && b[(i + 1) % b.size()].turn == Turn::Right) return Direction::Right;
  return Direction::Left;
}

}  // namespace honeycomb

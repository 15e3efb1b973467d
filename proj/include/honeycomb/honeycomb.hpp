#pragma once

// Xi-systems, pre-honeycombs and honeycombs in exact dual coordinates.
//
// A point is stored by its dual coordinates d1, d2, d3 (d1 + d2 + d3 = 0).
// A Xi_i-line keeps d_i constant. Points on it are parametrised by
// t = d_{i+1}; walking along the half-line Xi_i^+(v) increases d_{i+1} and
// decreases d_{i-1} at the same rate, so parameter differences equal the
// scaled euclidean length used throughout.

#include "honeycomb/errors.hpp"
#include "honeycomb/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace honeycomb {

/// Class indices are 1, 2, 3 and wrap around.
inline int next_class(int i) { return i % 3 + 1; }
inline int prev_class(int i) { return (i + 1) % 3 + 1; }

class DualPoint {
 public:
  DualPoint() : d_{Q(0), Q(0), Q(0)} {}
  DualPoint(Q d1, Q d2) : d_{d1, d2, -d1 - d2} {}

  /// Point with d_i = ci and d_{i+1} = t.
  static DualPoint on_class(int i, const Q& ci, const Q& t) {
    std::array<Q, 3> d;
    d[i - 1] = ci;
    d[next_class(i) - 1] = t;
    d[prev_class(i) - 1] = -ci - t;
    return DualPoint(d[0], d[1]);
  }

  const Q& operator()(int i) const { return d_[i - 1]; }
  const Q& d1() const { return d_[0]; }
  const Q& d2() const { return d_[1]; }
  const Q& d3() const { return d_[2]; }

  bool integral() const { return is_integer(d_[0]) && is_integer(d_[1]); }

  friend bool operator==(const DualPoint& x, const DualPoint& y) { return x.d_[0] == y.d_[0] && x.d_[1] == y.d_[1]; }
  friend bool operator!=(const DualPoint& x, const DualPoint& y) { return !(x == y); }
  friend bool operator<(const DualPoint& x, const DualPoint& y) {
    if (x.d_[0] != y.d_[0]) return x.d_[0] < y.d_[0];
    return x.d_[1] < y.d_[1];
  }

 private:
  std::array<Q, 3> d_;
};

enum class LineKind { Finite, Ray, Full };

/// Part of a Xi_cls-line: parameters t in [lo, hi], with nullopt standing for
/// an infinite end.
struct HLine {
  int cls = 1;
  Q c;
  std::optional<Q> lo;
  std::optional<Q> hi;

  static HLine full(int cls, Q c) { return HLine{cls, std::move(c), std::nullopt, std::nullopt}; }

  /// Half-line Xi_cls^sign(v).
  static HLine ray(const DualPoint& v, int cls, int sign) {
    Q t = v(next_class(cls));
    if (sign > 0) return HLine{cls, v(cls), t, std::nullopt};
    return HLine{cls, v(cls), std::nullopt, t};
  }

  /// Finite segment between two distinct points sharing one dual coordinate.
  static HLine segment(const DualPoint& u, const DualPoint& v) {
    for (int i = 1; i <= 3; ++i)
      if (u(i) == v(i)) {
        Q tu = u(next_class(i)), tv = v(next_class(i));
        if (tu == tv) break;
        return HLine{i, u(i), std::min(tu, tv), std::max(tu, tv)};
      }
    throw Error(ErrorKind::InvalidArgument, "segment ends are not on a common Xi-line");
  }

  LineKind kind() const {
    if (lo && hi) return LineKind::Finite;
    if (lo || hi) return LineKind::Ray;
    return LineKind::Full;
  }

  /// Sign of a ray at its end (+1 for Xi^+, -1 for Xi^-); 0 otherwise.
  int ray_sign() const {
    if (lo && !hi) return +1;
    if (hi && !lo) return -1;
    return 0;
  }

  DualPoint point_at(const Q& t) const { return DualPoint::on_class(cls, c, t); }
  Q param(const DualPoint& p) const { return p(next_class(cls)); }
  bool on_support(const DualPoint& p) const { return p(cls) == c; }

  bool contains_param(const Q& t) const { return (!lo || *lo <= t) && (!hi || t <= *hi); }
  bool contains(const DualPoint& p) const { return on_support(p) && contains_param(param(p)); }

  /// Finite end points, lower parameter first.
  std::vector<DualPoint> ends() const {
    std::vector<DualPoint> out;
    if (lo) out.push_back(point_at(*lo));
    if (hi) out.push_back(point_at(*hi));
    return out;
  }

  /// Scaled length of a finite line.
  Q length() const { return *hi - *lo; }

  friend bool operator==(const HLine& x, const HLine& y) {
    return x.cls == y.cls && x.c == y.c && x.lo == y.lo && x.hi == y.hi;
  }
  friend bool operator<(const HLine& x, const HLine& y) {
    if (x.cls != y.cls) return x.cls < y.cls;
    if (x.c != y.c) return x.c < y.c;
    // -infinity sorts first on the low end, +infinity last on the high end
    if (x.lo != y.lo) return !x.lo || (y.lo && *x.lo < *y.lo);
    if (x.hi != y.hi) return y.hi.has_value() ? (x.hi && *x.hi < *y.hi) : true;
    return false;
  }
};

struct WeightedLine {
  HLine line;
  std::int64_t weight = 1;
};

struct XiSystem {
  std::vector<WeightedLine> lines;

  void add(HLine line, std::int64_t weight) { lines.push_back({std::move(line), weight}); }
};

/// The six numbers w_i^s(v).
struct RayWeights {
  std::array<std::int64_t, 6> w{};

  std::int64_t& at(int cls, int sign) { return w[2 * (cls - 1) + (sign > 0 ? 0 : 1)]; }
  std::int64_t at(int cls, int sign) const { return w[2 * (cls - 1) + (sign > 0 ? 0 : 1)]; }

  int nonzero() const {
    return static_cast<int>(std::count_if(w.begin(), w.end(), [](std::int64_t x) { return x != 0; }));
  }
  bool balanced() const {
    auto d = at(1, +1) - at(1, -1);
    return at(2, +1) - at(2, -1) == d && at(3, +1) - at(3, -1) == d;
  }
  bool nonnegative() const {
    return std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x >= 0; });
  }
  std::int64_t divergency() const { return at(1, +1) - at(1, -1); }
  bool operator==(const RayWeights&) const = default;
};

/// w_i^s(v): total weight of lines meeting Xi_i^s(v) in a nondegenerate piece
/// that starts at v.
inline RayWeights ray_weights(const XiSystem& s, const DualPoint& v) {
  RayWeights out;
  for (const auto& [line, weight] : s.lines) {
    if (!line.on_support(v)) continue;
    Q t = line.param(v);
    if ((!line.lo || *line.lo <= t) && (!line.hi || t < *line.hi)) out.at(line.cls, +1) += weight;
    if ((!line.lo || *line.lo < t) && (!line.hi || t <= *line.hi)) out.at(line.cls, -1) += weight;
  }
  return out;
}

namespace detail {

/// Collinear lines of one support merged into a piecewise constant weight.
struct LineGroup {
  int cls = 1;
  Q c;
  std::vector<Q> breaks;               // strictly increasing
  std::vector<std::int64_t> weight;    // weight[j] on (breaks[j-1], breaks[j])
  std::optional<Q> support_lo, support_hi;  // closure of the nonzero part

  std::int64_t above(const Q& t) const {
    return weight[std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin()];
  }
  std::int64_t below(const Q& t) const {
    return weight[std::lower_bound(breaks.begin(), breaks.end(), t) - breaks.begin()];
  }
  bool in_support(const Q& t) const {
    return (!support_lo || *support_lo <= t) && (!support_hi || t <= *support_hi);
  }
};

using GroupKey = std::pair<int, Q>;

/// Everything needed to check the pre-honeycomb conditions and to read off
/// the canonical honeycomb: merged supports, all probe points (breakpoints
/// and crossings) with their ray weights.
struct Arrangement {
  std::map<GroupKey, LineGroup> groups;
  std::vector<std::pair<DualPoint, RayWeights>> probes;
  bool prehoneycomb = true;
  std::string defect;

  RayWeights weights_at(const DualPoint& p) const {
    RayWeights r;
    for (int i = 1; i <= 3; ++i) {
      auto it = groups.find({i, p(i)});
      if (it == groups.end()) continue;
      Q t = p(next_class(i));
      r.at(i, +1) = it->second.above(t);
      r.at(i, -1) = it->second.below(t);
    }
    return r;
  }
};

inline Arrangement analyze(const XiSystem& sys) {
  Arrangement arr;
  std::map<GroupKey, std::pair<std::int64_t, std::map<Q, std::int64_t>>> raw;
  for (const auto& [line, weight] : sys.lines) {
    if (weight == 0) continue;
    if (line.lo && line.hi && *line.lo >= *line.hi) continue;  // degenerate
    auto& [base, delta] = raw[{line.cls, line.c}];
    if (line.lo) delta[*line.lo] += weight;
    else base += weight;
    if (line.hi) delta[*line.hi] -= weight;
  }
  for (auto& [key, data] : raw) {
    auto& [base, delta] = data;
    LineGroup g;
    g.cls = key.first;
    g.c = key.second;
    std::int64_t run = base;
    g.weight.push_back(run);
    for (const auto& [t, d] : delta) {
      if (d == 0) continue;
      run += d;
      g.breaks.push_back(t);
      g.weight.push_back(run);
    }
    std::size_t first = g.weight.size(), last = 0;
    for (std::size_t j = 0; j < g.weight.size(); ++j) {
      if (g.weight[j] < 0 && arr.prehoneycomb) {
        arr.prehoneycomb = false;
        arr.defect = "negative weight along a line";
      }
      if (g.weight[j] != 0) {
        first = std::min(first, j);
        last = j;
      }
    }
    if (first == g.weight.size()) continue;  // cancels out entirely
    if (first > 0) g.support_lo = g.breaks[first - 1];
    if (last < g.breaks.size()) g.support_hi = g.breaks[last];
    arr.groups.emplace(key, std::move(g));
  }

  std::vector<DualPoint> pts;
  std::array<std::vector<const LineGroup*>, 3> by_class;
  for (const auto& [key, g] : arr.groups) {
    by_class[g.cls - 1].push_back(&g);
    for (const auto& t : g.breaks) pts.push_back(DualPoint::on_class(g.cls, g.c, t));
  }
  // crossings of supports of different classes; groups within a class are
  // sorted by constant coordinate, so the admissible partners form a range
  for (int i = 1; i <= 3; ++i)
    for (const LineGroup* a : by_class[i - 1]) {
      for (int j : {next_class(i), prev_class(i)}) {
        if (j < i) continue;
        const auto& others = by_class[j - 1];
        // admissible range of c_b so that the crossing lies in a's support
        std::optional<Q> lo, hi;
        if (j == next_class(i)) {
          lo = a->support_lo;
          hi = a->support_hi;
        } else {
          if (a->support_hi) lo = -a->c - *a->support_hi;
          if (a->support_lo) hi = -a->c - *a->support_lo;
        }
        auto begin = others.begin();
        if (lo) begin = std::lower_bound(others.begin(), others.end(), *lo,
                                         [](const LineGroup* g, const Q& v) { return g->c < v; });
        for (auto it = begin; it != others.end(); ++it) {
          const LineGroup* b = *it;
          if (hi && b->c > *hi) break;
          std::array<Q, 3> d;
          d[i - 1] = a->c;
          d[j - 1] = b->c;
          int k = 6 - i - j;
          d[k - 1] = -a->c - b->c;
          DualPoint p(d[0], d[1]);
          if (b->in_support(p(next_class(j)))) pts.push_back(std::move(p));
        }
      }
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  arr.probes.reserve(pts.size());
  for (auto& p : pts) {
    RayWeights r = arr.weights_at(p);
    if (arr.prehoneycomb && !(r.nonnegative() && r.balanced())) {
      arr.prehoneycomb = false;
      arr.defect = "zero-tension or nonnegativity violated at a point";
    }
    arr.probes.emplace_back(std::move(p), r);
  }
  return arr;
}

}  // namespace detail

inline bool is_prehoneycomb(const XiSystem& s) { return detail::analyze(s).prehoneycomb; }

struct HEdge {
  HLine line;
  std::int64_t weight = 1;

  friend bool operator==(const HEdge& x, const HEdge& y) { return x.weight == y.weight && x.line == y.line; }
};

class Honeycomb {
 public:
  Honeycomb() = default;

  /// Builds the incidence structure. Vertices and edges are sorted into
  /// canonical order; every finite end of an edge must be a listed vertex.
  static Honeycomb assemble(std::vector<DualPoint> vertices, std::vector<HEdge> edges) {
    Honeycomb h;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(edges.begin(), edges.end(), [](const HEdge& x, const HEdge& y) { return x.line < y.line; });
    h.vertices_ = std::move(vertices);
    h.edges_ = std::move(edges);
    h.incident_.assign(h.vertices_.size(), std::array<int, 6>{-1, -1, -1, -1, -1, -1});
    h.ends_.resize(h.edges_.size(), {-1, -1});
    for (std::size_t e = 0; e < h.edges_.size(); ++e) {
      const auto& [line, w] = h.edges_[e];
      if (w <= 0) throw Error(ErrorKind::InvalidHoneycomb, "edge weight must be positive");
      if (line.lo && line.hi && *line.lo >= *line.hi)
        throw Error(ErrorKind::InvalidHoneycomb, "edge of zero length");
      auto attach = [&](const Q& t, int sign, int& slot) {
        int v = h.vertex_index(line.point_at(t));
        if (v < 0) throw Error(ErrorKind::InvalidHoneycomb, "edge end is not a vertex");
        int& inc = h.incident_[v][2 * (line.cls - 1) + (sign > 0 ? 0 : 1)];
        if (inc >= 0) throw Error(ErrorKind::InvalidHoneycomb, "two edges leave a vertex in one direction");
        inc = static_cast<int>(e);
        slot = v;
      };
      if (line.lo) attach(*line.lo, +1, h.ends_[e][0]);
      if (line.hi) attach(*line.hi, -1, h.ends_[e][1]);
    }
    return h;
  }

  const std::vector<DualPoint>& vertices() const { return vertices_; }
  const std::vector<HEdge>& edges() const { return edges_; }

  int vertex_index(const DualPoint& p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
    if (it == vertices_.end() || *it != p) return -1;
    return static_cast<int>(it - vertices_.begin());
  }

  /// Vertex at the end of `edge` from which the edge leaves with the given
  /// sign (+1: the low end), or -1 for an infinite end.
  int end_vertex(std::size_t edge, int sign) const { return ends_[edge][sign > 0 ? 0 : 1]; }

  /// Other end of `edge` seen from vertex `v` (-1 when infinite).
  int opposite_end(std::size_t edge, int v) const {
    return ends_[edge][0] == v ? ends_[edge][1] : ends_[edge][0];
  }

  /// Sign of `edge` at its end vertex `v`.
  int sign_at(std::size_t edge, int v) const { return ends_[edge][0] == v ? +1 : -1; }

  /// Edge e_i^s(v), or -1.
  int incident(std::size_t v, int cls, int sign) const { return incident_[v][2 * (cls - 1) + (sign > 0 ? 0 : 1)]; }

  std::int64_t w(std::size_t v, int cls, int sign) const {
    int e = incident(v, cls, sign);
    return e < 0 ? 0 : edges_[e].weight;
  }

  RayWeights ray_weights_at(std::size_t v) const {
    RayWeights r;
    for (int i = 1; i <= 3; ++i)
      for (int s : {+1, -1}) r.at(i, s) = w(v, i, s);
    return r;
  }

  std::int64_t divergency(std::size_t v) const { return w(v, 1, +1) - w(v, 1, -1); }

  int degree(std::size_t v) const {
    return static_cast<int>(std::count_if(incident_[v].begin(), incident_[v].end(), [](int e) { return e >= 0; }));
  }

  XiSystem as_system() const {
    XiSystem s;
    for (const auto& e : edges_) s.add(e.line, e.weight);
    return s;
  }

  friend bool operator==(const Honeycomb& x, const Honeycomb& y) {
    return x.vertices_ == y.vertices_ && x.edges_ == y.edges_;
  }

 private:
  std::vector<DualPoint> vertices_;
  std::vector<HEdge> edges_;
  std::vector<std::array<int, 6>> incident_;
  std::vector<std::array<int, 2>> ends_;
};

/// The unique honeycomb with the same ray weights everywhere as the given
/// pre-honeycomb.
inline Honeycomb canonicalize(const XiSystem& s) {
  auto arr = detail::analyze(s);
  if (!arr.prehoneycomb) throw Error(ErrorKind::NotPreHoneycomb, arr.defect);

  std::vector<DualPoint> vertices;
  std::map<detail::GroupKey, std::vector<Q>> stops;
  for (const auto& [p, r] : arr.probes) {
    if (r.nonzero() < 3) continue;
    vertices.push_back(p);
    for (int i = 1; i <= 3; ++i) {
      auto key = detail::GroupKey{i, p(i)};
      if (arr.groups.count(key)) stops[key].push_back(p(next_class(i)));
    }
  }

  std::vector<HEdge> edges;
  for (const auto& [key, g] : arr.groups) {
    auto& ts = stops[key];
    std::sort(ts.begin(), ts.end());
    if (ts.empty()) {
      // no vertex on this support: the weight is constant along it
      if (g.weight.front() > 0) edges.push_back({HLine::full(g.cls, g.c), g.weight.front()});
      continue;
    }
    auto emit = [&](std::optional<Q> lo, std::optional<Q> hi, std::int64_t weight) {
      if (weight > 0) edges.push_back({HLine{g.cls, g.c, std::move(lo), std::move(hi)}, weight});
    };
    emit(std::nullopt, ts.front(), g.below(ts.front()));
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      auto wl = g.above(ts[j]);
      if (wl != g.below(ts[j + 1])) throw Error(ErrorKind::NotPreHoneycomb, "weight jumps away from a vertex");
      emit(ts[j], ts[j + 1], wl);
    }
    emit(ts.back(), std::nullopt, g.above(ts.back()));
  }
  return Honeycomb::assemble(std::move(vertices), std::move(edges));
}

/// Throws InvalidHoneycomb unless h satisfies the honeycomb axioms and is in
/// canonical form.
inline void validate_honeycomb(const Honeycomb& h) {
  if (h.vertices().empty()) throw Error(ErrorKind::InvalidHoneycomb, "no vertices");
  for (const auto& e : h.edges())
    if (e.line.kind() == LineKind::Full) throw Error(ErrorKind::InvalidHoneycomb, "fully infinite edge");
  for (std::size_t v = 0; v < h.vertices().size(); ++v)
    if (h.degree(v) < 3) throw Error(ErrorKind::InvalidHoneycomb, "vertex of degree below 3");
  auto sys = h.as_system();
  if (!is_prehoneycomb(sys)) throw Error(ErrorKind::InvalidHoneycomb, "edges do not form a pre-honeycomb");
  if (!(canonicalize(sys) == h)) throw Error(ErrorKind::InvalidHoneycomb, "not in canonical form");
}

inline std::int64_t divergency(const Honeycomb& h, std::size_t v) { return h.divergency(v); }
inline std::int64_t excess(const Honeycomb& h, std::size_t v) {
  auto d = h.divergency(v);
  return d < 0 ? -d : d;
}

struct BoundaryPartition {
  /// Edge ids of B_i^s, indexed [i-1][0 for +, 1 for -].
  std::array<std::array<std::vector<std::size_t>, 2>, 3> rays;
  std::array<std::array<std::int64_t, 2>, 3> weight{};
  std::int64_t flow = 0;  // common value of w(B_i^+) - w(B_i^-)

  const std::vector<std::size_t>& of(int cls, int sign) const { return rays[cls - 1][sign > 0 ? 0 : 1]; }
  std::int64_t weight_of(int cls, int sign) const { return weight[cls - 1][sign > 0 ? 0 : 1]; }
};

inline BoundaryPartition boundary_partition(const Honeycomb& h) {
  BoundaryPartition bp;
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto& [line, w] = h.edges()[e];
    int s = line.ray_sign();
    if (s == 0) continue;
    bp.rays[line.cls - 1][s > 0 ? 0 : 1].push_back(e);
    bp.weight[line.cls - 1][s > 0 ? 0 : 1] += w;
  }
  bp.flow = bp.weight[0][0] - bp.weight[0][1];
  for (int i = 1; i < 3; ++i)
    if (bp.weight[i][0] - bp.weight[i][1] != bp.flow)
      throw Error(ErrorKind::InvalidHoneycomb, "boundary flows differ between classes");
  return bp;
}

struct NonintegralSets {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
};

inline NonintegralSets nonintegral_sets(const Honeycomb& h) {
  NonintegralSets out;
  for (std::size_t v = 0; v < h.vertices().size(); ++v) {
    const auto& p = h.vertices()[v];
    int fractional = 0;
    for (int i = 1; i <= 3; ++i) fractional += is_integer(p(i)) ? 0 : 1;
    if (fractional == 1) throw Error(ErrorKind::InvalidHoneycomb, "single nonintegral dual coordinate");
    if (fractional > 0) out.vertices.push_back(v);
  }
  for (std::size_t e = 0; e < h.edges().size(); ++e)
    if (!is_integer(h.edges()[e].line.c)) out.edges.push_back(e);
  return out;
}

/// Honeycomb of the union of both edge sets.
inline Honeycomb sum(const Honeycomb& x, const Honeycomb& y) {
  XiSystem s = x.as_system();
  for (const auto& e : y.edges()) s.add(e.line, e.weight);
  return canonicalize(s);
}

}  // namespace honeycomb

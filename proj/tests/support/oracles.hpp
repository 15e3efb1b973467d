#pragma once

// Independent checks used as test oracles.

#include "honeycomb/legal_path.hpp"

#include <map>
#include <string>

namespace oracles {

using namespace honeycomb;

/// Empty string when `p` is a legal path or cycle with the counting
/// properties guaranteed by the growth procedure; otherwise a reason.
inline std::string legal_path_defect(const Honeycomb& h, const LegalPath& p) {
  const std::size_t k = p.edges.size();
  if (k == 0 || p.vertices.size() != k + 1) return "bad sizes";
  for (std::size_t i = 0; i < k; ++i) {
    auto e = p.edges[i];
    int a = p.vertices[i], b = p.vertices[i + 1];
    const auto& line = h.edges()[e].line;
    if (is_integer(line.c)) return "integral edge on path";
    if (a < 0 && b < 0) return "edge between two dummies";
    if (a >= 0 && h.opposite_end(e, a) != b) return "edge does not join its path vertices";
    if (a < 0 && h.opposite_end(e, b) != -1) return "dummy next to a finite edge";
    if (b < 0 && h.opposite_end(e, a) != -1) return "dummy next to a finite edge";
    if ((a < 0 || b < 0) && line.kind() != LineKind::Ray) return "dummy without a ray";
    if (a < 0 && i != 0) return "dummy inside path";
    if (b < 0 && i + 1 != k) return "dummy inside path";
  }
  if (p.is_cycle) {
    if (p.vertices.front() != p.vertices.back() || p.vertices.front() < 0) return "cycle does not close";
  } else {
    if (p.vertices.front() >= 0 || p.vertices.back() >= 0 || k < 2) return "open path without two rays";
  }
  const std::size_t pairs = p.is_cycle ? k : k - 1;
  std::map<int, int> bends;
  for (std::size_t i = 1; i <= pairs; ++i) {
    auto v = static_cast<std::size_t>(p.vertices[i]);
    auto e = p.edges[i - 1], f = p.edges[i % k];
    if (!is_legal_pair(h, v, e, f)) return "illegal pair at position " + std::to_string(i);
    const auto& le = h.edges()[e].line;
    const auto& lf = h.edges()[f].line;
    bool opposite = le.cls == lf.cls && h.sign_at(e, v) == -h.sign_at(f, v);
    if (!opposite) ++bends[p.vertices[i]];
  }
  for (const auto& [v, n] : bends)
    if (n > std::min<std::int64_t>(2, excess(h, v))) return "too many bends at a vertex";
  std::map<std::size_t, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < k; ++i) seen[p.edges[i]].push_back(i);
  for (const auto& [e, at] : seen) {
    if (at.size() > 2) return "edge used more than twice";
    if (at.size() == 2) {
      // q_i = q_j with i < j must be traversed backwards the second time
      if (p.vertices[at[0] + 1] != p.vertices[at[1]]) return "edge repeated in the same direction";
      if (h.edges()[e].weight < 2) return "unit edge repeated";
    }
  }
  std::size_t listed = 0;
  for (const auto& [v, n] : bends) listed += n;
  if (listed != p.bends.size()) return "bend list out of date";
  return {};
}

/// Some two cyclically consecutive bends turn the same way.
inline bool has_equal_consecutive_turns(const LegalPath& p) {
  const auto& b = p.bends;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].turn == b[(i + 1) % b.size()].turn) return true;
  return false;
}

}  // namespace oracles

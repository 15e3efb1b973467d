#pragma once

// Rounding a concave cocirculation to an integer one that keeps every
// integral boundary value and every fully integral little triangle.

#include "honeycomb/deformation.hpp"
#include "honeycomb/duality.hpp"
#include "honeycomb/errors.hpp"
#include "honeycomb/legal_path.hpp"
#include "honeycomb/potential.hpp"

#include <functional>
#include <vector>

namespace honeycomb {

struct TraceStep {
  Q eps;
  std::vector<StopKind> kinds;
  Potential before, after;
  bool cycle = false;
  Direction direction = Direction::Right;
  std::size_t path_edges = 0;
};

struct IntegralizeResult {
  Cocirculation h;
  std::vector<TraceStep> trace;
  Potential initial, final;
};

/// Called after each step with the honeycomb before the step, the path, the
/// direction and the result.
using StepObserver = std::function<void(const Honeycomb&, const LegalPath&, Direction, const DeformResult&)>;

inline IntegralizeResult integralize(const ConvexGrid& g, const Cocirculation& h, const StepObserver& observe = {}) {
  Honeycomb hc = grid_to_honeycomb(g, h);
  IntegralizeResult res;
  res.initial = potential(hc);
  // eta drops by at least one per step and never goes below -2|E(G)|
  const std::int64_t cap = res.initial.eta() + 2 * static_cast<std::int64_t>(g.edges().size()) + 1;
  Potential now = res.initial;
  while (now.beta + now.delta > 0) {
    if (static_cast<std::int64_t>(res.trace.size()) > cap)
      throw Error(ErrorKind::InvalidHoneycomb, "potential failed to drop");
    auto path = find_legal_path(hc);
    auto dir = choose_direction(path);
    auto step = deform(hc, path, dir);
    res.trace.push_back({step.stop.eps, step.stop.kinds, step.before, step.after, path.is_cycle, dir, path.edges.size()});
    if (observe) observe(hc, path, dir, step);
    hc = std::move(step.honeycomb);
    now = step.after;
  }
  res.final = now;
  auto inst = honeycomb_to_grid(hc);
  GridPoint shift = g.anchor() - inst.grid.anchor();
  if (!(inst.grid.translated(shift) == g)) throw Error(ErrorKind::InvalidHoneycomb, "grid changed during rounding");
  res.h = inst.h.translated(shift);
  return res;
}

/// Every step lowered eta, and the number of steps stays within
/// beta_0 + delta_0 + |E(G)|.
inline bool iteration_bound_check(const std::vector<TraceStep>& trace, std::size_t grid_edges) {
  if (trace.empty()) return true;
  for (const auto& s : trace)
    if (s.after.eta() >= s.before.eta()) return false;
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (!(trace[i].before == trace[i - 1].after)) return false;
  const auto& first = trace.front().before;
  auto drop = first.eta() - trace.back().after.eta();
  auto steps = static_cast<std::int64_t>(trace.size());
  return steps <= drop && steps <= first.beta + first.delta + static_cast<std::int64_t>(grid_edges);
}

}  // namespace honeycomb

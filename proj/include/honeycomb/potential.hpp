#pragma once

#include "honeycomb/honeycomb.hpp"

#include <cstdint>

namespace honeycomb {

/// eta = beta + delta - omega, the quantity that drops at every deformation.
struct Potential {
  std::int64_t beta = 0;   // weight of nonintegral rays
  std::int64_t delta = 0;  // total excess of nonintegral vertices
  std::int64_t omega = 0;  // summed over integral vertices: weight of incident edges
  std::int64_t eta() const { return beta + delta - omega; }
  bool operator==(const Potential&) const = default;
};

inline Potential potential(const Honeycomb& h) {
  Potential p;
  for (std::size_t v = 0; v < h.vertices().size(); ++v) {
    if (!h.vertices()[v].integral()) {
      p.delta += excess(h, v);
      continue;
    }
    for (int i = 1; i <= 3; ++i)
      for (int s : {+1, -1}) p.omega += h.w(v, i, s);
  }
  for (const auto& [line, w] : h.edges())
    if (line.kind() == LineKind::Ray && !is_integer(line.c)) p.beta += w;
  return p;
}

}  // namespace honeycomb

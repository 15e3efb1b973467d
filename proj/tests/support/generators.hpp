#pragma once

// Random concave instances with large tiles, for tests only.

#include "honeycomb/duality.hpp"

#include <random>

namespace generators {

using namespace honeycomb;

inline Q random_rational(std::mt19937_64& rng, int span, int den) {
  int d = std::uniform_int_distribution<int>(1, den)(rng);
  return Q(std::uniform_int_distribution<int>(-span * d, span * d)(rng), d);
}

/// Superposition of `count` weighted claws (three + rays from one point) at
/// random rational points.
inline Honeycomb random_claws(std::uint64_t seed, int count, int den, int span = 3) {
  std::mt19937_64 rng(seed);
  XiSystem s;
  for (int k = 0; k < count; ++k) {
    DualPoint p(random_rational(rng, span, den), random_rational(rng, span, den));
    auto w = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int i = 1; i <= 3; ++i) s.add(HLine::ray(p, i, +1), w);
  }
  return canonicalize(s);
}

/// Claws on top of a strictly concave instance: some vertices of degree
/// 4 or more and a hexagonal outline.
inline Honeycomb random_mixed(std::uint64_t seed, int grid_size, int claws, int den) {
  auto g = hexagon_grid(grid_size);
  auto h = random_concave(g, seed, den);
  return sum(grid_to_honeycomb(g, h), random_claws(seed * 7919 + 1, claws, den));
}

/// Concave cocirculation with crease lines along grid lines plus a linear
/// part; tiles are triangles, rhombi, trapezoids and larger pieces.
inline Cocirculation random_creased(const ConvexGrid& g, std::uint64_t seed, int creases, int den) {
  std::mt19937_64 rng(seed);
  struct Crease {
    int form;
    int sign;
    std::int64_t at;
    Q weight;
  };
  std::vector<Crease> cs;
  for (int k = 0; k < creases; ++k) {
    int d = std::uniform_int_distribution<int>(1, den)(rng);
    cs.push_back({std::uniform_int_distribution<int>(0, 2)(rng), std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1,
                  std::uniform_int_distribution<std::int64_t>(-1, 6)(rng),
                  Q(std::uniform_int_distribution<int>(1, 2 * d)(rng), d)});
  }
  Q l1 = random_rational(rng, 2, den), l2 = random_rational(rng, 2, den);
  return cocirculation_from_potential(g, [&](GridPoint p) {
    Q v = l1 * p.a + l2 * p.b;
    for (const auto& c : cs) {
      std::int64_t f = c.form == 0 ? p.a : c.form == 1 ? p.b : p.a - p.b;
      v += c.weight * std::min<std::int64_t>(0, c.sign * (f - c.at));
    }
    return v;
  });
}

}  // namespace generators

#include <catch2/catch_amalgamated.hpp>

#include "honeycomb/extremality.hpp"
#include "support/generators.hpp"

#include <random>

using namespace honeycomb;

namespace {

std::size_t interior_vertex_count(const ConvexGrid& g) {
  std::set<GridPoint> rim;
  for (const auto& e : g.boundary_edges()) {
    rim.insert(e.tail);
    rim.insert(e.head());
  }
  return g.vertices().size() - rim.size();
}

std::set<std::size_t> all_rays(const Honeycomb& hc) {
  std::set<std::size_t> out;
  for (std::size_t e = 0; e < hc.edges().size(); ++e)
    if (hc.edges()[e].line.kind() == LineKind::Ray) out.insert(e);
  return out;
}

}  // namespace

TEST_CASE("pinning every edge gives a vertex", "[extremality]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = hexagon_grid(2);
    auto h = generators::random_creased(g, seed, 4, 3);
    REQUIRE(is_concave(g, h));
    auto res = vertex_check(g, h, g.edges());
    CHECK(res.vertex);
    REQUIRE(res.solution);
    CHECK(*res.solution == h);
  }
}

TEST_CASE("a single flat tile has two free directions", "[extremality]") {
  auto g = three_side_grid(3);
  auto h = cocirculation_from_potential(g, [](GridPoint p) { return Q(2 * p.a - p.b); });
  auto res = vertex_check(g, h, {});
  CHECK(res.degrees_of_freedom == 2);
  CHECK_FALSE(res.vertex);
  auto one = vertex_check(g, h, {GridEdge{{0, 0}, 1}});
  CHECK(one.degrees_of_freedom == 1);
  auto two = vertex_check(g, h, {GridEdge{{0, 0}, 1}, GridEdge{{1, 0}, 2}});
  CHECK(two.vertex);
  CHECK(*two.solution == h);
}

TEST_CASE("strictly concave: interior potentials stay free", "[extremality]") {
  for (int n = 2; n <= 5; ++n) {
    auto g = three_side_grid(n);
    auto h = random_concave(g, static_cast<std::uint64_t>(n), 5);
    auto res = vertex_check(g, h, g.boundary_edges());
    CHECK(res.degrees_of_freedom == interior_vertex_count(g));
  }
}

TEST_CASE("more fixed edges never hurt", "[extremality]") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = hexagon_grid(2);
    auto h = generators::random_creased(g, seed, 5, 2);
    std::vector<GridEdge> pool = g.edges();
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t prev_dof = vertex_check(g, h, {}).degrees_of_freedom;
    bool was_vertex = false;
    for (std::size_t k = 1; k <= pool.size(); k += 3) {
      std::vector<GridEdge> f(pool.begin(), pool.begin() + k);
      auto res = vertex_check(g, h, f);
      CHECK(res.degrees_of_freedom <= prev_dof);
      if (was_vertex) CHECK(res.vertex);
      prev_dof = res.degrees_of_freedom;
      was_vertex = res.vertex;
    }
  }
}

TEST_CASE("fixed edges must lie in the grid", "[extremality]") {
  auto g = three_side_grid(2);
  auto h = random_concave(g, 3, 4);
  try {
    vertex_check(g, h, {GridEdge{{9, 9}, 1}});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FNotSubsetOfEdges);
  }
  auto bad = cocirculation_from_potential(g, [](GridPoint p) { return Q(p.a * p.a); });
  try {
    vertex_check(g, bad, {});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConcave);
  }
}

TEST_CASE("two-lines test on a claw", "[extremality]") {
  XiSystem s;
  for (int i = 1; i <= 3; ++i) s.add(HLine::ray(DualPoint(Q(0), Q(0)), i, +1), 1);
  auto hc = canonicalize(s);
  REQUIRE(hc.edges().size() == 3);
  CHECK_FALSE(condition_C_extreme(hc, {0}));
  CHECK(condition_C_extreme(hc, {0, 1}));
  CHECK(condition_C_extreme(hc, all_rays(hc)));
}

TEST_CASE("two-lines test implies a vertex", "[extremality]") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = seed % 2 ? hexagon_grid(2) : three_side_grid(4);
    auto h = generators::random_creased(g, seed, 3 + static_cast<int>(seed % 4), 3);
    auto hc = grid_to_honeycomb(g, h);
    auto rays = all_rays(hc);
    auto f = grid_edges_of_rays(g, h, hc, rays);
    CHECK(f.size() == g.boundary_edges().size());
    if (condition_C_extreme(hc, rays)) {
      ++hits;
      CHECK(is_vertex(g, h, f));
    }
  }
  CHECK(hits > 0);
}

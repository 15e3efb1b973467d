#include <catch2/catch_amalgamated.hpp>

#include "honeycomb/duality.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace honeycomb;

namespace {

void check_round_trip_a(const ConvexGrid& g, const Cocirculation& h) {
  auto hc = grid_to_honeycomb(g, h);
  REQUIRE_NOTHROW(validate_honeycomb(hc));
  auto back = honeycomb_to_grid(hc);
  GridPoint shift = GridPoint{0, 0} - g.anchor();
  CHECK(back.grid == g.translated(shift));
  CHECK(back.h == h.translated(shift));
}

void check_round_trip_b(const Honeycomb& hc) {
  auto inst = honeycomb_to_grid(hc);
  REQUIRE_NOTHROW(validate_grid(inst.grid));
  REQUIRE(is_concave(inst.grid, inst.h));
  CHECK(grid_to_honeycomb(inst.grid, inst.h) == hc);
  // boundary weights match side lengths
  auto bp = boundary_partition(hc);
  std::map<std::pair<int, int>, std::int64_t> len;
  for (const auto& s : sides(inst.grid)) len[{s.dir, s.sign}] += static_cast<std::int64_t>(s.edges.size());
  for (int i = 1; i <= 3; ++i)
    for (int s : {+1, -1}) CHECK(bp.weight_of(i, s) == len[{i, s}]);
}

}  // namespace

TEST_CASE("single up-triangle gives a unit claw", "[duality]") {
  ConvexGrid g({Triangle{true, {0, 0}}});
  Cocirculation h;
  for (const auto& e : g.edges()) h.set(e, Q(0));
  auto hc = grid_to_honeycomb(g, h);
  REQUIRE(hc.vertices().size() == 1);
  CHECK(hc.vertices()[0] == DualPoint(Q(0), Q(0)));
  REQUIRE(hc.edges().size() == 3);
  for (const auto& e : hc.edges()) {
    CHECK(e.weight == 1);
    CHECK(e.line.ray_sign() == +1);
  }
  auto back = honeycomb_to_grid(hc);
  CHECK(back.grid == g);
  CHECK(back.h == h);
}

TEST_CASE("single down-triangle gives a reversed claw", "[duality]") {
  ConvexGrid g({Triangle{false, {0, 0}}});
  Cocirculation h;
  for (const auto& e : g.edges()) h.set(e, Q(0));
  auto hc = grid_to_honeycomb(g, h);
  REQUIRE(hc.edges().size() == 3);
  for (const auto& e : hc.edges()) CHECK(e.line.ray_sign() == -1);
  CHECK(hc.divergency(0) == -1);
  check_round_trip_b(hc);
}

TEST_CASE("affine values give one vertex with long rays", "[duality]") {
  auto g = three_side_grid(3);
  auto h = cocirculation_from_potential(g, [](GridPoint p) { return Q(2 * p.a + p.b, 5); });
  auto hc = grid_to_honeycomb(g, h);
  REQUIRE(hc.vertices().size() == 1);
  REQUIRE(hc.edges().size() == 3);
  for (const auto& e : hc.edges()) CHECK(e.weight == 3);
  CHECK(hc.vertices()[0] == DualPoint(Q(2, 5), Q(1, 5)));
}

TEST_CASE("three-vertex example glues into a grid", "[duality]") {
  auto hc = canonicalize(fixtures::three_vertex_system());
  auto inst = honeycomb_to_grid(hc);
  REQUIRE_NOTHROW(validate_grid(inst.grid));
  // hexagon with sides 3,1,3,1,3,1 cut into three tiles
  CHECK(inst.grid.triangles().size() == 22);
  CHECK(tiling_of(inst.grid, inst.h).count == 3);
  CHECK(inst.grid.anchor() == GridPoint{0, 0});
  check_round_trip_b(hc);
}

TEST_CASE("strictly concave instances round trip", "[duality]") {
  for (int n = 2; n <= 6; ++n)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto g = three_side_grid(n);
      check_round_trip_a(g, random_concave(g, seed, 5));
    }
  for (int s = 1; s <= 3; ++s) {
    auto g = hexagon_grid(s).translated({-2, 5});
    check_round_trip_a(g, random_concave(g, 11 + s, 3));
  }
}

TEST_CASE("creased instances round trip", "[duality]") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = seed % 2 ? hexagon_grid(3) : three_side_grid(5);
    auto h = generators::random_creased(g, seed, 4, 3);
    REQUIRE(is_concave(g, h));
    check_round_trip_a(g, h);
  }
}

TEST_CASE("claw superpositions round trip", "[duality]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto hc = generators::random_claws(seed, 4, 3);
    REQUIRE_NOTHROW(validate_honeycomb(hc));
    check_round_trip_b(hc);
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) check_round_trip_b(generators::random_mixed(seed, 2, 3, 3));
}

#include <catch2/catch_amalgamated.hpp>

#include "honeycomb.hpp"
#include "honeycomb/io.hpp"
#include "support/generators.hpp"

using namespace honeycomb;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("grid and cocirculation survive a round trip", "[io]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = hexagon_grid(2);
    auto h = generators::random_creased(g, seed, 4, 3);
    auto gj = io::to_json(g), hj = io::to_json(h);
    auto g2 = io::grid_from_json(io::Json::parse(gj.dump()));
    auto h2 = io::cocirculation_from_json(io::Json::parse(hj.dump()));
    CHECK(g2 == g);
    CHECK(h2 == h);
    CHECK(io::to_json(g2) == gj);
    CHECK(io::to_json(h2) == hj);
  }
}

TEST_CASE("values are written as reduced fractions", "[io]") {
  Cocirculation h;
  h.set(GridEdge{{0, 0}, 1}, Q(6, 4));
  h.set(GridEdge{{1, 0}, 2}, Q(-3));
  auto j = io::to_json(h);
  CHECK(j["edges"][0]["value"] == "3/2");
  CHECK(j["edges"][1]["value"] == "-3/1");
  auto back = io::cocirculation_from_json(io::Json::parse(R"({"edges":[{"a":0,"b":0,"dir":1,"value":"6/4"},{"a":1,"b":0,"dir":2,"value":"-3"}]})"));
  CHECK(back == h);
}

TEST_CASE("honeycomb survives a round trip", "[io]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto hc = generators::random_mixed(seed, 2, 2, 3);
    auto j = io::to_json(hc);
    auto back = io::honeycomb_from_json(io::Json::parse(j.dump()));
    CHECK(back == hc);
    CHECK(io::to_json(back) == j);
  }
  auto dual = dual_grid_honeycomb(3);
  CHECK(io::honeycomb_from_json(io::to_json(dual)) == dual);
}

TEST_CASE("bundles are unwrapped", "[io]") {
  auto f = fractional_vertex_instance(2);
  io::Json bundle{{"grid", io::to_json(f.grid)}, {"cocirculation", io::to_json(f.h)}, {"fixed", io::edges_to_json(f.fixed)}};
  CHECK(io::grid_from_json(bundle) == f.grid);
  CHECK(io::cocirculation_from_json(bundle) == f.h);
  CHECK(io::edges_from_json(bundle) == f.fixed);
}

TEST_CASE("malformed input is reported as such", "[io]") {
  using io::Json;
  CHECK(kind_of([] { io::grid_from_json(Json::parse(R"({"tri":[]})")); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { io::grid_from_json(Json::parse(R"({"triangles":[{"up":1,"a":0,"b":0}]})")); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { io::grid_from_json(Json::parse(R"({"triangles":[]})")); }) == ErrorKind::EmptyGrid);
  CHECK(kind_of([] { io::cocirculation_from_json(Json::parse(R"({"edges":[{"a":0,"b":0,"dir":4,"value":"1/1"}]})")); }) ==
        ErrorKind::Malformed);
  CHECK(kind_of([] { io::cocirculation_from_json(Json::parse(R"({"edges":[{"a":0,"b":0,"dir":1,"value":"x"}]})")); }) ==
        ErrorKind::Malformed);
  CHECK(kind_of([] { io::cocirculation_from_json(Json::parse(R"({"edges":[{"a":0,"b":0,"dir":1,"value":"1/0"}]})")); }) ==
        ErrorKind::Malformed);
  CHECK(kind_of([] { io::honeycomb_from_json(Json::parse(R"({"vertices":[{"d1":"0/1","d2":"0/1"}],"edges":[{"class":1,"weight":1,"kind":"ray","ends":[3],"sign":"+"}]})")); }) ==
        ErrorKind::Malformed);
  CHECK(kind_of([] { io::honeycomb_from_json(Json::parse(R"({"vertices":[{"d1":"0/1","d2":"0/1"}],"edges":[{"class":1,"weight":1,"kind":"line","ends":[0]}]})")); }) ==
        ErrorKind::Malformed);
}

TEST_CASE("trace lines carry the potential", "[io]") {
  auto g = three_side_grid(3);
  auto h = random_concave(g, 4, 3);
  auto res = integralize(g, h);
  REQUIRE_FALSE(res.trace.empty());
  for (const auto& s : res.trace) {
    auto j = io::to_json(s);
    CHECK(j["before"]["eta"].get<std::int64_t>() > j["after"]["eta"].get<std::int64_t>());
    CHECK(parse_rational(j["eps"].get<std::string>()) == s.eps);
    CHECK_FALSE(j["kinds"].empty());
  }
}

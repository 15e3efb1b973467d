// Command-line front end: file formats in, file formats out.

#include "honeycomb.hpp"
#include "honeycomb/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace honeycomb;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 2;
constexpr int kMalformed = 3;
constexpr int kUnknown = 64;

const std::set<std::string> kCommands = {"validate", "dualize", "integralize", "legal-path",
                                         "deform", "vertex-check", "gen", "selftest"};

// Bad files and inputs that break the structural rules exit 3; inputs that
// are well formed but outside an operation's domain exit 2.
int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Malformed:
    case ErrorKind::EmptyGrid:
    case ErrorKind::NotConnected:
    case ErrorKind::NotConvex:
    case ErrorKind::DanglingEdge:
    case ErrorKind::NotACocirculation:
    case ErrorKind::NotPreHoneycomb:
    case ErrorKind::InvalidHoneycomb:
      return kMalformed;
    default:
      return kDomain;
  }
}

int report(const std::string& kind, const std::string& message, int code) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

Json read_json(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::Malformed, "missing input file");
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Malformed, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Malformed, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Malformed, "cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_trace(const std::string& path, const std::vector<TraceStep>& trace) {
  if (path.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto j = io::to_json(trace[i]);
    j["step"] = i;
    os << j.dump() << '\n';
  }
  write_text(path, os.str());
}

struct Options {
  std::string in, grid, out, trace, kind, fixed, to = "honeycomb", direction = "auto";
  int k = 3, n = 3;
  std::uint64_t seed = 1;
};

// A grid with its cocirculation, checked as a cocirculation.
GridInstance load_instance(const Options& o) {
  auto g = io::grid_from_json(read_json(o.grid.empty() ? o.in : o.grid));
  auto h = io::cocirculation_from_json(read_json(o.in));
  check_cocirculation(g, h);
  return {std::move(g), std::move(h)};
}

// A honeycomb from --in, or the honeycomb of a grid instance when --grid is
// also given.
Honeycomb load_honeycomb(const Options& o) {
  if (!o.grid.empty()) {
    auto inst = load_instance(o);
    return grid_to_honeycomb(inst.grid, inst.h);
  }
  auto hc = io::honeycomb_from_json(read_json(o.in));
  validate_honeycomb(hc);
  return hc;
}

int cmd_validate(const Options& o) {
  Json out{{"valid", true}};
  if (o.grid.empty()) {
    auto j = read_json(o.in);
    if (j.contains("vertices") || j.contains("honeycomb")) {
      auto hc = io::honeycomb_from_json(j);
      validate_honeycomb(hc);
      auto bp = boundary_partition(hc);
      out["kind"] = "honeycomb";
      out["vertices"] = hc.vertices().size();
      out["edges"] = hc.edges().size();
      out["boundary_flow"] = bp.flow;
    } else {
      auto g = io::grid_from_json(j);
      out["kind"] = "grid";
      out["triangles"] = g.triangles().size();
      out["sides"] = sides(g).size();
    }
  } else {
    auto g = io::grid_from_json(read_json(o.grid));
    out["kind"] = "grid";
    out["triangles"] = g.triangles().size();
    out["sides"] = sides(g).size();
    if (!o.in.empty()) {
      auto h = io::cocirculation_from_json(read_json(o.in));
      check_cocirculation(g, h);
      bool integral = true;
      for (const auto& [e, v] : h.values()) integral &= is_integer(v);
      out["kind"] = "cocirculation";
      out["concave"] = is_concave(g, h);
      out["integral"] = integral;
    }
  }
  write_json(o.out, out);
  return kOk;
}

int cmd_dualize(const Options& o) {
  if (o.to == "honeycomb") {
    auto inst = load_instance(o);
    write_json(o.out, io::to_json(grid_to_honeycomb(inst.grid, inst.h)));
  } else if (o.to == "grid") {
    auto hc = io::honeycomb_from_json(read_json(o.in));
    validate_honeycomb(hc);
    auto inst = honeycomb_to_grid(hc);
    write_json(o.out, Json{{"grid", io::to_json(inst.grid)}, {"cocirculation", io::to_json(inst.h)}});
  } else {
    throw Error(ErrorKind::Malformed, "--to must be honeycomb or grid");
  }
  return kOk;
}

int cmd_integralize(const Options& o) {
  auto inst = load_instance(o);
  auto res = integralize(inst.grid, inst.h);
  write_trace(o.trace, res.trace);
  write_json(o.out, io::to_json(res.h));
  return kOk;
}

int cmd_legal_path(const Options& o) {
  auto hc = load_honeycomb(o);
  auto p = find_legal_path(hc);
  auto j = io::to_json(p);
  j["honeycomb"] = io::to_json(hc);
  write_json(o.out, j);
  return kOk;
}

int cmd_deform(const Options& o) {
  auto hc = load_honeycomb(o);
  auto p = find_legal_path(hc);
  Direction dir = choose_direction(p);
  if (o.direction == "right") dir = Direction::Right;
  else if (o.direction == "left") dir = Direction::Left;
  else if (o.direction != "auto") throw Error(ErrorKind::Malformed, "--direction must be right, left or auto");
  auto step = deform(hc, p, dir);
  write_trace(o.trace, {TraceStep{step.stop.eps, step.stop.kinds, step.before, step.after, p.is_cycle, dir, p.edges.size()}});
  write_json(o.out, io::to_json(step.honeycomb));
  return kOk;
}

int cmd_vertex_check(const Options& o) {
  auto inst = load_instance(o);
  auto fixed = io::edges_from_json(read_json(o.fixed.empty() ? o.in : o.fixed));
  auto res = vertex_check(inst.grid, inst.h, fixed);
  write_json(o.out, Json{{"vertex", res.vertex}, {"degrees_of_freedom", res.degrees_of_freedom}});
  return kOk;
}

Json bundle(const ConvexGrid& g, const Cocirculation& h, const std::vector<GridEdge>& fixed) {
  return {{"grid", io::to_json(g)}, {"cocirculation", io::to_json(h)}, {"fixed", io::edges_to_json(fixed)}};
}

int cmd_gen(const Options& o) {
  Json out;
  if (o.kind == "dualgrid") {
    out = {{"honeycomb", io::to_json(dual_grid_honeycomb(o.n))}};
  } else if (o.kind == "hexagon") {
    auto hex = hexagon_instance(o.k);
    out = bundle(hex.grid, hex.h, hex.grid.boundary_edges());
  } else if (o.kind == "fractional-vertex") {
    auto f = fractional_vertex_instance(o.k);
    out = bundle(f.grid, f.h, f.fixed);
  } else if (o.kind == "counterexample") {
    auto c = counterexample_instance();
    std::vector<GridEdge> integral;
    for (const auto& [e, v] : c.h.values())
      if (is_integer(v)) integral.push_back(e);
    out = bundle(c.grid, c.h, integral);
  } else if (o.kind == "random") {
    // --n is the side of a 3-side grid, --k the denominator bound
    auto g = three_side_grid(o.n);
    out = bundle(g, random_concave(g, o.seed, o.k), g.boundary_edges());
  } else {
    throw Error(ErrorKind::Malformed, "unknown --kind " + o.kind);
  }
  write_json(o.out, out);
  return kOk;
}

int cmd_selftest(const Options& o) {
  std::vector<std::pair<std::string, bool>> rows;
  auto run = [&](const std::string& name, auto&& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception&) {
      ok = false;
    }
    rows.emplace_back(name, ok);
  };

  run("three-vertex example: divergencies and dominating weights", [] {
    auto h = canonicalize(three_vertex_system());
    int v = h.vertex_index(DualPoint(Q(0), Q(0)));
    if (v < 0 || h.divergency(v) != 2) return false;
    std::multiset<std::int64_t> w;
    for (auto e : dominating_edges(h, v)) w.insert(h.edges()[e].weight);
    return w == std::multiset<std::int64_t>{2, 3, 3};
  });
  run("hexagon k=3: stripe values", [] {
    auto hex = hexagon_instance(3);
    for (std::int64_t i = 1; i <= 3; ++i)
      if (hex.h.at(GridEdge{{0, -i}, 1}) != Q(3 - i, 3)) return false;
    for (std::int64_t i = 0; i < 3; ++i)
      if (hex.h.at(GridEdge{{1, -i - 1}, 2}) != Q(3 * i + 1, 3)) return false;
    for (const auto& [e, v] : hex.h.values())
      if (e.dir == 1 && e.tail.a >= 1 && e.tail.a - e.tail.b >= 1 && e.tail.a - e.tail.b <= 3 && v != Q(-1, 3))
        return false;
    return is_vertex(hex.grid, hex.h, hex.grid.boundary_edges());
  });
  run("counterexample: checksum, concave, pinned by integral edges", [] {
    auto c = counterexample_instance();
    std::vector<GridEdge> integral;
    for (const auto& [e, v] : c.h.values())
      if (is_integer(v)) integral.push_back(e);
    return fnv1a(canonical_text(c.h)) == 0xde13f5ee1606df9eull && is_concave(c.grid, c.h) &&
           is_vertex(c.grid, c.h, integral);
  });
  run("fractional vertex k=3", [] {
    auto f = fractional_vertex_instance(3);
    bool den = false;
    for (const auto& [e, v] : f.h.values()) den |= denom(v) == 3;
    for (const auto& e : f.grid.boundary_edges())
      if (!is_integer(f.h.at(e))) return false;
    return den && is_vertex(f.grid, f.h, f.fixed);
  });

  bool all = true;
  std::ostringstream os;
  for (const auto& [name, ok] : rows) {
    os << (ok ? "PASS  " : "FAIL  ") << name << '\n';
    all &= ok;
  }
  write_text(o.out, os.str());
  return all ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc >= 2) {
    std::string first = argv[1];
    if (!first.empty() && first[0] != '-' && !kCommands.count(first))
      return report("UnknownSubcommand", "unknown subcommand " + first, kUnknown);
  }

  CLI::App app{"Concave cocirculations and honeycombs"};
  app.require_subcommand(1);
  Options o;
  auto add_io = [&](CLI::App* c) {
    c->add_option("--in", o.in, "input file, - for stdin");
    c->add_option("--grid", o.grid, "grid file");
    c->add_option("--out", o.out, "output file, stdout by default");
  };
  auto* validate = app.add_subcommand("validate", "check a grid, a cocirculation or a honeycomb");
  add_io(validate);
  auto* dualize = app.add_subcommand("dualize", "convert between grid and honeycomb form");
  add_io(dualize);
  dualize->add_option("--to", o.to, "honeycomb or grid");
  auto* integ = app.add_subcommand("integralize", "round a concave cocirculation to an integer one");
  add_io(integ);
  integ->add_option("--trace", o.trace, "jsonl trace of the deformation steps");
  auto* path = app.add_subcommand("legal-path", "find a legal path or cycle");
  add_io(path);
  auto* deformc = app.add_subcommand("deform", "one deformation step along a legal path");
  add_io(deformc);
  deformc->add_option("--direction", o.direction, "right, left or auto");
  deformc->add_option("--trace", o.trace, "jsonl trace of the step");
  auto* vcheck = app.add_subcommand("vertex-check", "is the cocirculation fixed by its tiling and F");
  add_io(vcheck);
  vcheck->add_option("--fixed", o.fixed, "fixed edge set");
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", o.kind, "dualgrid, hexagon, fractional-vertex, counterexample or random")->required();
  gen->add_option("--k", o.k, "denominator parameter");
  gen->add_option("--n", o.n, "size parameter");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--out", o.out, "output file, stdout by default");
  auto* self = app.add_subcommand("selftest", "run the pinned fixtures");
  self->add_option("--out", o.out, "output file, stdout by default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("Usage", e.what(), kMalformed);
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*dualize) return cmd_dualize(o);
    if (*integ) return cmd_integralize(o);
    if (*path) return cmd_legal_path(o);
    if (*deformc) return cmd_deform(o);
    if (*vcheck) return cmd_vertex_check(o);
    if (*gen) return cmd_gen(o);
    if (*self) return cmd_selftest(o);
  } catch (const Error& e) {
    return report(to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const Json::exception& e) {
    return report("Malformed", e.what(), kMalformed);
  }
  return kMalformed;
}

// Command-line front end. Talks to the library only through compat.h.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "compat/compat.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool quiet = false;
  int threads = 1;
  std::string out;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + g.out + "'");
  f << text;
}

void log(const Globals& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << '\n';
}

int exit_code(compat_status s) { return static_cast<int>(s); }

// Sends one request through the C API and prints the response document.
int call(const Globals& g, const char* op, const Json& request, bool raw_svg = false) {
  compat_result* result = nullptr;
  const compat_status status = compat_call(op, request.dump().c_str(), &result);
  if (status == COMPAT_INPUT_ERROR || status == COMPAT_INTERNAL_ERROR) {
    std::cerr << "error: " << compat_last_error() << '\n';
    compat_result_free(result);
    return exit_code(status);
  }
  Json response = Json::parse(compat_result_json(result));
  compat_result_free(result);
  if (raw_svg) {
    emit(g, response["svg"].get<std::string>());
  } else {
    emit(g, response.dump(2) + "\n");
  }
  if (response.contains("result")) {
    std::string line = std::string(op) + ": " + response["result"].get<std::string>();
    if (response.contains("method")) line += " (method " + response["method"].get<std::string>() + ")";
    log(g, line);
  }
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compatible orderings, set arrangements and robotic-arm scheduling"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Globals g;
  bool version = false;
  app.add_flag("--version", version, "Print library and schema versions");
  app.add_flag("-q,--quiet", g.quiet, "Suppress log lines on stderr");
  app.add_option("--threads", g.threads, "Worker threads for the searches")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", g.out, "Write the output document to this file");

  std::string instance, solution, method = "auto", td, td_names, md, scene, schedule, moves, two_angle;
  std::string cnf, graph, constraint_graph, kind = "instance";
  std::size_t bound = 0;
  unsigned long long max_nodes = 0;
  bool partial = false, witness = false, no_propagation = false;
  double epsilon = 1e-9;
  std::size_t n = 6, parts = 3, arcs = 0;
  int k = 2, vars = 4, clauses = 4, width = 4;
  double density = 0.15, spread = 1.5, back = 0.0;
  std::uint64_t seed = 1;

  auto* co = app.add_subcommand("co", "Compatible orderings")->require_subcommand(1);
  auto* co_solve = co->add_subcommand("solve", "Decide an instance and print a witness");
  co_solve->add_option("--instance", instance, "Instance JSON")->required();
  co_solve->add_option("--method", method, "auto|brute|k1|trivial|treewidth|modular")
      ->check(CLI::IsMember({"auto", "brute", "k1", "trivial", "treewidth", "modular"}));
  auto* bound_opt = co_solve->add_option("--bound", bound, "Order at least this many vertices (brute only)");
  co_solve->add_option("--max-nodes", max_nodes, "Search node budget (brute only); 0 is unlimited");
  co_solve->add_flag("--no-propagation", no_propagation, "Disable pruning rules in the brute-force search");
  co_solve->add_option("--td", td, "Tree decomposition: PACE .td or JSON");
  co_solve->add_option("--td-names", td_names, "JSON list naming PACE vertices 1..n");
  co_solve->add_option("--md", md, "Labeled modular decomposition JSON");

  auto* co_verify = co->add_subcommand("verify", "Check a labeled ordering");
  co_verify->add_option("--instance", instance, "Instance JSON")->required();
  co_verify->add_option("--solution", solution, "Labeled ordering JSON")->required();
  co_verify->add_flag("--partial", partial, "Accept orderings of a vertex subset");

  auto* co_reduce = co->add_subcommand("reduce", "Build an instance from a source problem");
  co_reduce->add_option("kind", kind, "sat-planar|sat-acyclic|sat-reversed|mis|ncl")
      ->required()
      ->check(CLI::IsMember({"sat-planar", "sat-acyclic", "sat-reversed", "mis", "ncl"}));
  co_reduce->add_option("--cnf", cnf, "DIMACS formula, exactly 3 literals per clause");
  co_reduce->add_option("--graph", graph, "Partitioned graph JSON");
  co_reduce->add_option("--constraint-graph", constraint_graph, "Constraint graph JSON");
  co_reduce->add_flag("--witness", witness, "Also solve the source problem and map its solution");

  auto* arr = app.add_subcommand("arr", "Set arrangements")->require_subcommand(1);
  auto* arr_solve = arr->add_subcommand("solve", "Shortest move sequence");
  auto* arr_verify = arr->add_subcommand("verify", "Check a move sequence");
  for (auto* sub : {arr_solve, arr_verify}) {
    auto* a = sub->add_option("--instance", instance, "Arrangement instance JSON");
    auto* b = sub->add_option("--two-angle", two_angle, "Two-angle arm scene JSON");
    a->excludes(b);
    sub->add_option("--epsilon", epsilon, "Contact tolerance for two-angle scenes");
  }
  arr_verify->add_option("--moves", moves, "Move sequence JSON")->required();

  auto* ramp = app.add_subcommand("ramp", "Robotic arms turning to vertical")->require_subcommand(1);
  auto* ramp_reduce = ramp->add_subcommand("reduce", "Scene to a 2-label instance");
  auto* ramp_solve = ramp->add_subcommand("solve", "Find a collision-free schedule");
  auto* ramp_verify = ramp->add_subcommand("verify", "Simulate a schedule");
  auto* ramp_render = ramp->add_subcommand("render", "Draw a scene as SVG");
  for (auto* sub : {ramp_reduce, ramp_solve, ramp_verify, ramp_render}) {
    sub->add_option("--scene", scene, "Scene JSON")->required();
    sub->add_option("--epsilon", epsilon, "Contact tolerance");
  }
  ramp_solve->add_option("--max-nodes", max_nodes, "Search node budget; 0 is unlimited");
  ramp_verify->add_option("--schedule", schedule, "Schedule JSON")->required();
  ramp_render->add_option("--schedule", schedule, "Schedule JSON to annotate");

  auto* gen = app.add_subcommand("gen", "Seeded generators")->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "Draw a random document");
  gen_random->add_option("--kind", kind, "instance|sparse|md|scene|cnf|ncl|mis")
      ->check(CLI::IsMember({"instance", "sparse", "md", "scene", "cnf", "ncl", "mis"}));
  gen_random->add_option("--n", n, "Vertices, arms or constraint-graph vertices");
  gen_random->add_option("--k", k, "Labels");
  gen_random->add_option("--arc-density", density, "Arc probability per ordered pair");
  gen_random->add_option("--seed", seed, "PRNG seed (64-bit Mersenne Twister)");
  gen_random->add_option("--spread", spread, "Side of the square holding arm centres");
  gen_random->add_option("--vars", vars, "CNF variables");
  gen_random->add_option("--clauses", clauses, "CNF clauses");
  gen_random->add_option("--parts", parts, "Partition classes");
  gen_random->add_option("--arcs", arcs, "Arcs per graph for sparse instances (default 3n)");
  gen_random->add_option("--back", back, "Backward-arc probability for sparse instances");
  gen_random->add_option("--width", width, "Maximum children per decomposition node");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (version) {
      emit(g, Json::parse(compat_schema_versions()).dump(2) + "\n");
      return 0;
    }
    if (co_solve->parsed()) {
      Json req{{"instance", read_json(instance)}, {"method", method}, {"threads", g.threads}};
      if (*bound_opt) req["bound"] = bound;
      if (max_nodes) req["max_nodes"] = max_nodes;
      if (no_propagation) req["propagation"] = false;
      if (!td.empty()) {
        const std::string text = read_file(td);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
          req["td"] = Json::parse(text);
        } else {
          req["td_pace"] = text;
          if (!td_names.empty()) req["td_names"] = read_json(td_names);
        }
      }
      if (!md.empty()) req["md"] = read_json(md);
      return call(g, "co.solve", req);
    }
    if (co_verify->parsed()) {
      return call(g, "co.verify",
                  {{"instance", read_json(instance)}, {"ordering", read_json(solution)}, {"partial", partial}});
    }
    if (co_reduce->parsed()) {
      Json req{{"kind", kind}, {"witness", witness}};
      if (kind.rfind("sat-", 0) == 0) {
        if (cnf.empty()) throw UsageError("--cnf is required for " + kind);
        req["cnf"] = read_file(cnf);
      } else if (kind == "mis") {
        if (graph.empty()) throw UsageError("--graph is required for mis");
        req["graph"] = read_json(graph);
      } else {
        if (constraint_graph.empty()) throw UsageError("--constraint-graph is required for ncl");
        req["constraint_graph"] = read_json(constraint_graph);
      }
      return call(g, "co.reduce", req);
    }
    if (arr_solve->parsed() || arr_verify->parsed()) {
      Json req{{"epsilon", epsilon}};
      if (!two_angle.empty()) {
        req["two_angle"] = read_json(two_angle);
      } else if (!instance.empty()) {
        req["arrangement"] = read_json(instance);
      } else {
        throw UsageError("one of --instance or --two-angle is required");
      }
      if (arr_verify->parsed()) {
        req["moves"] = read_json(moves);
        return call(g, "arr.verify", req);
      }
      return call(g, "arr.solve", req);
    }
    if (ramp->parsed()) {
      Json req{{"scene", read_json(scene)}, {"epsilon", epsilon}, {"threads", g.threads}};
      if (!schedule.empty()) req["schedule"] = read_json(schedule);
      if (ramp_reduce->parsed()) return call(g, "ramp.reduce", req);
      if (ramp_solve->parsed()) {
        if (max_nodes) req["max_nodes"] = max_nodes;
        return call(g, "ramp.solve", req);
      }
      if (ramp_verify->parsed()) return call(g, "ramp.verify", req);
      return call(g, "ramp.render", req, true);
    }
    if (gen_random->parsed()) {
      Json req{{"kind", kind}, {"n", n},         {"k", k},         {"density", density},
               {"seed", seed}, {"spread", spread}, {"vars", vars}, {"clauses", clauses},
               {"parts", parts}, {"back", back},   {"width", width}, {"arcs", arcs ? arcs : 3 * n}};
      return call(g, "gen.random", req);
    }
    std::cerr << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

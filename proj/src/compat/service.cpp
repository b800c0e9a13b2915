#include "compat/service.hpp"

#include <map>

#include "compat/arrangement.hpp"
#include "compat/exact.hpp"
#include "compat/generators.hpp"
#include "compat/modular.hpp"
#include "compat/poly.hpp"
#include "compat/ramp.hpp"
#include "compat/reductions.hpp"
#include "compat/treewidth.hpp"
#include "compat/treewidth_io.hpp"
#include "compat/verifier.hpp"

namespace compat {

namespace {

const Json& field(const Json& req, const char* key) {
  if (!req.is_object() || !req.contains(key)) throw InputError(std::string("request is missing \"") + key + "\"");
  return req.at(key);
}

template <typename T>
T option(const Json& req, const char* key, T fallback) {
  if (!req.is_object() || !req.contains(key) || req.at(key).is_null()) return fallback;
  const Json& v = req.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw InputError(std::string("\"") + key + "\" must be a boolean");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw InputError(std::string("\"") + key + "\" must be a string");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.get<long long>() < 0) throw InputError(std::string("\"") + key + "\" must be non-negative");
    }
  } else {
    if (!v.is_number()) throw InputError(std::string("\"") + key + "\" must be a number");
  }
  return v.get<T>();
}

const char* outcome_word(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return "yes";
    case Outcome::No:
      return "no";
    case Outcome::Unknown:
      return "unknown";
  }
  return "?";
}

ServiceResult decided(Outcome o, Json extra = Json::object()) {
  Json payload;
  payload["result"] = outcome_word(o);
  for (auto& [key, value] : extra.items()) payload[key] = std::move(value);
  return {o, std::move(payload)};
}

// Every yes leaves the service with a certificate that passed the verifier.
void certify(const Instance& inst, const LabeledOrdering& sol, bool full) {
  if (auto bad = verify_direct(inst, sol, full)) {
    throw InternalError("solver witness fails verification at vertex " + inst.name(bad->vertex));
  }
}

ExactOptions exact_options(const Json& req) {
  ExactOptions opts;
  opts.threads = option<int>(req, "threads", 1);
  opts.max_nodes = option<std::uint64_t>(req, "max_nodes", 0);
  opts.use_propagation = option<bool>(req, "propagation", true);
  if (opts.threads < 1) throw InputError("threads must be at least 1");
  return opts;
}

ServiceResult from_exact(const Instance& inst, const SolveResult& r, const char* method, bool full) {
  Json extra;
  extra["method"] = method;
  extra["stats"] = {{"nodes", r.nodes}};
  if (r.status == SolveStatus::Yes) {
    certify(inst, *r.witness, full);
    extra["ordering"] = ordering_to_json(inst, *r.witness);
    return decided(Outcome::Yes, std::move(extra));
  }
  return decided(r.status == SolveStatus::No ? Outcome::No : Outcome::Unknown, std::move(extra));
}

ServiceResult from_optional(const Instance& inst, const std::optional<LabeledOrdering>& sol, const char* method,
                            Json stats = Json::object()) {
  Json extra;
  extra["method"] = method;
  if (!stats.empty()) extra["stats"] = std::move(stats);
  if (!sol) return decided(Outcome::No, std::move(extra));
  certify(inst, *sol, true);
  extra["ordering"] = ordering_to_json(inst, *sol);
  return decided(Outcome::Yes, std::move(extra));
}

ServiceResult solve_with_td(const Instance& inst, const TreeDecomposition& td) {
  const NiceTreeDecomposition ntd = make_nice(td, inst.vertex_count());
  TreewidthStats stats;
  auto sol = solve_treewidth(inst, ntd, &stats);
  std::size_t entries = 0;
  for (std::size_t e : stats.table_entries) entries += e;
  return from_optional(inst, sol, "treewidth", {{"width", td.width()}, {"table_entries", entries}});
}

TreeDecomposition request_td(const Instance& inst, const Json& req) {
  if (req.contains("td")) return td_from_json(inst, req.at("td"));
  if (req.contains("td_pace")) {
    std::optional<std::vector<std::string>> names;
    if (req.contains("td_names")) names = string_list(req.at("td_names"), "td_names");
    return td_from_pace(inst, option<std::string>(req, "td_pace", ""), names);
  }
  return heuristic_td(instance_union(inst, false));
}

ServiceResult co_solve(const Json& req) {
  const Instance inst = instance_from_json(field(req, "instance"));
  const auto method = option<std::string>(req, "method", "auto");
  const ExactOptions opts = exact_options(req);

  if (method == "brute") {
    if (req.contains("bound")) {
      const auto b = option<std::size_t>(req, "bound", 0);
      return from_exact(inst, solve_bounded(inst, b, opts), "brute", false);
    }
    return from_exact(inst, solve_exact(inst, opts), "brute", true);
  }
  if (method == "k1") return from_optional(inst, solve_k1(inst), "k1");
  if (method == "trivial") {
    auto hit = find_trivial_pair(inst, opts.threads);
    if (!hit) return decided(Outcome::Unknown, {{"method", "trivial"}});
    certify(inst, hit->ordering, true);
    return decided(Outcome::Yes, {{"method", "trivial"}, {"label", hit->label},
                                  {"ordering", ordering_to_json(inst, hit->ordering)}});
  }
  if (method == "treewidth") return solve_with_td(inst, request_td(inst, req));
  if (method == "modular") {
    const ModularDecomposition md = md_from_json(inst, field(req, "md"));
    return from_optional(inst, solve_modular(inst, md), "modular");
  }
  if (method != "auto") throw InputError("unknown method '" + method + "'");

  if (auto hit = find_trivial_pair(inst, opts.threads)) {
    certify(inst, hit->ordering, true);
    return decided(Outcome::Yes, {{"method", "trivial"}, {"label", hit->label},
                                  {"ordering", ordering_to_json(inst, hit->ordering)}});
  }
  if (inst.k() == 1) return from_optional(inst, solve_k1(inst), "k1");
  const TreeDecomposition td = heuristic_td(instance_union(inst, false));
  if (td.width() <= kMaxTreewidth) return solve_with_td(inst, td);
  return from_exact(inst, solve_exact(inst, opts), "brute", true);
}

Json violation_to_json(const Instance& inst, const Violation& v) {
  Json out;
  out["kind"] = violation_kind_name(v.kind);
  out["vertex"] = inst.name(v.vertex);
  out["position"] = v.position;
  if (v.witness) out["witness"] = {inst.name(v.witness->first), inst.name(v.witness->second)};
  return out;
}

ServiceResult co_verify(const Json& req) {
  const Instance inst = instance_from_json(field(req, "instance"));
  const LabeledOrdering sol = ordering_from_json(inst, field(req, "ordering"));
  const bool partial = option<bool>(req, "partial", false);
  if (auto bad = verify_direct(inst, sol, !partial)) {
    return {Outcome::No, {{"result", "invalid"}, {"violation", violation_to_json(inst, *bad)}}};
  }
  return {Outcome::Yes, {{"result", "valid"}}};
}

Json names_of(const Instance& inst, const std::vector<VertexIndex>& ids) {
  Json out = Json::array();
  for (VertexIndex v : ids) out.push_back(v == kNoVertex ? Json() : Json(inst.name(v)));
  return out;
}

Json sat_map_to_json(const SatReduction& red) {
  const Instance& inst = red.instance;
  Json map;
  map["variables"] = names_of(inst, red.variable);
  if (!red.literal.empty()) {
    map["literals"] = Json::array();
    for (const auto& ids : red.literal) map["literals"].push_back(names_of(inst, {ids.begin(), ids.end()}));
  }
  if (!red.clause.empty()) map["clauses"] = names_of(inst, red.clause);
  if (!red.negative.empty()) {
    map["negative_dummies"] = Json::array();
    for (const auto& ids : red.negative) map["negative_dummies"].push_back(names_of(inst, {ids.begin(), ids.end()}));
  }
  if (red.global != kNoVertex) map["global"] = inst.name(red.global);
  if (red.t1 != kNoVertex) {
    map["t1"] = inst.name(red.t1);
    map["t2"] = inst.name(red.t2);
  }
  return map;
}

ServiceResult co_reduce(const Json& req) {
  const auto kind = option<std::string>(req, "kind", "");
  const bool witness = option<bool>(req, "witness", false);
  Json out;
  out["kind"] = kind;
  if (kind == "sat-planar" || kind == "sat-acyclic" || kind == "sat-reversed") {
    const CnfFormula phi = parse_dimacs(field(req, "cnf").get<std::string>());
    const SatReductionKind k = kind == "sat-planar"    ? SatReductionKind::Planar
                               : kind == "sat-acyclic" ? SatReductionKind::Acyclic
                                                       : SatReductionKind::Reversed;
    const SatReduction red = reduce_sat(phi, k);
    out["instance"] = instance_to_json(red.instance);
    out["map"] = sat_map_to_json(red);
    out["four_bounded"] = phi.four_bounded();
    if (witness) {
      const auto asg = sat_oracle(phi);
      out["satisfiable"] = asg.has_value();
      if (asg) {
        out["assignment"] = *asg;
        out["ordering"] = ordering_to_json(red.instance, ordering_from_assignment(phi, red, *asg));
      }
    }
  } else if (kind == "mis") {
    const PartitionedGraph pg = partitioned_graph_from_json(field(req, "graph"));
    const MisReduction red = reduce_mis(pg);
    out["instance"] = instance_to_json(red.instance);
    out["bound"] = red.bound;
    if (witness) {
      const auto pick = mis_oracle(pg);
      out["satisfiable"] = pick.has_value();
      if (pick) {
        LabeledOrdering sol{*pick, std::vector<int>(pick->size(), 1)};
        certify(red.instance, sol, false);
        out["ordering"] = ordering_to_json(red.instance, sol);
      }
    }
  } else if (kind == "ncl") {
    const ConstraintGraph cg = constraint_graph_from_json(field(req, "constraint_graph"));
    const NclReduction red = reduce_ncl(cg);
    const Instance& base = red.arrangement.base;
    out["arrangement"] = arrangement_to_json(red.arrangement);
    out["endpoints"] = Json::object();
    for (std::size_t e = 0; e < cg.edges.size(); ++e) {
      out["endpoints"][cg.edges[e].id] = {base.name(red.endpoint[e][0]), base.name(red.endpoint[e][1])};
    }
    if (witness) {
      const auto flips = ncl_oracle(cg);
      out["satisfiable"] = flips.has_value();
      if (flips) {
        Json ids = Json::array();
        for (std::size_t e : *flips) ids.push_back(cg.edges[e].id);
        out["flips"] = std::move(ids);
        out["moves"] = moves_to_json(base, moves_from_flips(cg, red, *flips))["moves"];
      }
    }
  } else {
    throw InputError("unknown reduction '" + kind + "'; expected sat-planar, sat-acyclic, sat-reversed, mis or ncl");
  }
  return {Outcome::Yes, std::move(out)};
}

ArrangementInstance request_arrangement(const Json& req) {
  if (req.contains("two_angle")) {
    return two_angle_to_arrangement(two_angle_scene_from_json(req.at("two_angle")),
                                    option<double>(req, "epsilon", kDefaultEpsilon));
  }
  return arrangement_from_json(field(req, "arrangement"));
}

ServiceResult arr_solve(const Json& req) {
  const ArrangementInstance inst = request_arrangement(req);
  auto moves = solve_bfs(inst);
  if (!moves) return decided(Outcome::No);
  if (!verify_sequence(inst, *moves).ok) throw InternalError("search produced an illegal move sequence");
  return decided(Outcome::Yes, {{"length", moves->size()}, {"moves", moves_to_json(inst.base, *moves)["moves"]}});
}

ServiceResult arr_verify(const Json& req) {
  const ArrangementInstance inst = request_arrangement(req);
  const auto moves = moves_from_json(inst.base, field(req, "moves"));
  const SequenceCheck check = verify_sequence(inst, moves);
  if (check.ok) return {Outcome::Yes, {{"result", "valid"}}};
  return {Outcome::No, {{"result", "invalid"}, {"index", check.index}, {"reason", check.reason}}};
}

double request_eps(const Json& req) {
  const double eps = option<double>(req, "epsilon", kDefaultEpsilon);
  if (!(eps > 0)) throw InputError("epsilon must be positive");
  return eps;
}

ServiceResult ramp_reduce(const Json& req) {
  const Scene scene = scene_from_json(field(req, "scene"));
  const double eps = request_eps(req);
  const Instance inst = reduce_scene(scene, eps);
  return {Outcome::Yes, {{"instance", instance_to_json(inst)}, {"robust", scene_is_robust(scene, eps)}}};
}

ServiceResult ramp_solve(const Json& req) {
  const Scene scene = scene_from_json(field(req, "scene"));
  const double eps = request_eps(req);
  const Instance inst = reduce_scene(scene, eps);
  const SolveResult r = solve_exact(inst, exact_options(req));
  if (r.status != SolveStatus::Yes) {
    return decided(r.status == SolveStatus::No ? Outcome::No : Outcome::Unknown, {{"stats", {{"nodes", r.nodes}}}});
  }
  certify(inst, *r.witness, true);
  const Schedule sched = schedule_from_solution(scene, *r.witness);
  if (auto hit = verify_schedule(scene, sched, eps)) {
    throw InternalError("schedule from a verified ordering collides at step " + std::to_string(hit->step));
  }
  return decided(Outcome::Yes, {{"schedule", schedule_to_json(scene, sched)},
                                {"ordering", ordering_to_json(inst, *r.witness)},
                                {"stats", {{"nodes", r.nodes}}}});
}

ServiceResult ramp_verify(const Json& req) {
  const Scene scene = scene_from_json(field(req, "scene"));
  const Schedule sched = schedule_from_json(scene, field(req, "schedule"));
  if (auto hit = verify_schedule(scene, sched, request_eps(req))) {
    Json collision{{"step", hit->step},
                   {"rotor", scene.arms[hit->rotor].id},
                   {"other", scene.arms[hit->other].id}};
    return {Outcome::No, {{"result", "invalid"}, {"collision", std::move(collision)}}};
  }
  return {Outcome::Yes, {{"result", "valid"}}};
}

ServiceResult ramp_render(const Json& req) {
  const Scene scene = scene_from_json(field(req, "scene"));
  std::optional<Schedule> sched;
  if (req.contains("schedule")) sched = schedule_from_json(scene, req.at("schedule"));
  return {Outcome::Yes, {{"svg", render_svg(scene, sched ? &*sched : nullptr)}}};
}

ServiceResult gen_random(const Json& req) {
  const auto kind = option<std::string>(req, "kind", "instance");
  Rng rng(option<std::uint64_t>(req, "seed", 1));
  const auto n = option<std::size_t>(req, "n", 6);
  const int k = option<int>(req, "k", 2);
  const double density = option<double>(req, "density", 0.15);
  if (k < 1) throw InputError("k must be at least 1");
  if (!(density >= 0 && density <= 1)) throw InputError("arc density must lie in [0, 1]");
  Json out;
  if (kind == "instance") {
    out = instance_to_json(random_instance(rng, n, k, density));
  } else if (kind == "sparse") {
    out = instance_to_json(random_sparse_instance(rng, n, k, option<std::size_t>(req, "arcs", 3 * n),
                                                  option<double>(req, "back", 0.0)));
  } else if (kind == "md") {
    MdSample s = random_md_instance(rng, n, k, option<int>(req, "width", 4), density);
    out["instance"] = instance_to_json(s.instance);
    out["md"] = md_to_json(s.instance, s.md);
  } else if (kind == "scene") {
    out = scene_to_json(random_scene(rng, n, option<double>(req, "spread", 1.5), request_eps(req)));
  } else if (kind == "cnf") {
    out["dimacs"] = to_dimacs(random_cnf(rng, option<int>(req, "vars", 4), option<int>(req, "clauses", 4)));
  } else if (kind == "ncl") {
    out = constraint_graph_to_json(random_constraint_graph(rng, n));
  } else if (kind == "mis") {
    out = partitioned_graph_to_json(random_partitioned_graph(rng, n, option<std::size_t>(req, "parts", 3), density));
  } else {
    throw InputError("unknown generator '" + kind + "'; expected instance, sparse, md, scene, cnf, ncl or mis");
  }
  return {Outcome::Yes, std::move(out)};
}

}  // namespace

Json schema_versions() {
  return {{"instance", 1},     {"ordering", 1},   {"td", 1},          {"pace_td", 2017},
          {"md", 1},           {"scene", 1},      {"schedule", 1},    {"two_angle_scene", 1},
          {"arrangement", 1},  {"moves", 1},      {"dimacs_cnf", 1},  {"partitioned_graph", 1},
          {"constraint_graph", 1}};
}

ServiceResult run_operation(std::string_view op, const Json& request) {
  using Handler = ServiceResult (*)(const Json&);
  static const std::map<std::string_view, Handler> handlers{
      {"co.solve", co_solve},         {"co.verify", co_verify},     {"co.reduce", co_reduce},
      {"arr.solve", arr_solve},       {"arr.verify", arr_verify},   {"ramp.reduce", ramp_reduce},
      {"ramp.solve", ramp_solve},     {"ramp.verify", ramp_verify}, {"ramp.render", ramp_render},
      {"gen.random", gen_random},
  };
  if (op == "version") {
    return {Outcome::Yes, {{"version", kLibraryVersion}, {"schemas", schema_versions()}}};
  }
  auto it = handlers.find(op);
  if (it == handlers.end()) throw InputError("unknown operation '" + std::string(op) + "'");
  return it->second(request);
}

}  // namespace compat

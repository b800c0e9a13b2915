#include <algorithm>
#include <string>

#include "compat/exact.hpp"
#include "compat/generators.hpp"
#include "compat/reductions.hpp"
#include "compat/verifier.hpp"
#include "doctest.h"
#include "support/build.hpp"
#include "support/oracles.hpp"

using namespace compat;
using testing_support::fixture;

namespace {

bool has(const Instance& inst, const char* graph, const char* tail, const char* head) {
  const Side side = graph[0] == 'A' ? Side::A : Side::B;
  const int label = graph[1] - '0';
  return inst.graph(side, label).has_arc(inst.index_of(tail), inst.index_of(head));
}

CnfFormula formula(int vars, std::vector<std::array<int, 3>> clauses) { return {vars, std::move(clauses)}; }

Assignment assignment_of(std::uint32_t mask, int vars) {
  Assignment a(static_cast<std::size_t>(vars));
  for (int j = 0; j < vars; ++j) a[static_cast<std::size_t>(j)] = (mask >> j) & 1U;
  return a;
}

// Four OR vertices on a complete graph.
ConstraintGraph small_constraint_graph() {
  ConstraintGraph cg;
  cg.vertices = {"o", "p", "q", "r"};
  cg.types = {NclType::Or, NclType::Or, NclType::Or, NclType::Or};
  cg.edges = {{"e1", 0, 1, 2}, {"e2", 0, 2, 2}, {"e3", 0, 3, 2},
              {"e4", 1, 2, 2}, {"e5", 2, 3, 2}, {"e6", 3, 1, 2}};
  cg.source_heads = {0, 0, 3, 1, 2, 3};
  cg.target_heads = {0, 2, 0, 1, 2, 3};
  return cg;
}

}  // namespace

TEST_CASE("DIMACS") {
  const CnfFormula phi = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n");
  CHECK(phi.num_vars == 3);
  REQUIRE(phi.clauses.size() == 2);
  CHECK(phi.clauses[0] == std::array<int, 3>{1, -2, 3});
  CHECK(parse_dimacs(to_dimacs(phi)).clauses == phi.clauses);
  CHECK(parse_dimacs("p cnf 2 1\n1 2\n-1 0\n").clauses.size() == 1);

  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3 -1 0\n"), InputError);
}

TEST_CASE("SAT oracle") {
  CHECK(sat_oracle(formula(0, {}))->empty());
  CHECK_FALSE(sat_oracle(formula(1, {{1, 1, 1}, {-1, -1, -1}})));
  const auto asg = sat_oracle(formula(2, {{1, 2, 2}, {-1, -1, 2}}));
  REQUIRE(asg);
  CHECK(*asg == Assignment{false, true});
  Rng rng(91);
  for (int round = 0; round < 100; ++round) {
    const CnfFormula phi = random_cnf(rng, rng.range(1, 6), rng.range(1, 12));
    const auto found = sat_oracle(phi);
    CHECK(found.has_value() == oracle::brute_sat(phi));
    if (found) CHECK(satisfies(phi, *found));
  }
}

TEST_CASE("planar SAT reduction") {
  SUBCASE("single clause") {
    const CnfFormula phi = formula(3, {{1, 2, -3}});
    const SatReduction red = reduce_sat_planar(phi);
    const Instance& inst = red.instance;
    CHECK(inst.vertex_count() == 6);
    CHECK(inst.k() == 2);
    CHECK(has(inst, "A2", "c1^1", "c1^2"));
    CHECK(has(inst, "A2", "c1^2", "c1^3"));
    CHECK(has(inst, "A2", "c1^3", "c1^1"));
    CHECK(has(inst, "A1", "c1^1", "x1"));
    CHECK(has(inst, "A1", "c1^2", "x2"));
    CHECK(has(inst, "A2", "x1", "c1^1"));
    CHECK(has(inst, "A2", "x2", "c1^2"));
    CHECK(has(inst, "B1", "c1^3", "x3"));
    CHECK(has(inst, "B1", "x3", "c1^3"));
    CHECK(inst.total_arc_count() == 9);
    CHECK(inst.b(2).arc_count() == 0);

    const LabeledOrdering sol = ordering_from_assignment(phi, red, {true, false, false});
    CHECK_FALSE(verify_direct(inst, sol));
    CHECK(satisfies(phi, assignment_from_ordering(phi, red, sol)));
    CHECK_THROWS_AS(ordering_from_assignment(phi, red, {false, false, true}), InputError);
  }
  SUBCASE("empty formula") {
    const SatReduction red = reduce_sat_planar(formula(0, {}));
    CHECK(red.instance.vertex_count() == 0);
    CHECK(ordering_from_assignment(formula(0, {}), red, {}).size() == 0);
  }
  SUBCASE("all-positive formula with everything true") {
    const CnfFormula phi = formula(3, {{1, 2, 3}, {3, 2, 1}});
    const SatReduction red = reduce_sat_planar(phi);
    const LabeledOrdering sol = ordering_from_assignment(phi, red, {true, true, true});
    CHECK_FALSE(verify_direct(red.instance, sol));
    auto label_of = [&](VertexIndex v) {
      return sol.labels[static_cast<std::size_t>(std::find(sol.order.begin(), sol.order.end(), v) - sol.order.begin())];
    };
    for (VertexIndex x : red.variable) CHECK(label_of(x) == 1);
    for (const auto& ids : red.literal) {
      int ones = 0;
      for (VertexIndex c : ids) ones += label_of(c) == 1 ? 1 : 0;
      CHECK(ones == 1);
    }
  }
}

TEST_CASE("acyclic SAT reduction") {
  SUBCASE("single clause") {
    const SatReduction red = reduce_sat_acyclic(formula(3, {{1, 2, -3}}));
    CHECK(red.instance.vertex_count() == 9);
    for (int l = 1; l <= 2; ++l) {
      CHECK_FALSE(oracle::has_cycle(red.instance.a(l)));
      CHECK_FALSE(oracle::has_cycle(red.instance.b(l)));
    }
  }
  SUBCASE("empty formula") {
    const SatReduction red = reduce_sat_acyclic(formula(0, {}));
    CHECK(red.instance.vertex_count() == 1);
    CHECK(red.instance.name(red.global) == "g");
    CHECK(solve_exact(red.instance).status == SolveStatus::Yes);
  }
}

TEST_CASE("reversed SAT reduction") {
  SUBCASE("four-variable fixture") {
    const CnfFormula phi = parse_dimacs(read_text_file(fixture("four_vars.cnf")));
    const SatReduction red = reduce_sat_reversed(phi);
    const Instance stored = instance_from_json(parse_json_text(read_text_file(fixture("four_vars_reversed.json"))));
    CHECK(red.instance == stored);
    CHECK(red.instance.vertex_count() == 2 + 4 + 2);
    const LabeledOrdering sol =
        ordering_from_json(red.instance, parse_json_text(read_text_file(fixture("four_vars_reversed_solution.json"))));
    CHECK_FALSE(verify_direct(red.instance, sol));
    CHECK(satisfies(phi, assignment_from_ordering(phi, red, sol)));
  }
  SUBCASE("empty formula orders t1 before t2") {
    const SatReduction red = reduce_sat_reversed(formula(0, {}));
    CHECK(red.instance.vertex_count() == 2);
    const auto sol = oracle::brute_solve(red.instance);
    REQUIRE(sol);
    CHECK(sol->order[0] == red.t1);
    const LabeledOrdering wrong{{red.t2, red.t1}, {1, 1}};
    CHECK(verify_direct(red.instance, wrong));
  }
  SUBCASE("A and reversed B follow clauses, variables, t2, t1") {
    Rng rng(92);
    for (int round = 0; round < 50; ++round) {
      const SatReduction red = reduce_sat_reversed(random_cnf(rng, rng.range(1, 5), rng.range(0, 5)));
      std::vector<std::size_t> pos(red.instance.vertex_count());
      std::size_t next = 0;
      for (VertexIndex c : red.clause) pos[c] = next++;
      for (VertexIndex x : red.variable) pos[x] = next++;
      pos[red.t2] = next++;
      pos[red.t1] = next++;
      for (int l = 1; l <= 3; ++l) {
        for (auto [t, h] : red.instance.a(l).arcs()) CHECK(pos[t] < pos[h]);
        for (auto [t, h] : red.instance.b(l).arcs()) CHECK(pos[h] < pos[t]);
      }
    }
  }
}

TEST_CASE("SAT reductions preserve satisfiability and map witnesses both ways") {
  for (SatReductionKind kind : {SatReductionKind::Planar, SatReductionKind::Acyclic, SatReductionKind::Reversed}) {
    const std::string name = sat_reduction_name(kind);
    CAPTURE(name);
    Rng rng(93);
    int yes = 0;
    int no = 0;
    for (int round = 0; round < 100; ++round) {
      const int q = rng.range(1, 4);
      const CnfFormula phi = random_cnf(rng, q, rng.range(1, 4));
      const SatReduction red = reduce_sat(phi, kind);
      const bool sat = oracle::brute_sat(phi);
      const SolveResult res = solve_exact(red.instance);
      REQUIRE(res.status != SolveStatus::Unknown);
      CHECK((res.status == SolveStatus::Yes) == sat);
      if (!sat) {
        ++no;
        continue;
      }
      ++yes;
      CHECK(satisfies(phi, assignment_from_ordering(phi, red, *res.witness)));
      for (std::uint32_t mask = 0; mask < (1U << q); ++mask) {
        const Assignment asg = assignment_of(mask, q);
        if (!satisfies(phi, asg)) continue;
        const LabeledOrdering forward = ordering_from_assignment(phi, red, asg);
        CHECK_FALSE(verify_direct(red.instance, forward));
        CHECK(satisfies(phi, assignment_from_ordering(phi, red, forward)));
      }
    }
    CHECK(yes > 10);
    CHECK(no >= 1);
  }
}

TEST_CASE("SAT reductions of unsatisfiable formulas are no-instances") {
  const std::vector<CnfFormula> unsat{
      formula(1, {{1, 1, 1}, {-1, -1, -1}}),
      formula(2, {{1, 2, 2}, {1, -2, -2}, {-1, 2, 2}, {-1, -2, -2}}),
      formula(2, {{1, 1, 2}, {-2, -2, -2}, {-1, -1, -1}}),
  };
  for (const CnfFormula& phi : unsat) {
    REQUIRE_FALSE(oracle::brute_sat(phi));
    for (SatReductionKind kind : {SatReductionKind::Planar, SatReductionKind::Acyclic, SatReductionKind::Reversed}) {
      CHECK(solve_exact(reduce_sat(phi, kind).instance).status == SolveStatus::No);
    }
  }
}

TEST_CASE("extraction rejects a non-solution") {
  const CnfFormula phi = formula(3, {{1, 2, -3}});
  const SatReduction red = reduce_sat_planar(phi);
  LabeledOrdering sol = ordering_from_assignment(phi, red, {true, false, false});
  std::reverse(sol.order.begin(), sol.order.end());
  std::reverse(sol.labels.begin(), sol.labels.end());
  CHECK_THROWS_AS(assignment_from_ordering(phi, red, sol), InputError);
}

TEST_CASE("multicolored independent set reduction") {
  PartitionedGraph pg{{"u", "v"}, {}, {{0}, {1}}};
  MisReduction red = reduce_mis(pg);
  CHECK(red.bound == 2);
  CHECK(red.instance.k() == 1);
  CHECK(red.instance.total_arc_count() == 0);
  CHECK(oracle::brute_bounded(red.instance, 2));

  pg.edges = {{0, 1}};
  red = reduce_mis(pg);
  CHECK(red.instance.a(1).has_arc(0, 1));
  CHECK(red.instance.a(1).has_arc(1, 0));
  CHECK(red.instance.b(1).arc_count() == 0);
  CHECK_FALSE(oracle::brute_bounded(red.instance, 2));
  CHECK(solve_bounded(red.instance, 2).status == SolveStatus::No);

  CHECK_THROWS_AS(validate_partitioned_graph({{"u", "v"}, {}, {{0}}}), InputError);
  CHECK_THROWS_AS(validate_partitioned_graph({{"u", "v"}, {{0, 0}}, {{0}, {1}}}), InputError);

  Rng rng(94);
  int yes = 0;
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 6));
    const std::size_t parts = static_cast<std::size_t>(rng.range(1, static_cast<int>(std::min<std::size_t>(n, 3))));
    const PartitionedGraph g = random_partitioned_graph(rng, n, parts, rng.unit() * 0.6);
    const MisReduction r = reduce_mis(g);
    CHECK(r.bound == parts);
    const bool expected = oracle::brute_mis(g);
    const auto pick = mis_oracle(g);
    CHECK(pick.has_value() == expected);
    if (pick) CHECK(is_multicolored_independent(g, *pick));
    const SolveResult res = solve_bounded(r.instance, r.bound);
    CHECK((res.status == SolveStatus::Yes) == expected);
    if (res.witness) {
      yes += 1;
      std::vector<VertexIndex> chosen;
      chosen = res.witness->order;
      CHECK(is_multicolored_independent(g, chosen));
    }
    const PartitionedGraph back = partitioned_graph_from_json(partitioned_graph_to_json(g));
    CHECK(back.edges.size() == g.edges.size());
    CHECK(back.parts == g.parts);
  }
  CHECK(yes > 20);
}

TEST_CASE("constraint graph validation and oracle") {
  const ConstraintGraph cg = small_constraint_graph();
  CHECK_NOTHROW(validate_constraint_graph(cg));

  ConstraintGraph same = cg;
  same.target_heads = same.source_heads;
  CHECK(ncl_oracle(same)->empty());

  ConstraintGraph light = cg;
  light.edges[0].weight = 1;
  CHECK_THROWS_AS(validate_constraint_graph(light), InputError);
  ConstraintGraph illegal = cg;
  illegal.source_heads[0] = 1;
  illegal.source_heads[1] = 2;
  illegal.source_heads[2] = 3;
  CHECK_THROWS_AS(validate_constraint_graph(illegal), InputError);

  // o keeps two heavy inward edges, so its third edge may turn outward.
  std::vector<VertexIndex> heads = cg.source_heads;
  heads[2] = 0;
  CHECK(is_legal_orientation(cg, heads));
  heads[2] = 3;
  CHECK(is_legal_orientation(cg, heads));

  const auto flips = ncl_oracle(cg);
  REQUIRE(flips);
  CHECK(static_cast<int>(flips->size()) == oracle::ncl_distance(cg));

  const ConstraintGraph back = constraint_graph_from_json(constraint_graph_to_json(cg));
  CHECK(back.vertices == cg.vertices);
  CHECK(back.source_heads == cg.source_heads);
  CHECK(back.target_heads == cg.target_heads);
}

TEST_CASE("constraint-logic reduction") {
  SUBCASE("gadget arcs") {
    const ConstraintGraph cg = small_constraint_graph();
    const NclReduction red = reduce_ncl(cg);
    const Instance& inst = red.arrangement.base;
    CHECK(inst.vertex_count() == 2 * cg.edges.size());
    // Incident edges of o in declaration order are e1, e2, e3.
    CHECK(has(inst, "B1", "o^e1", "o^e3"));
    CHECK(has(inst, "B1", "o^e1", "o^e2"));
    CHECK(has(inst, "B1", "o^e2", "o^e1"));
    CHECK(has(inst, "B2", "o^e2", "o^e3"));
    CHECK(has(inst, "B2", "o^e3", "o^e1"));
    CHECK(has(inst, "B2", "o^e3", "o^e2"));
    CHECK_FALSE(has(inst, "B1", "o^e3", "o^e1"));
    for (int l = 1; l <= 2; ++l) {
      CHECK(inst.a(l).arc_count() == 2 * cg.edges.size());
      for (const auto& ends : red.endpoint) {
        CHECK(inst.a(l).has_arc(ends[0], ends[1]));
        CHECK(inst.a(l).has_arc(ends[1], ends[0]));
      }
    }
    const auto count = [](const VertexSubset& s) { return std::count(s.begin(), s.end(), 1); };
    CHECK(count(red.arrangement.start) == static_cast<long>(cg.edges.size()));
    CHECK(count(red.arrangement.target) == static_cast<long>(cg.edges.size()));
  }
  SUBCASE("AND gadget") {
    Rng rng(95);
    for (int round = 0; round < 50; ++round) {
      const ConstraintGraph cg = random_constraint_graph(rng, 2 * static_cast<std::size_t>(rng.range(1, 4)));
      const NclReduction red = reduce_ncl(cg);
      const Instance& inst = red.arrangement.base;
      for (VertexIndex w = 0; w < cg.vertices.size(); ++w) {
        if (cg.types[w] != NclType::And) continue;
        VertexIndex heavy = kNoVertex;
        std::vector<VertexIndex> light;
        for (std::size_t e = 0; e < cg.edges.size(); ++e) {
          const NclEdge& edge = cg.edges[e];
          if (edge.u != w && edge.v != w) continue;
          const VertexIndex end = red.endpoint[e][edge.u == w ? 0 : 1];
          if (edge.weight == 2) {
            heavy = end;
          } else {
            light.push_back(end);
          }
        }
        REQUIRE(heavy != kNoVertex);
        REQUIRE(light.size() == 2);
        for (int l = 1; l <= 2; ++l) {
          for (VertexIndex x : light) CHECK(inst.b(l).has_arc(x, heavy));
        }
      }
      // Every vertex touches one digon partner only in the A graphs.
      const Digraph simple = instance_union(inst, false);
      for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
        CHECK(inst.a(1).out_degree(v) == 1);
        CHECK(simple.out_degree(v) <= 6);
      }
    }
  }
  SUBCASE("reachability matches the constraint-logic oracle") {
    Rng rng(96);
    int reachable = 0;
    int unreachable = 0;
    for (int round = 0; round < 60; ++round) {
      const ConstraintGraph cg = random_constraint_graph(rng, 2 * static_cast<std::size_t>(rng.range(1, 3)));
      if (cg.edges.size() > 8) continue;
      const NclReduction red = reduce_ncl(cg);
      const int dist = oracle::ncl_distance(cg);
      const auto flips = ncl_oracle(cg);
      CHECK(flips.has_value() == (dist >= 0));
      const auto moves = solve_bfs(red.arrangement);
      CHECK(moves.has_value() == (dist >= 0));
      if (dist < 0) {
        ++unreachable;
        continue;
      }
      ++reachable;
      REQUIRE(flips);
      CHECK(static_cast<int>(flips->size()) == dist);
      REQUIRE(moves);
      CHECK(moves->size() == 2 * flips->size());

      const std::vector<Move> mapped = moves_from_flips(cg, red, *flips);
      CHECK(mapped.size() == 2 * flips->size());
      CHECK(verify_sequence(red.arrangement, mapped).ok);
      CHECK(flips_from_moves(cg, red, mapped) == *flips);
    }
    CHECK(reachable > 10);
    MESSAGE("unreachable constraint graphs: " << unreachable);
  }
  SUBCASE("malformed move sequences") {
    const ConstraintGraph cg = small_constraint_graph();
    const NclReduction red = reduce_ncl(cg);
    CHECK_THROWS_AS(flips_from_moves(cg, red, {{MoveOp::Remove, 0, 1}}), InputError);
    CHECK_THROWS_AS(flips_from_moves(cg, red, {{MoveOp::Remove, 0, 1}, {MoveOp::Add, 2, 1}}), InputError);
  }
}

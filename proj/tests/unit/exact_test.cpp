#include <algorithm>

#include "compat/exact.hpp"
#include "compat/generators.hpp"
#include "compat/poly.hpp"
#include "compat/verifier.hpp"
#include "doctest.h"
#include "support/build.hpp"
#include "support/oracles.hpp"

using namespace compat;
using testing_support::make_instance;

TEST_CASE("propagation rules") {
  SUBCASE("arc in every A graph forces the head first") {
    const Instance inst = make_instance(2, {"u", "v"}, {{"A1", "u", "v"}, {"A2", "u", "v"}});
    const PropagationFacts f = propagate(inst);
    CHECK(f.forced_precedences == std::vector<Arc>{{1, 0}});
    CHECK_FALSE(f.infeasible);
  }
  SUBCASE("arc in every B graph forces the head first") {
    const Instance inst = make_instance(2, {"u", "v"}, {{"B1", "u", "v"}, {"B2", "u", "v"}});
    CHECK(propagate(inst).forced_precedences == std::vector<Arc>{{1, 0}});
  }
  SUBCASE("A and reversed B arc forbid the label") {
    const Instance inst = make_instance(1, {"u", "v"}, {{"A1", "u", "v"}, {"B1", "v", "u"}});
    const PropagationFacts f = propagate(inst);
    CHECK(f.forbidden_labels[0] == std::vector<int>{1});
    CHECK(f.infeasible);
  }
}

TEST_CASE("propagation never removes a used vertex label or contradicts a solution") {
  Rng rng(41);
  for (int round = 0; round < 150; ++round) {
    const Instance inst = random_instance(rng, static_cast<std::size_t>(rng.range(2, 5)), 2, 0.25);
    const PropagationFacts f = propagate(inst);
    bool any = false;
    oracle::for_each_labeled_ordering(oracle::all_vertices(inst), 2, [&](const auto& order, const auto& labels) {
      if (!oracle::is_solution(inst, order, labels)) return true;
      any = true;
      std::vector<std::size_t> pos(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = i;
        const auto& banned = f.forbidden_labels[order[i]];
        CHECK(std::find(banned.begin(), banned.end(), labels[i]) == banned.end());
      }
      for (auto [first, later] : f.forced_precedences) CHECK(pos[first] < pos[later]);
      return true;
    });
    if (f.infeasible) CHECK_FALSE(any);
  }
}

TEST_CASE("exact solver is sound and complete on small instances") {
  Rng rng(42);
  for (int round = 0; round < 500; ++round) {
    const Instance inst = random_instance(rng, static_cast<std::size_t>(rng.range(0, 6)), rng.range(1, 2),
                                          rng.unit() * 0.35);
    const SolveResult r = solve_exact(inst);
    const bool expected = oracle::brute_solve(inst).has_value();
    CHECK((r.status == SolveStatus::Yes) == expected);
    if (r.witness) CHECK(oracle::is_solution(inst, *r.witness));

    ExactOptions off;
    off.use_propagation = false;
    const SolveResult plain = solve_exact(inst, off);
    CHECK(plain.status == r.status);
    CHECK(plain.witness == r.witness);
  }
}

TEST_CASE("exact solver agrees with the k = 1 solver") {
  Rng rng(43);
  for (int round = 0; round < 500; ++round) {
    const Instance inst = random_instance(rng, static_cast<std::size_t>(rng.range(1, 12)), 1, rng.unit() * 0.2);
    CHECK((solve_exact(inst).status == SolveStatus::Yes) == solve_k1(inst).has_value());
  }
}

TEST_CASE("exact solver edge cases") {
  const Instance empty = make_instance(2, {}, {});
  const SolveResult r = solve_exact(empty);
  CHECK(r.status == SolveStatus::Yes);
  REQUIRE(r.witness);
  CHECK(r.witness->size() == 0);

  const Instance cyc = make_instance(1, {"u", "v"}, {{"A1", "u", "v"}, {"B1", "v", "u"}});
  CHECK(solve_exact(cyc).status == SolveStatus::No);
}

TEST_CASE("witness is the first one in search order and stable across threads") {
  Rng rng(44);
  for (int round = 0; round < 100; ++round) {
    const Instance inst = random_instance(rng, 7, 2, 0.2);
    const SolveResult one = solve_exact(inst);
    for (int threads : {2, 4}) {
      ExactOptions opts;
      opts.threads = threads;
      const SolveResult many = solve_exact(inst, opts);
      CHECK(many.status == one.status);
      CHECK(many.witness == one.witness);
    }
  }
}

TEST_CASE("node budget reports unknown") {
  Rng rng(45);
  const Instance inst = random_instance(rng, 12, 2, 0.1);
  ExactOptions opts;
  opts.max_nodes = 3;
  opts.use_propagation = false;
  CHECK(solve_exact(inst, opts).status == SolveStatus::Unknown);
}

TEST_CASE("bounded variant") {
  const Instance cyc = make_instance(1, {"u", "v"}, {{"A1", "u", "v"}, {"B1", "v", "u"}});
  const SolveResult zero = solve_bounded(cyc, 0);
  CHECK(zero.status == SolveStatus::Yes);
  CHECK(zero.witness->size() == 0);
  CHECK(solve_bounded(cyc, 3).status == SolveStatus::No);
  CHECK(solve_bounded(cyc, 1).status == SolveStatus::Yes);
  CHECK(solve_bounded(cyc, 2).status == SolveStatus::No);

  Rng rng(46);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 5));
    const Instance inst = random_instance(rng, n, 2, rng.unit() * 0.5);
    const auto b = static_cast<std::size_t>(rng.below(n + 1));
    const SolveResult r = solve_bounded(inst, b);
    CHECK((r.status == SolveStatus::Yes) == oracle::brute_bounded(inst, b));
    if (r.witness) {
      CHECK(r.witness->size() >= b);
      CHECK(oracle::is_solution(inst, *r.witness, true));
    }
    const SolveResult full = solve_bounded(inst, n);
    CHECK(full.status == solve_exact(inst).status);
  }
}

TEST_CASE("enumeration") {
  CHECK(enumerate_solutions(make_instance(1, {"u", "v"}, {}), 10).size() == 2);
  CHECK(enumerate_solutions(make_instance(1, {"u", "v"}, {{"A1", "u", "v"}, {"B1", "v", "u"}}), 10).empty());
  CHECK(enumerate_solutions(make_instance(2, {"a", "b", "c"}, {}), 5).size() == 5);

  Rng rng(47);
  for (int round = 0; round < 60; ++round) {
    const Instance inst = random_instance(rng, static_cast<std::size_t>(rng.range(1, 5)), 2, 0.2);
    const auto all = enumerate_solutions(inst, 1000000);
    CHECK(all.size() == oracle::brute_count(inst));
    for (const auto& sol : all) CHECK(oracle::is_solution(inst, sol));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

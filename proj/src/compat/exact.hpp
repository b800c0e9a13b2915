#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "compat/model.hpp"

namespace compat {

struct PropagationFacts {
  // forbidden_labels[v] lists the labels v can never take, ascending.
  std::vector<std::vector<int>> forbidden_labels;
  // (first, later): first must precede later in every solution.
  std::vector<Arc> forced_precedences;
  bool infeasible = false;
};

PropagationFacts propagate(const Instance& inst);

enum class SolveStatus { Yes, No, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::No;
  std::optional<LabeledOrdering> witness;
  std::uint64_t nodes = 0;
};

struct ExactOptions {
  bool use_propagation = true;
  std::uint64_t max_nodes = 0;  // 0 means unlimited; applies per root branch when threads > 1
  int threads = 1;
};

// Front-to-back backtracking. Candidates are tried by vertex index, then by
// ascending label, so the witness is the first one in that order.
SolveResult solve_exact(const Instance& inst, const ExactOptions& opts = {});

// Ordering of some subset with at least b vertices.
SolveResult solve_bounded(const Instance& inst, std::size_t b, const ExactOptions& opts = {});

std::vector<LabeledOrdering> enumerate_solutions(const Instance& inst, std::size_t cap);

}  // namespace compat

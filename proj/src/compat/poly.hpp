#pragma once

#include <optional>
#include <vector>

#include "compat/model.hpp"

namespace compat {

// Kahn's algorithm; among ready vertices the smallest index goes first.
// Returns nullopt when g has a directed cycle.
std::optional<std::vector<VertexIndex>> topo_order(const Digraph& g);
bool is_acyclic(const Digraph& g);

// Throws InputError unless inst.k() == 1.
std::optional<LabeledOrdering> solve_k1(const Instance& inst);

struct TrivialWitness {
  int label;
  LabeledOrdering ordering;
};

// Smallest label whose pair union is acyclic, with the uniform-label witness.
// nullopt does not mean the instance is a no-instance.
std::optional<TrivialWitness> find_trivial_pair(const Instance& inst, int threads = 1);

}  // namespace compat

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compat/model_io.hpp"

namespace compat {

using LabelMask = std::uint32_t;  // bit l-1 set when label l is selected

enum class MdOp { Vertex, Union, Subst };

struct MdNode {
  MdOp op = MdOp::Vertex;
  VertexIndex vertex = 0;         // Vertex
  std::vector<int> children;      // Union, Subst
  LabeledDigraph pattern;         // Subst: arcs over placeholders 0..p-1
};

// Expression tree stored children-first; the root is the last node. A
// complete join of two parts is a Subst with two placeholders.
struct ModularDecomposition {
  std::vector<MdNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
};

// Template placeholders are 1-based in JSON.
ModularDecomposition md_from_json(const Instance& inst, const Json& doc);
Json md_to_json(const Instance& inst, const ModularDecomposition& md);

// Throws InputError when two parts of a Union/Subst share a vertex.
LabeledDigraph eval_md(const ModularDecomposition& md, std::size_t vertex_count);

// Empty when eval_md(md) is exactly the labeled union of inst.
std::optional<std::string> validate_md(const Instance& inst, const ModularDecomposition& md);

// Keeps x -> y when some label selected at x has its A tag on the arc or some
// label selected at y has its B tag on it; feasible when the kept arcs are acyclic.
bool template_check(const LabeledDigraph& pattern, const std::vector<LabelMask>& selections);

inline constexpr int kMaxModularLabels = 16;

// Per node, the sorted list of label selections that solve its subgraph.
std::vector<std::vector<LabelMask>> label_selections(const ModularDecomposition& md, const Instance& inst);

// Throws InputError when validate_md fails and InternalError when the
// reconstructed witness does not verify.
std::optional<LabeledOrdering> solve_modular(const Instance& inst, const ModularDecomposition& md);

}  // namespace compat

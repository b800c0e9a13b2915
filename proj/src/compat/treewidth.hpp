#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compat/model.hpp"

namespace compat {

struct TreeDecomposition {
  std::vector<std::vector<VertexIndex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;

  int width() const;
};

struct TdDefect {
  std::string property;  // "range", "tree", "vertex", "edge", "connected"
  std::string detail;
};

// Checks the three decomposition properties against a symmetric digraph, plus
// that the bag graph is a tree.
std::optional<TdDefect> validate_td(const Digraph& graph, const TreeDecomposition& td);

// Min-fill greedy elimination. Disconnected pieces are chained together.
TreeDecomposition heuristic_td(const Digraph& graph);

enum class NiceKind { Leaf, Introduce, Forget, Join };

const char* nice_kind_name(NiceKind kind);

struct NiceNode {
  NiceKind kind;
  std::vector<VertexIndex> bag;  // sorted; may be empty between a Forget and an Introduce
  VertexIndex vertex = 0;        // Leaf/Introduce/Forget
  int left = -1;
  int right = -1;                // Join only
};

// Nodes are stored children-first; the root is the last node and has a
// singleton bag.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  int width() const;
  TreeDecomposition as_td() const;
};

// Throws InputError when td is not a tree over in-range vertices.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, std::size_t vertex_count);

struct TreewidthStats {
  std::vector<std::size_t> table_entries;  // per nice node
  std::vector<std::size_t> true_entries;
};

inline constexpr int kMaxTreewidth = 8;

// Throws InputError when ntd is not a nice decomposition of the undirected
// union or is wider than kMaxTreewidth.
std::optional<LabeledOrdering> solve_treewidth(const Instance& inst, const NiceTreeDecomposition& ntd,
                                               TreewidthStats* stats = nullptr);

}  // namespace compat

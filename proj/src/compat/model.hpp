#pragma once

// Shared domain types: digraphs over declaration-indexed vertices, instances
// made of k (A, B) digraph pairs, labeled orderings and labeled unions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace compat {

using VertexIndex = std::uint32_t;
using Arc = std::pair<VertexIndex, VertexIndex>;

// Malformed or inconsistent input (bad file, unknown vertex, contract breach).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver produced something it could not certify. Never expected.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Side { A, B };

// Immutable simple digraph on vertices 0..n-1. Arcs are kept sorted and
// deduplicated; adjacency is stored in CSR form for both directions.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t vertex_count);
  // Throws InputError on self-loops or out-of-range endpoints.
  Digraph(std::size_t vertex_count, std::vector<Arc> arcs);

  std::size_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const VertexIndex> out(VertexIndex v) const;
  std::span<const VertexIndex> in(VertexIndex v) const;
  std::size_t out_degree(VertexIndex v) const { return out(v).size(); }
  std::size_t in_degree(VertexIndex v) const { return in(v).size(); }
  bool has_arc(VertexIndex tail, VertexIndex head) const;

  bool operator==(const Digraph& other) const {
    return n_ == other.n_ && arcs_ == other.arcs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_offset_{0};
  std::vector<std::uint32_t> in_offset_{0};
  std::vector<VertexIndex> out_adj_;
  std::vector<VertexIndex> in_adj_;
};

struct LabelPair {
  Digraph a;
  Digraph b;
  bool operator==(const LabelPair&) const = default;
};

// Vertex names plus k label pairs. Every digraph spans all vertices.
class Instance {
 public:
  Instance(std::vector<std::string> vertices, std::vector<LabelPair> pairs);

  std::size_t vertex_count() const { return names_.size(); }
  int k() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(VertexIndex v) const { return names_.at(v); }
  std::optional<VertexIndex> find(std::string_view name) const;
  // Throws InputError for unknown names.
  VertexIndex index_of(std::string_view name) const;

  // Labels are 1-based throughout the public surface.
  const LabelPair& pair(int label) const;
  const Digraph& a(int label) const { return pair(label).a; }
  const Digraph& b(int label) const { return pair(label).b; }
  const Digraph& graph(Side side, int label) const {
    return side == Side::A ? a(label) : b(label);
  }
  std::span<const LabelPair> pairs() const { return pairs_; }
  std::size_t total_arc_count() const;

  bool operator==(const Instance& other) const {
    return names_ == other.names_ && pairs_ == other.pairs_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<LabelPair> pairs_;
};

// Incremental construction by name; reductions and tests build through this.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(int k);

  VertexIndex add_vertex(std::string name);
  VertexIndex vertex(std::string_view name) const;
  void add_arc(Side side, int label, VertexIndex tail, VertexIndex head);
  void add_arc(Side side, int label, std::string_view tail, std::string_view head);
  std::size_t vertex_count() const { return names_.size(); }
  Instance build() const;

 private:
  int k_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::vector<Arc>> arcs_;  // 2k lists: A1, B1, A2, B2, ...
};

// A permutation of (a subset of) the vertices with a 1-based label per
// position. Structural validity is checked by the verifier, not here.
struct LabeledOrdering {
  std::vector<VertexIndex> order;
  std::vector<int> labels;

  std::size_t size() const { return order.size(); }
  bool operator==(const LabeledOrdering&) const = default;
};

// Tag code for "A<l>" is 2(l-1), for "B<l>" it is 2(l-1)+1.
using Tag = std::uint32_t;
using TagList = std::vector<Tag>;  // sorted, nonempty for every stored arc

inline Tag make_tag(Side side, int label) {
  return static_cast<Tag>(2 * (label - 1) + (side == Side::B ? 1 : 0));
}
inline Side tag_side(Tag tag) { return (tag & 1U) ? Side::B : Side::A; }
inline int tag_label(Tag tag) { return static_cast<int>(tag / 2) + 1; }
std::string tag_name(Tag tag);
// Parses "A3" / "B12"; throws InputError otherwise.
Tag parse_tag(std::string_view text);

struct LabeledDigraph {
  std::size_t vertex_count = 0;
  std::map<Arc, TagList> arcs;

  bool operator==(const LabeledDigraph&) const = default;
};

Instance induced_instance(const Instance& inst, std::span<const VertexIndex> subset);
Instance induced_instance(const Instance& inst, const std::vector<std::string>& subset);

// Throws InputError when the graphs disagree on the vertex count or the list
// is empty. The undirected variant returns a symmetric digraph.
Digraph union_graph(std::span<const Digraph* const> graphs, bool directed);
Digraph pair_union(const Instance& inst, int label);
Digraph instance_union(const Instance& inst, bool directed);

LabeledDigraph labeled_union(const Instance& inst);
Digraph reverse_graph(const Digraph& g);

}  // namespace compat

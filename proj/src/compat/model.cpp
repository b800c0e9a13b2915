#include "compat/model.hpp"

#include <algorithm>
#include <charconv>

namespace compat {

Digraph::Digraph(std::size_t vertex_count) : Digraph(vertex_count, {}) {}

Digraph::Digraph(std::size_t vertex_count, std::vector<Arc> arcs)
    : n_(vertex_count), arcs_(std::move(arcs)) {
  for (const auto& [tail, head] : arcs_) {
    if (tail >= n_ || head >= n_) {
      throw InputError("arc endpoint out of range");
    }
    if (tail == head) {
      throw InputError("self-loops are not allowed");
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  out_offset_.assign(n_ + 1, 0);
  in_offset_.assign(n_ + 1, 0);
  for (const auto& [tail, head] : arcs_) {
    ++out_offset_[tail + 1];
    ++in_offset_[head + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) {
    out_offset_[v + 1] += out_offset_[v];
    in_offset_[v + 1] += in_offset_[v];
  }
  out_adj_.resize(arcs_.size());
  in_adj_.resize(arcs_.size());
  std::vector<std::uint32_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
  // arcs_ is sorted by (tail, head), so both adjacency lists come out sorted.
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const auto [tail, head] = arcs_[i];
    out_adj_[i] = head;
    in_adj_[in_fill[head]++] = tail;
  }
}

std::span<const VertexIndex> Digraph::out(VertexIndex v) const {
  return std::span<const VertexIndex>(out_adj_).subspan(out_offset_[v],
                                                        out_offset_[v + 1] - out_offset_[v]);
}

std::span<const VertexIndex> Digraph::in(VertexIndex v) const {
  return std::span<const VertexIndex>(in_adj_).subspan(in_offset_[v],
                                                       in_offset_[v + 1] - in_offset_[v]);
}

bool Digraph::has_arc(VertexIndex tail, VertexIndex head) const {
  if (tail >= n_ || head >= n_) return false;
  const auto succ = out(tail);
  return std::binary_search(succ.begin(), succ.end(), head);
}

Instance::Instance(std::vector<std::string> vertices, std::vector<LabelPair> pairs)
    : names_(std::move(vertices)), pairs_(std::move(pairs)) {
  if (pairs_.empty()) {
    throw InputError("an instance needs at least one label pair (k >= 1)");
  }
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InputError("vertex identifiers must be nonempty");
    }
    if (!index_.emplace(names_[i], static_cast<VertexIndex>(i)).second) {
      throw InputError("duplicate vertex identifier '" + names_[i] + "'");
    }
  }
  for (const auto& p : pairs_) {
    if (p.a.vertex_count() != names_.size() || p.b.vertex_count() != names_.size()) {
      throw InputError("every digraph must span the instance vertex list");
    }
  }
}

std::optional<VertexIndex> Instance::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Instance::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

const LabelPair& Instance::pair(int label) const {
  if (label < 1 || label > k()) {
    throw InputError("label " + std::to_string(label) + " outside [1.." + std::to_string(k()) + "]");
  }
  return pairs_[static_cast<std::size_t>(label - 1)];
}

std::size_t Instance::total_arc_count() const {
  std::size_t total = 0;
  for (const auto& p : pairs_) total += p.a.arc_count() + p.b.arc_count();
  return total;
}

InstanceBuilder::InstanceBuilder(int k) : k_(k), arcs_(static_cast<std::size_t>(2 * std::max(k, 0))) {
  if (k < 1) throw InputError("k must be at least 1");
}

VertexIndex InstanceBuilder::add_vertex(std::string name) {
  const auto id = static_cast<VertexIndex>(names_.size());
  if (!index_.emplace(name, id).second) {
    throw InputError("duplicate vertex identifier '" + name + "'");
  }
  names_.push_back(std::move(name));
  return id;
}

VertexIndex InstanceBuilder::vertex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

void InstanceBuilder::add_arc(Side side, int label, VertexIndex tail, VertexIndex head) {
  if (label < 1 || label > k_) throw InputError("label out of range");
  arcs_[static_cast<std::size_t>(make_tag(side, label))].emplace_back(tail, head);
}

void InstanceBuilder::add_arc(Side side, int label, std::string_view tail, std::string_view head) {
  add_arc(side, label, vertex(tail), vertex(head));
}

Instance InstanceBuilder::build() const {
  std::vector<LabelPair> pairs;
  pairs.reserve(static_cast<std::size_t>(k_));
  for (int l = 1; l <= k_; ++l) {
    pairs.push_back({Digraph(names_.size(), arcs_[make_tag(Side::A, l)]),
                     Digraph(names_.size(), arcs_[make_tag(Side::B, l)])});
  }
  return Instance(names_, std::move(pairs));
}

std::string tag_name(Tag tag) {
  return (tag_side(tag) == Side::A ? "A" : "B") + std::to_string(tag_label(tag));
}

Tag parse_tag(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'A' && text[0] != 'B')) {
    throw InputError("bad arc label '" + std::string(text) + "'");
  }
  int label = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, label);
  if (ec != std::errc() || ptr != last || label < 1 || text[1] == '0') {
    throw InputError("bad arc label '" + std::string(text) + "'");
  }
  return make_tag(text[0] == 'A' ? Side::A : Side::B, label);
}

Instance induced_instance(const Instance& inst, std::span<const VertexIndex> subset) {
  constexpr VertexIndex kAbsent = static_cast<VertexIndex>(-1);
  std::vector<VertexIndex> remap(inst.vertex_count(), kAbsent);
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const VertexIndex v = subset[i];
    if (v >= inst.vertex_count()) throw InputError("induced subset names an unknown vertex");
    if (remap[v] != kAbsent) throw InputError("induced subset repeats vertex '" + inst.name(v) + "'");
    remap[v] = static_cast<VertexIndex>(i);
    names.push_back(inst.name(v));
  }
  auto restrict = [&](const Digraph& g) {
    std::vector<Arc> arcs;
    for (const auto& [tail, head] : g.arcs()) {
      if (remap[tail] != kAbsent && remap[head] != kAbsent) arcs.emplace_back(remap[tail], remap[head]);
    }
    return Digraph(subset.size(), std::move(arcs));
  };
  std::vector<LabelPair> pairs;
  for (const auto& p : inst.pairs()) pairs.push_back({restrict(p.a), restrict(p.b)});
  return Instance(std::move(names), std::move(pairs));
}

Instance induced_instance(const Instance& inst, const std::vector<std::string>& subset) {
  std::vector<VertexIndex> ids;
  ids.reserve(subset.size());
  for (const auto& name : subset) ids.push_back(inst.index_of(name));
  return induced_instance(inst, ids);
}

Digraph union_graph(std::span<const Digraph* const> graphs, bool directed) {
  if (graphs.empty()) throw InputError("union of an empty graph list");
  const std::size_t n = graphs.front()->vertex_count();
  std::vector<Arc> arcs;
  for (const Digraph* g : graphs) {
    if (g->vertex_count() != n) throw InputError("union operands have different vertex sets");
    for (const auto& [tail, head] : g->arcs()) {
      arcs.emplace_back(tail, head);
      if (!directed) arcs.emplace_back(head, tail);
    }
  }
  return Digraph(n, std::move(arcs));
}

Digraph pair_union(const Instance& inst, int label) {
  const Digraph* operands[] = {&inst.a(label), &inst.b(label)};
  return union_graph(operands, true);
}

Digraph instance_union(const Instance& inst, bool directed) {
  std::vector<const Digraph*> operands;
  for (const auto& p : inst.pairs()) {
    operands.push_back(&p.a);
    operands.push_back(&p.b);
  }
  return union_graph(operands, directed);
}

LabeledDigraph labeled_union(const Instance& inst) {
  LabeledDigraph out;
  out.vertex_count = inst.vertex_count();
  for (int l = 1; l <= inst.k(); ++l) {
    for (Side side : {Side::A, Side::B}) {
      for (const auto& arc : inst.graph(side, l).arcs()) out.arcs[arc].push_back(make_tag(side, l));
    }
  }
  for (auto& [arc, tags] : out.arcs) std::sort(tags.begin(), tags.end());
  return out;
}

Digraph reverse_graph(const Digraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count());
  for (const auto& [tail, head] : g.arcs()) arcs.emplace_back(head, tail);
  return Digraph(g.vertex_count(), std::move(arcs));
}

}  // namespace compat

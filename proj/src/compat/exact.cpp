#include "compat/exact.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "compat/poly.hpp"
#include "compat/verifier.hpp"

namespace compat {

namespace {

class VertexSet {
 public:
  explicit VertexSet(std::size_t n) : words_((n + 63) / 64, 0) {}

  bool test(VertexIndex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(VertexIndex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(VertexIndex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  bool operator==(const VertexSet&) const = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

struct PairHash {
  std::size_t operator()(const std::pair<VertexSet, VertexSet>& p) const {
    return p.first.hash() * 31 + p.second.hash();
  }
};

struct Pruning {
  std::vector<std::vector<char>> forbidden;         // [v][label]
  std::vector<std::vector<VertexIndex>> must_follow;  // [v] = vertices that precede v
};

Pruning make_pruning(const Instance& inst, const PropagationFacts& facts) {
  Pruning p;
  p.forbidden.assign(inst.vertex_count(), std::vector<char>(static_cast<std::size_t>(inst.k()) + 1, 0));
  p.must_follow.resize(inst.vertex_count());
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    for (int l : facts.forbidden_labels[v]) p.forbidden[v][l] = 1;
  }
  for (const auto& [first, later] : facts.forced_precedences) p.must_follow[later].push_back(first);
  return p;
}

// Legal as the next vertex after `placed`: every A_l out-neighbour is already
// placed, no B_l in-neighbour is.
bool can_place(const Instance& inst, const VertexSet& placed, VertexIndex v, int l) {
  const LabelPair& pair = inst.pair(l);
  for (VertexIndex w : pair.a.out(v)) {
    if (!placed.test(w)) return false;
  }
  for (VertexIndex u : pair.b.in(v)) {
    if (placed.test(u)) return false;
  }
  return true;
}

class FullSearch {
 public:
  static constexpr VertexIndex kNone = static_cast<VertexIndex>(-1);

  FullSearch(const Instance& inst, const Pruning* pruning, std::uint64_t max_nodes)
      : inst_(inst), pruning_(pruning), max_nodes_(max_nodes) {}

  // First legal label for v after `placed`, or 0.
  int first_label(const VertexSet& placed, VertexIndex v) const {
    if (pruning_) {
      for (VertexIndex u : pruning_->must_follow[v]) {
        if (!placed.test(u)) return 0;
      }
    }
    for (int l = 1; l <= inst_.k(); ++l) {
      if (pruning_ && pruning_->forbidden[v][l]) continue;
      if (can_place(inst_, placed, v, l)) return l;
    }
    return 0;
  }

  // Legality after a prefix depends only on the placed set, so one label per
  // vertex suffices and failed sets are memoized.
  bool extend(VertexSet& placed, std::size_t count) {
    if (count == inst_.vertex_count()) return true;
    if (dead_.count(placed)) return false;
    if (max_nodes_ != 0 && nodes_ >= max_nodes_) {
      cut_ = true;
      return false;
    }
    ++nodes_;
    // A placeable vertex with no B arc into the unplaced set can move to the
    // front of any completion, so it is the only branch needed. The check
    // ignores propagation so both modes take the same branches.
    const VertexIndex free = free_vertex(placed);
    for (VertexIndex v = 0; v < inst_.vertex_count(); ++v) {
      if (placed.test(v) || (free != kNone && v != free)) continue;
      const int l = first_label(placed, v);
      if (l == 0) continue;
      placed.set(v);
      order_.push_back(v);
      labels_.push_back(l);
      if (extend(placed, count + 1)) return true;
      placed.reset(v);
      order_.pop_back();
      labels_.pop_back();
      if (cut_) return false;
    }
    dead_.insert(placed);
    return false;
  }

  VertexIndex free_vertex(const VertexSet& placed) const {
    for (VertexIndex v = 0; v < inst_.vertex_count(); ++v) {
      if (placed.test(v)) continue;
      bool blocks = false;
      for (int l = 1; l <= inst_.k() && !blocks; ++l) {
        for (VertexIndex w : inst_.b(l).out(v)) {
          if (!placed.test(w)) {
            blocks = true;
            break;
          }
        }
      }
      if (blocks) continue;
      for (int l = 1; l <= inst_.k(); ++l) {
        if (can_place(inst_, placed, v, l)) return v;
      }
    }
    return kNone;
  }

  LabeledOrdering witness() const { return {order_, labels_}; }
  void seed(VertexIndex v, int l) {
    order_.push_back(v);
    labels_.push_back(l);
  }
  std::uint64_t nodes() const { return nodes_; }
  bool cut() const { return cut_; }

 private:
  const Instance& inst_;
  const Pruning* pruning_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool cut_ = false;
  std::unordered_set<VertexSet, VertexSetHash> dead_;
  std::vector<VertexIndex> order_;
  std::vector<int> labels_;
};

SolveResult checked(const Instance& inst, SolveResult result, bool full) {
  if (result.status == SolveStatus::Yes && verify_direct(inst, *result.witness, full)) {
    throw InternalError("exact search produced an invalid ordering");
  }
  return result;
}

}  // namespace

PropagationFacts propagate(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  const int k = inst.k();
  PropagationFacts facts;
  facts.forbidden_labels.resize(n);
  for (int l = 1; l <= k; ++l) {
    const LabelPair& pair = inst.pair(l);
    for (VertexIndex v = 0; v < n; ++v) {
      for (VertexIndex w : pair.a.out(v)) {
        if (pair.b.has_arc(w, v)) {
          facts.forbidden_labels[v].push_back(l);
          break;
        }
      }
    }
  }
  for (Side side : {Side::A, Side::B}) {
    for (const auto& [v, w] : inst.graph(side, 1).arcs()) {
      bool everywhere = true;
      for (int l = 2; l <= k && everywhere; ++l) everywhere = inst.graph(side, l).has_arc(v, w);
      if (everywhere) facts.forced_precedences.emplace_back(w, v);
    }
  }
  std::sort(facts.forced_precedences.begin(), facts.forced_precedences.end());
  facts.forced_precedences.erase(std::unique(facts.forced_precedences.begin(), facts.forced_precedences.end()),
                                 facts.forced_precedences.end());

  for (VertexIndex v = 0; v < n; ++v) {
    if (facts.forbidden_labels[v].size() == static_cast<std::size_t>(k)) facts.infeasible = true;
  }
  if (!is_acyclic(Digraph(n, facts.forced_precedences))) facts.infeasible = true;
  return facts;
}

SolveResult solve_exact(const Instance& inst, const ExactOptions& opts) {
  const std::size_t n = inst.vertex_count();
  SolveResult result;
  Pruning pruning;
  const Pruning* prune = nullptr;
  if (opts.use_propagation) {
    const PropagationFacts facts = propagate(inst);
    if (facts.infeasible) return result;
    pruning = make_pruning(inst, facts);
    prune = &pruning;
  }

  if (opts.threads <= 1 || n < 2) {
    FullSearch search(inst, prune, opts.max_nodes);
    VertexSet placed(n);
    const bool found = search.extend(placed, 0);
    result.nodes = search.nodes();
    if (found) {
      result.status = SolveStatus::Yes;
      result.witness = search.witness();
    } else if (search.cut()) {
      result.status = SolveStatus::Unknown;
    }
    return checked(inst, std::move(result), true);
  }

  // One branch per first vertex; the smallest successful branch is the one a
  // sequential run would find.
  const VertexSet empty(n);
  std::vector<std::pair<VertexIndex, int>> roots;
  {
    FullSearch probe(inst, prune, 0);
    const VertexIndex free = probe.free_vertex(empty);
    for (VertexIndex v = 0; v < n; ++v) {
      if (free != FullSearch::kNone && v != free) continue;
      if (int l = probe.first_label(empty, v)) roots.emplace_back(v, l);
    }
  }
  struct Outcome {
    bool found = false;
    bool cut = false;
    std::uint64_t nodes = 0;
    LabeledOrdering witness;
  };
  std::vector<Outcome> outcomes(roots.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < roots.size(); i = next++) {
      FullSearch search(inst, prune, opts.max_nodes);
      VertexSet placed(n);
      placed.set(roots[i].first);
      search.seed(roots[i].first, roots[i].second);
      outcomes[i].found = search.extend(placed, 1);
      outcomes[i].cut = search.cut();
      outcomes[i].nodes = search.nodes() + 1;
      if (outcomes[i].found) outcomes[i].witness = search.witness();
    }
  };
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(opts.threads), roots.size());
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  bool any_cut = false;
  for (auto& o : outcomes) {
    result.nodes += o.nodes;
    any_cut = any_cut || o.cut;
  }
  for (auto& o : outcomes) {
    if (o.found) {
      result.status = SolveStatus::Yes;
      result.witness = std::move(o.witness);
      return checked(inst, std::move(result), true);
    }
  }
  if (any_cut) result.status = SolveStatus::Unknown;
  return result;
}

namespace {

class BoundedSearch {
 public:
  BoundedSearch(const Instance& inst, std::size_t target, std::uint64_t max_nodes)
      : inst_(inst), target_(target), max_nodes_(max_nodes) {}

  // placed: vertices in the prefix; excluded: vertices that can no longer
  // appear because a placed vertex needs them absent from its suffix.
  bool extend(VertexSet& placed, VertexSet& excluded, std::size_t count, std::size_t blocked) {
    if (count == target_) return true;
    const std::size_t n = inst_.vertex_count();
    if (count + (n - count - blocked) < target_) return false;
    auto key = std::make_pair(placed, excluded);
    if (dead_.count(key)) return false;
    if (max_nodes_ != 0 && nodes_ >= max_nodes_) {
      cut_ = true;
      return false;
    }
    ++nodes_;
    std::vector<VertexIndex> newly;
    for (VertexIndex v = 0; v < n; ++v) {
      if (placed.test(v) || excluded.test(v)) continue;
      for (int l = 1; l <= inst_.k(); ++l) {
        const LabelPair& pair = inst_.pair(l);
        bool ok = true;
        for (VertexIndex u : pair.b.in(v)) {
          if (placed.test(u)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        newly.clear();
        for (VertexIndex w : pair.a.out(v)) {
          if (!placed.test(w) && !excluded.test(w)) newly.push_back(w);
        }
        placed.set(v);
        for (VertexIndex w : newly) excluded.set(w);
        order_.push_back(v);
        labels_.push_back(l);
        if (extend(placed, excluded, count + 1, blocked + newly.size())) return true;
        order_.pop_back();
        labels_.pop_back();
        placed.reset(v);
        for (VertexIndex w : newly) excluded.reset(w);
        if (cut_) return false;
      }
    }
    dead_.insert(std::move(key));
    return false;
  }

  LabeledOrdering witness() const { return {order_, labels_}; }
  std::uint64_t nodes() const { return nodes_; }
  bool cut() const { return cut_; }

 private:
  const Instance& inst_;
  std::size_t target_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool cut_ = false;
  std::unordered_set<std::pair<VertexSet, VertexSet>, PairHash> dead_;
  std::vector<VertexIndex> order_;
  std::vector<int> labels_;
};

}  // namespace

SolveResult solve_bounded(const Instance& inst, std::size_t b, const ExactOptions& opts) {
  SolveResult result;
  const std::size_t n = inst.vertex_count();
  if (b > n) return result;
  // Dropping vertices from a valid ordering keeps it valid, so it is enough
  // to look for exactly b vertices.
  BoundedSearch search(inst, b, opts.max_nodes);
  VertexSet placed(n);
  VertexSet excluded(n);
  const bool found = search.extend(placed, excluded, 0, 0);
  result.nodes = search.nodes();
  if (found) {
    result.status = SolveStatus::Yes;
    result.witness = search.witness();
  } else if (search.cut()) {
    result.status = SolveStatus::Unknown;
  }
  return checked(inst, std::move(result), false);
}

namespace {

void enumerate_from(const Instance& inst, VertexSet& placed, std::size_t count, LabeledOrdering& prefix,
                    std::unordered_set<VertexSet, VertexSetHash>& dead, std::vector<LabeledOrdering>& out,
                    std::size_t cap) {
  if (count == inst.vertex_count()) {
    out.push_back(prefix);
    return;
  }
  if (dead.count(placed)) return;
  const std::size_t before = out.size();
  for (VertexIndex v = 0; v < inst.vertex_count() && out.size() < cap; ++v) {
    if (placed.test(v)) continue;
    for (int l = 1; l <= inst.k() && out.size() < cap; ++l) {
      if (!can_place(inst, placed, v, l)) continue;
      placed.set(v);
      prefix.order.push_back(v);
      prefix.labels.push_back(l);
      enumerate_from(inst, placed, count + 1, prefix, dead, out, cap);
      prefix.order.pop_back();
      prefix.labels.pop_back();
      placed.reset(v);
    }
  }
  if (out.size() == before) dead.insert(placed);
}

}  // namespace

std::vector<LabeledOrdering> enumerate_solutions(const Instance& inst, std::size_t cap) {
  std::vector<LabeledOrdering> out;
  if (cap == 0) return out;
  VertexSet placed(inst.vertex_count());
  LabeledOrdering prefix;
  std::unordered_set<VertexSet, VertexSetHash> dead;
  enumerate_from(inst, placed, 0, prefix, dead, out, cap);
  return out;
}

}  // namespace compat

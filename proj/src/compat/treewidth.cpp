#include "compat/treewidth.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "compat/verifier.hpp"

namespace compat {

int TreeDecomposition::width() const {
  std::size_t widest = 0;
  for (const auto& bag : bags) widest = std::max(widest, bag.size());
  return static_cast<int>(widest) - 1;
}

int NiceTreeDecomposition::width() const {
  std::size_t widest = 0;
  for (const auto& node : nodes) widest = std::max(widest, node.bag.size());
  return static_cast<int>(widest) - 1;
}

TreeDecomposition NiceTreeDecomposition::as_td() const {
  TreeDecomposition td;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    td.bags.push_back(nodes[i].bag);
    if (nodes[i].left >= 0) td.edges.emplace_back(static_cast<std::size_t>(nodes[i].left), i);
    if (nodes[i].right >= 0) td.edges.emplace_back(static_cast<std::size_t>(nodes[i].right), i);
  }
  td.root = nodes.empty() ? 0 : nodes.size() - 1;
  return td;
}

const char* nice_kind_name(NiceKind kind) {
  switch (kind) {
    case NiceKind::Leaf: return "leaf";
    case NiceKind::Introduce: return "introduce";
    case NiceKind::Forget: return "forget";
    case NiceKind::Join: return "join";
  }
  return "?";
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

std::optional<TdDefect> defect(const char* property, std::string detail) {
  return TdDefect{property, std::move(detail)};
}

}  // namespace

std::optional<TdDefect> validate_td(const Digraph& graph, const TreeDecomposition& td) {
  const std::size_t n = graph.vertex_count();
  const std::size_t m = td.bags.size();
  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::set<VertexIndex> seen;
    for (VertexIndex v : td.bags[i]) {
      if (v >= n) return defect("range", "bag " + std::to_string(i) + " names vertex " + std::to_string(v));
      if (seen.insert(v).second) holders[v].push_back(i);
    }
  }
  if (m == 0) {
    if (n == 0) return std::nullopt;
    return defect("vertex", "vertex 0 is in no bag");
  }
  if (td.root >= m) return defect("tree", "root index out of range");
  if (td.edges.size() != m - 1) {
    return defect("tree", std::to_string(td.edges.size()) + " tree edges for " + std::to_string(m) + " bags");
  }
  DisjointSets parts(m);
  for (const auto& [x, y] : td.edges) {
    if (x >= m || y >= m) return defect("tree", "tree edge names a missing bag");
    if (!parts.unite(x, y)) {
      return defect("tree", "tree edge " + std::to_string(x) + "-" + std::to_string(y) + " closes a cycle");
    }
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (holders[v].empty()) return defect("vertex", "vertex " + std::to_string(v) + " is in no bag");
  }
  for (const auto& [u, v] : graph.arcs()) {
    const auto& hu = holders[u];
    const auto& hv = holders[v];
    std::vector<std::size_t> common;
    std::set_intersection(hu.begin(), hu.end(), hv.begin(), hv.end(), std::back_inserter(common));
    if (common.empty()) {
      return defect("edge", "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
    }
  }
  std::vector<std::vector<VertexIndex>> sorted(m);
  for (std::size_t i = 0; i < m; ++i) {
    sorted[i] = td.bags[i];
    std::sort(sorted[i].begin(), sorted[i].end());
    sorted[i].erase(std::unique(sorted[i].begin(), sorted[i].end()), sorted[i].end());
  }
  // In a tree, a node set is connected iff it spans |set| - 1 tree edges.
  std::vector<std::size_t> inner(n, 0);
  for (const auto& [x, y] : td.edges) {
    for (VertexIndex v : sorted[x]) {
      if (std::binary_search(sorted[y].begin(), sorted[y].end(), v)) ++inner[v];
    }
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (inner[v] + 1 != holders[v].size()) {
      return defect("connected", "bags holding vertex " + std::to_string(v) + " are not connected");
    }
  }
  return std::nullopt;
}

TreeDecomposition heuristic_td(const Digraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::set<VertexIndex>> adj(n);
  for (const auto& [u, v] : graph.arcs()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  auto fill_of = [&](VertexIndex v) {
    std::size_t missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
      for (auto b = std::next(a); b != adj[v].end(); ++b) {
        if (!adj[*a].count(*b)) ++missing;
      }
    }
    return missing;
  };
  using Key = std::tuple<std::size_t, std::size_t, VertexIndex>;  // fill, degree, vertex
  std::set<Key> queue;
  std::vector<Key> key(n);
  for (VertexIndex v = 0; v < n; ++v) {
    key[v] = {fill_of(v), adj[v].size(), v};
    queue.insert(key[v]);
  }

  std::vector<std::size_t> position(n);
  std::vector<VertexIndex> order;
  TreeDecomposition td;
  td.bags.resize(n);
  while (!queue.empty()) {
    const VertexIndex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    position[v] = order.size();
    order.push_back(v);
    td.bags[v].assign(adj[v].begin(), adj[v].end());
    td.bags[v].push_back(v);
    std::sort(td.bags[v].begin(), td.bags[v].end());

    std::set<VertexIndex> touched(adj[v].begin(), adj[v].end());
    for (VertexIndex a : adj[v]) {
      for (VertexIndex b : adj[v]) {
        if (a < b && !adj[a].count(b)) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
      }
    }
    for (VertexIndex a : adj[v]) adj[a].erase(v);
    for (VertexIndex a : adj[v]) touched.insert(adj[a].begin(), adj[a].end());
    adj[v].clear();
    for (VertexIndex u : touched) {
      if (u == v || !queue.count(key[u])) continue;
      queue.erase(key[u]);
      key[u] = {fill_of(u), adj[u].size(), u};
      queue.insert(key[u]);
    }
  }

  // Parent of bag(v) is the bag of the neighbour eliminated next.
  std::vector<VertexIndex> roots;
  for (VertexIndex v : order) {
    std::size_t best = n;
    for (VertexIndex u : td.bags[v]) {
      if (u != v && (best == n || position[u] < position[best])) best = u;
    }
    if (best == n) {
      roots.push_back(v);
    } else {
      td.edges.emplace_back(best, v);
    }
  }
  for (std::size_t i = 1; i < roots.size(); ++i) td.edges.emplace_back(roots[i], roots[i - 1]);
  td.root = roots.empty() ? 0 : roots.back();
  return td;
}

namespace {

class NiceBuilder {
 public:
  NiceTreeDecomposition ntd;

  int add(NiceKind kind, std::vector<VertexIndex> bag, VertexIndex v, int left, int right = -1) {
    ntd.nodes.push_back({kind, std::move(bag), v, left, right});
    return static_cast<int>(ntd.nodes.size()) - 1;
  }

  int leaf_chain(const std::vector<VertexIndex>& target) {
    int cur = add(NiceKind::Leaf, {target.front()}, target.front(), -1);
    return introduce_all(cur, target);
  }

  // Forget what `target` lacks, then introduce what the node lacks.
  int morph(int cur, const std::vector<VertexIndex>& target) {
    const std::vector<VertexIndex> from = ntd.nodes[cur].bag;
    for (VertexIndex v : from) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      auto bag = ntd.nodes[cur].bag;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      cur = add(NiceKind::Forget, std::move(bag), v, cur);
    }
    return introduce_all(cur, target);
  }

 private:
  int introduce_all(int cur, const std::vector<VertexIndex>& target) {
    for (VertexIndex v : target) {
      const auto& have = ntd.nodes[cur].bag;
      if (std::binary_search(have.begin(), have.end(), v)) continue;
      auto bag = have;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add(NiceKind::Introduce, std::move(bag), v, cur);
    }
    return cur;
  }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, std::size_t vertex_count) {
  if (auto bad = validate_td(Digraph(vertex_count), td)) {
    throw InputError("invalid tree decomposition (" + bad->property + "): " + bad->detail);
  }
  const std::size_t m = td.bags.size();
  std::vector<std::vector<VertexIndex>> bags(m);
  for (std::size_t i = 0; i < m; ++i) {
    bags[i] = td.bags[i];
    std::sort(bags[i].begin(), bags[i].end());
    bags[i].erase(std::unique(bags[i].begin(), bags[i].end()), bags[i].end());
  }

  // Drop empty bags. The pieces left behind share no vertex, so hanging them
  // all below one root keeps the decomposition valid.
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& [x, y] : td.edges) {
    if (bags[x].empty() || bags[y].empty()) continue;
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<std::size_t> starts;
  if (m > 0 && !bags[td.root].empty()) starts.push_back(td.root);
  for (std::size_t i = 0; i < m; ++i) {
    if (!bags[i].empty() && i != td.root) starts.push_back(i);
  }
  std::vector<int> parent(m, -2);
  std::vector<std::size_t> preorder;
  std::vector<std::vector<std::size_t>> children(m);
  for (std::size_t s : starts) {
    if (parent[s] != -2) continue;
    if (!preorder.empty()) {
      parent[s] = static_cast<int>(preorder.front());
      children[preorder.front()].push_back(s);
    } else {
      parent[s] = -1;
    }
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      preorder.push_back(x);
      for (std::size_t y : adj[x]) {
        if (parent[y] != -2) continue;
        parent[y] = static_cast<int>(x);
        children[x].push_back(y);
        stack.push_back(y);
      }
    }
  }

  NiceBuilder build;
  if (preorder.empty()) return build.ntd;
  std::vector<int> made(m, -1);
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const std::size_t x = *it;
    int cur = -1;
    for (std::size_t c : children[x]) {
      const int branch = build.morph(made[c], bags[x]);
      cur = cur < 0 ? branch : build.add(NiceKind::Join, bags[x], 0, cur, branch);
    }
    made[x] = cur < 0 ? build.leaf_chain(bags[x]) : cur;
  }
  const int top = made[preorder.front()];
  const auto& root_bag = build.ntd.nodes[top].bag;
  build.morph(top, {root_bag.front()});
  return build.ntd;
}

namespace {

std::size_t factorial(std::size_t t) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= t; ++i) f *= i;
  return f;
}

// An entry is (ordering of the bag, labels of the bag). The ordering is a
// permutation of bag indices ranked in Lehmer order; labels are read as a
// base-k number with bag index 0 as the lowest digit.
class EntryCodec {
 public:
  EntryCodec(std::size_t t, int k) : t_(t), k_(static_cast<std::size_t>(k)), labelings_(1) {
    for (std::size_t i = 0; i < t; ++i) labelings_ *= k_;
    perms_ = factorial(t);
  }

  std::size_t size() const { return perms_ * labelings_; }

  std::size_t encode(const std::vector<int>& perm, const std::vector<int>& labels) const {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < t_; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < t_; ++j) smaller += perm[j] < perm[i];
      rank = rank * (t_ - i) + smaller;
    }
    std::size_t lab = 0;
    for (std::size_t j = t_; j-- > 0;) lab = lab * k_ + static_cast<std::size_t>(labels[j] - 1);
    return rank * labelings_ + lab;
  }

  void decode(std::size_t entry, std::vector<int>& perm, std::vector<int>& labels) const {
    std::size_t lab = entry % labelings_;
    std::size_t rank = entry / labelings_;
    labels.resize(t_);
    for (std::size_t j = 0; j < t_; ++j) {
      labels[j] = static_cast<int>(lab % k_) + 1;
      lab /= k_;
    }
    std::vector<std::size_t> digits(t_);
    for (std::size_t i = t_; i-- > 0;) {
      const std::size_t base = t_ - i;
      digits[i] = rank % base;
      rank /= base;
    }
    std::vector<int> pool(t_);
    std::iota(pool.begin(), pool.end(), 0);
    perm.resize(t_);
    for (std::size_t i = 0; i < t_; ++i) {
      perm[i] = pool[digits[i]];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
    }
  }

 private:
  std::size_t t_;
  std::size_t k_;
  std::size_t labelings_;
  std::size_t perms_;
};

void check_nice(const Instance& inst, const NiceTreeDecomposition& ntd) {
  const auto& nodes = ntd.nodes;
  std::vector<int> parents(nodes.size(), 0);
  auto fail = [](std::size_t i, const std::string& why) {
    throw InputError("nice decomposition node " + std::to_string(i) + ": " + why);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NiceNode& node = nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
        std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
      fail(i, "bag must be sorted and duplicate-free");
    }
    auto child = [&](int c) -> const NiceNode& {
      if (c < 0 || static_cast<std::size_t>(c) >= i) fail(i, "child must precede its parent");
      ++parents[static_cast<std::size_t>(c)];
      return nodes[static_cast<std::size_t>(c)];
    };
    switch (node.kind) {
      case NiceKind::Leaf:
        if (node.left >= 0 || node.right >= 0 || node.bag != std::vector<VertexIndex>{node.vertex}) {
          fail(i, "leaf must be a childless singleton");
        }
        break;
      case NiceKind::Introduce:
      case NiceKind::Forget: {
        if (node.right >= 0) fail(i, "unexpected second child");
        auto bigger = child(node.left).bag;
        auto smaller = node.bag;
        if (node.kind == NiceKind::Introduce) std::swap(bigger, smaller);
        auto it = std::find(bigger.begin(), bigger.end(), node.vertex);
        if (it == bigger.end()) fail(i, "vertex missing from the larger bag");
        bigger.erase(it);
        if (bigger != smaller) fail(i, "bags differ by more than the named vertex");
        break;
      }
      case NiceKind::Join:
        if (child(node.left).bag != node.bag || child(node.right).bag != node.bag) {
          fail(i, "join children must carry the same bag");
        }
        break;
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (parents[i] != 1) fail(i, "every non-root node needs exactly one parent");
  }
  if (!nodes.empty() && nodes.back().bag.size() != 1) fail(nodes.size() - 1, "root bag must be a singleton");
  if (auto bad = validate_td(instance_union(inst, false), ntd.as_td())) {
    throw InputError("decomposition does not fit the instance (" + bad->property + "): " + bad->detail);
  }
}

using Witness = std::vector<std::pair<VertexIndex, int>>;

class TreewidthDp {
 public:
  TreewidthDp(const Instance& inst, const NiceTreeDecomposition& ntd) : inst_(inst), ntd_(ntd) {
    const std::size_t m = ntd.nodes.size();
    ok_.resize(m);
    back_.resize(m);
    for (std::size_t i = 0; i < m; ++i) codecs_.emplace_back(ntd.nodes[i].bag.size(), inst.k());
  }

  void run() {
    for (std::size_t i = 0; i < ntd_.nodes.size(); ++i) {
      const NiceNode& node = ntd_.nodes[i];
      ok_[i].assign(codecs_[i].size(), 0);
      switch (node.kind) {
        case NiceKind::Leaf: std::fill(ok_[i].begin(), ok_[i].end(), 1); break;
        case NiceKind::Introduce: introduce(i); break;
        case NiceKind::Forget: forget(i); break;
        case NiceKind::Join: {
          const auto& l = ok_[static_cast<std::size_t>(node.left)];
          const auto& r = ok_[static_cast<std::size_t>(node.right)];
          for (std::size_t e = 0; e < l.size(); ++e) ok_[i][e] = l[e] & r[e];
          break;
        }
      }
    }
  }

  std::optional<LabeledOrdering> witness() const {
    if (ntd_.nodes.empty()) return LabeledOrdering{};
    const std::size_t root = ntd_.nodes.size() - 1;
    const auto& table = ok_[root];
    auto hit = std::find(table.begin(), table.end(), 1);
    if (hit == table.end()) return std::nullopt;
    Witness w = rebuild(root, static_cast<std::size_t>(hit - table.begin()));
    LabeledOrdering sol;
    for (const auto& [v, l] : w) {
      sol.order.push_back(v);
      sol.labels.push_back(l);
    }
    return sol;
  }

  void fill_stats(TreewidthStats& stats) const {
    stats.table_entries.clear();
    stats.true_entries.clear();
    for (const auto& table : ok_) {
      stats.table_entries.push_back(table.size());
      stats.true_entries.push_back(static_cast<std::size_t>(std::count(table.begin(), table.end(), 1)));
    }
  }

 private:
  // u placed before the new vertex v is a conflict when u -> v lies in
  // B_{l_v} or A_{l_u}; u placed after v when v -> u lies in A_{l_v} or B_{l_u}.
  void introduce(std::size_t i) {
    const NiceNode& node = ntd_.nodes[i];
    const std::size_t c = static_cast<std::size_t>(node.left);
    const auto& child_bag = ntd_.nodes[c].bag;
    const std::size_t t = node.bag.size();
    const int vb = static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
    const VertexIndex v = node.vertex;

    std::vector<int> perm, labels, big_perm(t), big_labels(t);
    for (std::size_t e = 0; e < ok_[c].size(); ++e) {
      if (!ok_[c][e]) continue;
      codecs_[c].decode(e, perm, labels);
      for (std::size_t j = 0; j < child_bag.size(); ++j) {
        big_labels[j < static_cast<std::size_t>(vb) ? j : j + 1] = labels[j];
      }
      for (int lv = 1; lv <= inst_.k(); ++lv) {
        big_labels[static_cast<std::size_t>(vb)] = lv;
        const LabelPair& own = inst_.pair(lv);
        // Valid insertion points form the range [lo, hi] of child positions.
        std::size_t lo = 0;
        std::size_t hi = perm.size();  // v goes after the first q child vertices
        for (std::size_t p = 0; p < perm.size(); ++p) {
          const auto j = static_cast<std::size_t>(perm[p]);
          const VertexIndex u = child_bag[j];
          const LabelPair& theirs = inst_.pair(labels[j]);
          if (own.b.has_arc(u, v) || theirs.a.has_arc(u, v)) hi = std::min(hi, p);
          if (own.a.has_arc(v, u) || theirs.b.has_arc(v, u)) lo = std::max(lo, p + 1);
        }
        for (std::size_t q = lo; q <= hi; ++q) {
          std::size_t out = 0;
          for (std::size_t p = 0; p <= perm.size(); ++p) {
            if (p == q) big_perm[out++] = vb;
            if (p < perm.size()) big_perm[out++] = perm[p] < vb ? perm[p] : perm[p] + 1;
          }
          ok_[i][codecs_[i].encode(big_perm, big_labels)] = 1;
        }
      }
    }
  }

  void forget(std::size_t i) {
    const NiceNode& node = ntd_.nodes[i];
    const std::size_t c = static_cast<std::size_t>(node.left);
    const auto& child_bag = ntd_.nodes[c].bag;
    const int vb = static_cast<int>(std::find(child_bag.begin(), child_bag.end(), node.vertex) - child_bag.begin());
    back_[i].assign(ok_[i].size(), 0);
    std::vector<int> perm, labels, small_perm, small_labels;
    for (std::size_t e = 0; e < ok_[c].size(); ++e) {
      if (!ok_[c][e]) continue;
      codecs_[c].decode(e, perm, labels);
      small_perm.clear();
      small_labels.clear();
      for (int p : perm) {
        if (p != vb) small_perm.push_back(p < vb ? p : p - 1);
      }
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (static_cast<int>(j) != vb) small_labels.push_back(labels[j]);
      }
      const std::size_t f = codecs_[i].encode(small_perm, small_labels);
      if (!ok_[i][f]) {
        ok_[i][f] = 1;
        back_[i][f] = static_cast<std::uint32_t>(e);
      }
    }
  }

  Witness rebuild(std::size_t i, std::size_t entry) const {
    const NiceNode& node = ntd_.nodes[i];
    std::vector<int> perm, labels;
    codecs_[i].decode(entry, perm, labels);
    switch (node.kind) {
      case NiceKind::Leaf:
        return {{node.vertex, labels[0]}};
      case NiceKind::Forget:
        return rebuild(static_cast<std::size_t>(node.left), back_[i][entry]);
      case NiceKind::Introduce: {
        const int vb = static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
        std::vector<int> small_perm, small_labels;
        std::optional<VertexIndex> before;
        for (std::size_t p = 0; p < perm.size(); ++p) {
          if (perm[p] == vb) {
            if (p > 0) before = node.bag[static_cast<std::size_t>(perm[p - 1])];
            continue;
          }
          small_perm.push_back(perm[p] < vb ? perm[p] : perm[p] - 1);
        }
        for (std::size_t j = 0; j < labels.size(); ++j) {
          if (static_cast<int>(j) != vb) small_labels.push_back(labels[j]);
        }
        const std::size_t c = static_cast<std::size_t>(node.left);
        Witness w = rebuild(c, codecs_[c].encode(small_perm, small_labels));
        auto at = w.begin();
        if (before) {
          at = std::find_if(w.begin(), w.end(), [&](const auto& x) { return x.first == *before; }) + 1;
        }
        w.insert(at, {node.vertex, labels[static_cast<std::size_t>(vb)]});
        return w;
      }
      case NiceKind::Join: {
        Witness left = rebuild(static_cast<std::size_t>(node.left), entry);
        Witness right = rebuild(static_cast<std::size_t>(node.right), entry);
        return interleave(node.bag, left, right);
      }
    }
    throw InternalError("unknown nice node kind");
  }

  // Both sides list the shared bag in the same order; splice the private
  // stretches of each side between consecutive bag vertices, left first.
  static Witness interleave(const std::vector<VertexIndex>& bag, const Witness& left, const Witness& right) {
    auto in_bag = [&](VertexIndex v) { return std::binary_search(bag.begin(), bag.end(), v); };
    Witness out;
    out.reserve(left.size() + right.size() - bag.size());
    std::size_t li = 0;
    std::size_t ri = 0;
    while (li < left.size() || ri < right.size()) {
      while (li < left.size() && !in_bag(left[li].first)) out.push_back(left[li++]);
      while (ri < right.size() && !in_bag(right[ri].first)) out.push_back(right[ri++]);
      if (li < left.size()) {
        out.push_back(left[li++]);
        ++ri;
      }
    }
    return out;
  }

  const Instance& inst_;
  const NiceTreeDecomposition& ntd_;
  std::vector<EntryCodec> codecs_;
  std::vector<std::vector<std::uint8_t>> ok_;
  std::vector<std::vector<std::uint32_t>> back_;
};

}  // namespace

std::optional<LabeledOrdering> solve_treewidth(const Instance& inst, const NiceTreeDecomposition& ntd,
                                               TreewidthStats* stats) {
  if (ntd.nodes.empty() && inst.vertex_count() > 0) {
    throw InputError("empty decomposition for a nonempty instance");
  }
  if (ntd.width() > kMaxTreewidth) {
    throw InputError("decomposition width " + std::to_string(ntd.width()) + " exceeds the supported maximum " +
                     std::to_string(kMaxTreewidth));
  }
  check_nice(inst, ntd);
  TreewidthDp dp(inst, ntd);
  dp.run();
  if (stats) dp.fill_stats(*stats);
  auto sol = dp.witness();
  if (sol && verify_direct(inst, *sol, true)) {
    throw InternalError("treewidth reconstruction produced an invalid ordering");
  }
  return sol;
}

}  // namespace compat

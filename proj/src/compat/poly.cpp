#include "compat/poly.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <thread>

namespace compat {

std::optional<std::vector<VertexIndex>> topo_order(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indegree(n);
  std::priority_queue<VertexIndex, std::vector<VertexIndex>, std::greater<>> ready;
  for (VertexIndex v = 0; v < n; ++v) {
    indegree[v] = g.in_degree(v);
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<VertexIndex> order;
  order.reserve(n);
  while (!ready.empty()) {
    const VertexIndex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexIndex w : g.out(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool is_acyclic(const Digraph& g) {
  // Plain FIFO Kahn; order does not matter for the yes/no answer.
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indegree(n);
  std::vector<VertexIndex> stack;
  for (VertexIndex v = 0; v < n; ++v) {
    indegree[v] = g.in_degree(v);
    if (indegree[v] == 0) stack.push_back(v);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    ++seen;
    for (VertexIndex w : g.out(v)) {
      if (--indegree[w] == 0) stack.push_back(w);
    }
  }
  return seen == n;
}

namespace {

std::optional<LabeledOrdering> uniform_witness(const Instance& inst, int label) {
  auto order = topo_order(pair_union(inst, label));
  if (!order) return std::nullopt;
  std::reverse(order->begin(), order->end());
  LabeledOrdering sol;
  sol.labels.assign(order->size(), label);
  sol.order = std::move(*order);
  return sol;
}

}  // namespace

std::optional<LabeledOrdering> solve_k1(const Instance& inst) {
  if (inst.k() != 1) throw InputError("the k=1 solver needs an instance with exactly one label pair");
  return uniform_witness(inst, 1);
}

std::optional<TrivialWitness> find_trivial_pair(const Instance& inst, int threads) {
  const int k = inst.k();
  if (threads <= 1 || k == 1) {
    for (int l = 1; l <= k; ++l) {
      if (auto sol = uniform_witness(inst, l)) return TrivialWitness{l, std::move(*sol)};
    }
    return std::nullopt;
  }
  std::vector<std::optional<LabeledOrdering>> found(static_cast<std::size_t>(k));
  std::atomic<int> next{1};
  std::atomic<int> best{k + 1};
  auto worker = [&] {
    for (int l = next++; l <= k; l = next++) {
      if (l > best.load()) break;
      found[l - 1] = uniform_witness(inst, l);
      if (found[l - 1]) {
        int cur = best.load();
        while (l < cur && !best.compare_exchange_weak(cur, l)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, k); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  const int l = best.load();
  if (l > k) return std::nullopt;
  return TrivialWitness{l, std::move(*found[l - 1])};
}

}  // namespace compat

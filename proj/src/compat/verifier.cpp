#include "compat/verifier.hpp"

#include "compat/poly.hpp"

namespace compat {

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingVertex: return "MissingVertex";
    case ViolationKind::DuplicateVertex: return "DuplicateVertex";
    case ViolationKind::LabelOutOfRange: return "LabelOutOfRange";
    case ViolationKind::SinkViolation: return "SinkViolation";
    case ViolationKind::SourceViolation: return "SourceViolation";
  }
  return "?";
}

namespace {

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

std::optional<Violation> structural_check(const Instance& inst, const LabeledOrdering& sol,
                                          bool require_full, std::vector<std::size_t>& pos) {
  const std::size_t n = inst.vertex_count();
  pos.assign(n, kAbsent);
  if (sol.labels.size() != sol.order.size()) {
    throw InputError("order and labels differ in length");
  }
  for (std::size_t i = 0; i < sol.order.size(); ++i) {
    const VertexIndex v = sol.order[i];
    if (v >= n) throw InputError("ordering names a vertex outside the instance");
    if (pos[v] != kAbsent) return Violation{ViolationKind::DuplicateVertex, v, std::nullopt, i};
    pos[v] = i;
    if (sol.labels[i] < 1 || sol.labels[i] > inst.k()) {
      return Violation{ViolationKind::LabelOutOfRange, v, std::nullopt, i};
    }
  }
  if (require_full) {
    for (VertexIndex v = 0; v < n; ++v) {
      if (pos[v] == kAbsent) return Violation{ViolationKind::MissingVertex, v, std::nullopt, sol.order.size()};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> verify_direct(const Instance& inst, const LabeledOrdering& sol,
                                       bool require_full) {
  std::vector<std::size_t> pos;
  if (auto bad = structural_check(inst, sol, require_full, pos)) return bad;

  for (std::size_t i = 0; i < sol.order.size(); ++i) {
    const VertexIndex v = sol.order[i];
    const LabelPair& pair = inst.pair(sol.labels[i]);
    // Adjacency lists are sorted, so the first hit is the smallest witness.
    for (VertexIndex w : pair.a.out(v)) {
      if (pos[w] != kAbsent && pos[w] > i) {
        return Violation{ViolationKind::SinkViolation, v, Arc{v, w}, i};
      }
    }
    for (VertexIndex u : pair.b.in(v)) {
      if (pos[u] != kAbsent && pos[u] < i) {
        return Violation{ViolationKind::SourceViolation, v, Arc{u, v}, i};
      }
    }
  }
  return std::nullopt;
}

Digraph residual_graph(const Instance& inst, const LabeledOrdering& sol) {
  std::vector<std::size_t> pos;
  if (auto bad = structural_check(inst, sol, true, pos)) {
    throw InputError(std::string("residual graph needs a full labeled ordering: ") +
                     violation_kind_name(bad->kind));
  }
  std::vector<int> label_of(inst.vertex_count());
  for (std::size_t i = 0; i < sol.order.size(); ++i) label_of[sol.order[i]] = sol.labels[i];

  std::vector<Arc> arcs;
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    for (VertexIndex w : inst.a(label_of[v]).out(v)) arcs.emplace_back(v, w);
    for (VertexIndex u : inst.b(label_of[v]).in(v)) arcs.emplace_back(u, v);
  }
  return Digraph(inst.vertex_count(), std::move(arcs));
}

bool labels_feasible(const Instance& inst, const LabeledOrdering& sol) {
  return is_acyclic(residual_graph(inst, sol));
}

bool verify_residual(const Instance& inst, const LabeledOrdering& sol) {
  const Digraph residual = residual_graph(inst, sol);
  std::vector<std::size_t> pos(inst.vertex_count());
  for (std::size_t i = 0; i < sol.order.size(); ++i) pos[sol.order[i]] = i;
  for (auto [tail, head] : residual.arcs()) {
    if (pos[tail] < pos[head]) return false;
  }
  return true;
}

}  // namespace compat

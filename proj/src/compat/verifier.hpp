#pragma once

#include <optional>

#include "compat/model.hpp"

namespace compat {

enum class ViolationKind { MissingVertex, DuplicateVertex, LabelOutOfRange, SinkViolation, SourceViolation };

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  VertexIndex vertex;
  std::optional<Arc> witness;  // set for sink/source violations
  std::size_t position;        // order.size() for MissingVertex

  bool operator==(const Violation&) const = default;
};

// Returns the first violation in position order, sink before source, smallest
// witness arc first. With require_full == false the constraints only range
// over the vertices present in the ordering.
std::optional<Violation> verify_direct(const Instance& inst, const LabeledOrdering& sol,
                                       bool require_full = true);

// Arc s_i -> s_j iff it lies in A_{l_i} or in B_{l_j}. Throws InputError
// unless sol is a well-formed full ordering.
Digraph residual_graph(const Instance& inst, const LabeledOrdering& sol);
// Acyclicity of the residual graph says the labels admit some order; the
// given order is a solution exactly when every residual arc points back.
bool labels_feasible(const Instance& inst, const LabeledOrdering& sol);
bool verify_residual(const Instance& inst, const LabeledOrdering& sol);

}  // namespace compat

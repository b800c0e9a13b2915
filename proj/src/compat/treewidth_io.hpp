#pragma once

#include <optional>
#include <string>

#include "compat/model_io.hpp"
#include "compat/treewidth.hpp"

namespace compat {

// PACE .td text. Vertex j (1-based) maps to names[j-1] when a name list is
// given, otherwise to instance vertex j-1. Bag 1 becomes the root.
TreeDecomposition td_from_pace(const Instance& inst, const std::string& text,
                               const std::optional<std::vector<std::string>>& names);
std::string td_to_pace(const TreeDecomposition& td, std::size_t vertex_count);

// {"bags": [[name, ...], ...], "edges": [[i, j], ...], "root": i}; bag
// indices are 0-based and "root" defaults to 0.
TreeDecomposition td_from_json(const Instance& inst, const Json& doc);
Json td_to_json(const Instance& inst, const TreeDecomposition& td);

Json nice_to_json(const Instance& inst, const NiceTreeDecomposition& ntd);

}  // namespace compat

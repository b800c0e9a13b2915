#pragma once

#include <string>

#include <json.hpp>

#include "compat/model.hpp"

namespace compat {

using Json = nlohmann::ordered_json;

// Every JSON reader throws InputError on malformed documents or unknown keys.
Json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);

// Resolves names against inst. Duplicates and bad labels are kept as given
// so the verifier can report them.
LabeledOrdering ordering_from_json(const Instance& inst, const Json& doc);
Json ordering_to_json(const Instance& inst, const LabeledOrdering& sol);

// {"vertices": [...], "arcs": [[tail, head], ...]}
Digraph digraph_from_json(const Json& doc, std::vector<std::string>* names);
Json digraph_to_json(const std::vector<std::string>& names, const Digraph& g);

Json labeled_digraph_to_json(const std::vector<std::string>& names, const LabeledDigraph& g);

// Helpers shared by the other readers.
void require_object_keys(const Json& doc, std::initializer_list<const char*> allowed,
                         std::initializer_list<const char*> required, const char* what);
std::vector<std::string> string_list(const Json& doc, const char* what);

}  // namespace compat

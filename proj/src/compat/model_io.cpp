#include "compat/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace compat {

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void require_object_keys(const Json& doc, std::initializer_list<const char*> allowed,
                         std::initializer_list<const char*> required, const char* what) {
  if (!doc.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  for (const auto& item : doc.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* key) { return item.key() == key; });
    if (!known) throw InputError(std::string(what) + ": unknown field '" + item.key() + "'");
  }
  for (const char* key : required) {
    if (!doc.contains(key)) throw InputError(std::string(what) + ": missing field '" + key + "'");
  }
}

std::vector<std::string> string_list(const Json& doc, const char* what) {
  if (!doc.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_string()) throw InputError(std::string(what) + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

namespace {

int json_int(const Json& value, const char* what) {
  if (!value.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto v = value.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::vector<Arc> arcs_from_json(const Json& doc, const Instance* inst,
                                const std::unordered_map<std::string, VertexIndex>* index,
                                const char* what) {
  if (!doc.is_array()) throw InputError(std::string(what) + " must be an array of arcs");
  auto resolve = [&](const Json& v) -> VertexIndex {
    if (!v.is_string()) throw InputError(std::string(what) + ": arc endpoints must be strings");
    const auto name = v.get<std::string>();
    if (inst) return inst->index_of(name);
    auto it = index->find(name);
    if (it == index->end()) throw InputError("unknown vertex '" + name + "'");
    return it->second;
  };
  std::vector<Arc> arcs;
  arcs.reserve(doc.size());
  for (const auto& arc : doc) {
    if (!arc.is_array() || arc.size() != 2) {
      throw InputError(std::string(what) + ": each arc must be a [tail, head] pair");
    }
    arcs.emplace_back(resolve(arc[0]), resolve(arc[1]));
  }
  return arcs;
}

Json arcs_to_json(const std::vector<std::string>& names, std::span<const Arc> arcs) {
  std::vector<std::pair<const std::string*, const std::string*>> named;
  named.reserve(arcs.size());
  for (const auto& [tail, head] : arcs) named.emplace_back(&names[tail], &names[head]);
  std::sort(named.begin(), named.end(), [](const auto& x, const auto& y) {
    return std::tie(*x.first, *x.second) < std::tie(*y.first, *y.second);
  });
  Json out = Json::array();
  for (const auto& [tail, head] : named) out.push_back(Json::array({*tail, *head}));
  return out;
}

}  // namespace

Instance instance_from_json(const Json& doc) {
  require_object_keys(doc, {"k", "vertices", "pairs"}, {"k", "vertices", "pairs"}, "instance");
  const int k = json_int(doc["k"], "k");
  if (k < 1) throw InputError("k must be at least 1");
  auto names = string_list(doc["vertices"], "vertices");
  const Json& pairs_doc = doc["pairs"];
  if (!pairs_doc.is_array() || pairs_doc.size() != static_cast<std::size_t>(k)) {
    throw InputError("pairs must be an array of exactly k entries");
  }
  std::unordered_map<std::string, VertexIndex> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], static_cast<VertexIndex>(i)).second) {
      throw InputError("duplicate vertex identifier '" + names[i] + "'");
    }
  }
  std::vector<LabelPair> pairs;
  for (const auto& p : pairs_doc) {
    require_object_keys(p, {"A", "B"}, {"A", "B"}, "pair");
    pairs.push_back({Digraph(names.size(), arcs_from_json(p["A"], nullptr, &index, "A")),
                     Digraph(names.size(), arcs_from_json(p["B"], nullptr, &index, "B"))});
  }
  return Instance(std::move(names), std::move(pairs));
}

Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["k"] = inst.k();
  doc["vertices"] = inst.vertices();
  Json pairs = Json::array();
  for (const auto& p : inst.pairs()) {
    Json entry;
    entry["A"] = arcs_to_json(inst.vertices(), p.a.arcs());
    entry["B"] = arcs_to_json(inst.vertices(), p.b.arcs());
    pairs.push_back(std::move(entry));
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

LabeledOrdering ordering_from_json(const Instance& inst, const Json& doc) {
  require_object_keys(doc, {"order", "labels"}, {"order", "labels"}, "ordering");
  const auto names = string_list(doc["order"], "order");
  const Json& labels = doc["labels"];
  if (!labels.is_array()) throw InputError("labels must be an array of integers");
  if (labels.size() != names.size()) throw InputError("order and labels differ in length");
  LabeledOrdering sol;
  for (const auto& name : names) sol.order.push_back(inst.index_of(name));
  for (const auto& l : labels) sol.labels.push_back(json_int(l, "label"));
  return sol;
}

Json ordering_to_json(const Instance& inst, const LabeledOrdering& sol) {
  Json doc;
  Json order = Json::array();
  for (VertexIndex v : sol.order) order.push_back(inst.name(v));
  doc["order"] = std::move(order);
  doc["labels"] = sol.labels;
  return doc;
}

Digraph digraph_from_json(const Json& doc, std::vector<std::string>* names) {
  require_object_keys(doc, {"vertices", "arcs"}, {"vertices", "arcs"}, "digraph");
  auto list = string_list(doc["vertices"], "vertices");
  std::unordered_map<std::string, VertexIndex> index;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].empty()) throw InputError("vertex identifiers must be nonempty");
    if (!index.emplace(list[i], static_cast<VertexIndex>(i)).second) {
      throw InputError("duplicate vertex identifier '" + list[i] + "'");
    }
  }
  Digraph g(list.size(), arcs_from_json(doc["arcs"], nullptr, &index, "arcs"));
  if (names) *names = std::move(list);
  return g;
}

Json digraph_to_json(const std::vector<std::string>& names, const Digraph& g) {
  Json doc;
  doc["vertices"] = names;
  doc["arcs"] = arcs_to_json(names, g.arcs());
  return doc;
}

Json labeled_digraph_to_json(const std::vector<std::string>& names, const LabeledDigraph& g) {
  std::vector<std::pair<Arc, const TagList*>> arcs;
  for (const auto& [arc, tags] : g.arcs) arcs.emplace_back(arc, &tags);
  std::sort(arcs.begin(), arcs.end(), [&](const auto& x, const auto& y) {
    return std::tie(names[x.first.first], names[x.first.second]) <
           std::tie(names[y.first.first], names[y.first.second]);
  });
  Json doc;
  doc["vertices"] = names;
  Json list = Json::array();
  for (const auto& [arc, tags] : arcs) {
    Json tag_names = Json::array();
    for (Tag t : *tags) tag_names.push_back(tag_name(t));
    list.push_back(Json::array({names[arc.first], names[arc.second], std::move(tag_names)}));
  }
  doc["arcs"] = std::move(list);
  return doc;
}

}  // namespace compat

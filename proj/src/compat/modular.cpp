#include "compat/modular.hpp"

#include <algorithm>
#include <map>

#include "compat/poly.hpp"
#include "compat/verifier.hpp"

namespace compat {

namespace {

int parse_node(const Instance& inst, const Json& doc, ModularDecomposition& md, int depth) {
  if (depth > 100000) throw InputError("modular decomposition nests too deeply");
  if (!doc.is_object() || !doc.contains("op") || !doc["op"].is_string()) {
    throw InputError("decomposition node needs an \"op\" string");
  }
  const std::string op = doc["op"].get<std::string>();
  MdNode node;
  if (op == "vertex") {
    require_object_keys(doc, {"op", "id"}, {"op", "id"}, "vertex node");
    if (!doc["id"].is_string()) throw InputError("vertex node id must be a string");
    node.op = MdOp::Vertex;
    node.vertex = inst.index_of(doc["id"].get<std::string>());
  } else if (op == "union" || op == "subst") {
    if (op == "union") {
      require_object_keys(doc, {"op", "children"}, {"op", "children"}, "union node");
      node.op = MdOp::Union;
    } else {
      require_object_keys(doc, {"op", "template", "children"}, {"op", "template", "children"}, "subst node");
      node.op = MdOp::Subst;
    }
    if (!doc["children"].is_array() || doc["children"].empty()) {
      throw InputError(op + " node needs a nonempty children array");
    }
    for (const auto& child : doc["children"]) node.children.push_back(parse_node(inst, child, md, depth + 1));
    if (node.op == MdOp::Subst) {
      const Json& t = doc["template"];
      require_object_keys(t, {"p", "arcs"}, {"p", "arcs"}, "template");
      if (!t["p"].is_number_unsigned()) throw InputError("template p must be a positive integer");
      const auto p = t["p"].get<std::size_t>();
      if (p != node.children.size()) throw InputError("template p must equal the number of children");
      node.pattern.vertex_count = p;
      if (!t["arcs"].is_array()) throw InputError("template arcs must be an array");
      for (const auto& arc : t["arcs"]) {
        if (!arc.is_array() || arc.size() != 3 || !arc[0].is_number_unsigned() || !arc[1].is_number_unsigned()) {
          throw InputError("template arcs look like [x, y, [\"A1\", ...]]");
        }
        const auto x = arc[0].get<std::size_t>();
        const auto y = arc[1].get<std::size_t>();
        if (x < 1 || y < 1 || x > p || y > p || x == y) throw InputError("template arc endpoints must be distinct in 1..p");
        const auto tags = string_list(arc[2], "template arc labels");
        if (tags.empty()) throw InputError("template arcs need at least one label");
        TagList& list = node.pattern.arcs[{static_cast<VertexIndex>(x - 1), static_cast<VertexIndex>(y - 1)}];
        for (const auto& tag : tags) {
          const Tag parsed = parse_tag(tag);
          if (tag_label(parsed) > inst.k()) throw InputError("template label " + tag + " exceeds k");
          list.push_back(parsed);
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    }
  } else {
    throw InputError("unknown decomposition op '" + op + "'");
  }
  md.nodes.push_back(std::move(node));
  return static_cast<int>(md.nodes.size()) - 1;
}

Json node_to_json(const Instance& inst, const ModularDecomposition& md, int i) {
  const MdNode& node = md.nodes[static_cast<std::size_t>(i)];
  Json doc;
  switch (node.op) {
    case MdOp::Vertex:
      doc["op"] = "vertex";
      doc["id"] = inst.name(node.vertex);
      return doc;
    case MdOp::Union:
      doc["op"] = "union";
      break;
    case MdOp::Subst: {
      doc["op"] = "subst";
      Json t;
      t["p"] = node.pattern.vertex_count;
      Json arcs = Json::array();
      for (const auto& [arc, tags] : node.pattern.arcs) {
        Json names = Json::array();
        for (Tag tag : tags) names.push_back(tag_name(tag));
        arcs.push_back(Json::array({arc.first + 1, arc.second + 1, std::move(names)}));
      }
      t["arcs"] = std::move(arcs);
      doc["template"] = std::move(t);
      break;
    }
  }
  Json children = Json::array();
  for (int c : node.children) children.push_back(node_to_json(inst, md, c));
  doc["children"] = std::move(children);
  return doc;
}

// Vertex lists per node, checked for disjointness.
std::vector<std::vector<VertexIndex>> node_vertices(const ModularDecomposition& md, std::size_t vertex_count) {
  std::vector<std::vector<VertexIndex>> parts(md.nodes.size());
  for (std::size_t i = 0; i < md.nodes.size(); ++i) {
    const MdNode& node = md.nodes[i];
    if (node.op == MdOp::Vertex) {
      if (node.vertex >= vertex_count) throw InputError("decomposition vertex out of range");
      parts[i] = {node.vertex};
      continue;
    }
    for (int c : node.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= i) throw InputError("decomposition children must precede parents");
      const auto& add = parts[static_cast<std::size_t>(c)];
      parts[i].insert(parts[i].end(), add.begin(), add.end());
    }
    auto sorted = parts[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("decomposition parts overlap");
    }
  }
  return parts;
}

}  // namespace

ModularDecomposition md_from_json(const Instance& inst, const Json& doc) {
  ModularDecomposition md;
  parse_node(inst, doc, md, 0);
  return md;
}

Json md_to_json(const Instance& inst, const ModularDecomposition& md) {
  if (md.nodes.empty()) throw InputError("empty modular decomposition");
  return node_to_json(inst, md, md.root());
}

LabeledDigraph eval_md(const ModularDecomposition& md, std::size_t vertex_count) {
  const auto parts = node_vertices(md, vertex_count);
  LabeledDigraph out;
  out.vertex_count = vertex_count;
  for (const MdNode& node : md.nodes) {
    if (node.op != MdOp::Subst) continue;
    for (const auto& [arc, tags] : node.pattern.arcs) {
      for (VertexIndex u : parts[static_cast<std::size_t>(node.children[arc.first])]) {
        for (VertexIndex w : parts[static_cast<std::size_t>(node.children[arc.second])]) {
          TagList& list = out.arcs[{u, w}];
          list.insert(list.end(), tags.begin(), tags.end());
        }
      }
    }
  }
  for (auto& [arc, tags] : out.arcs) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  }
  return out;
}

std::optional<std::string> validate_md(const Instance& inst, const ModularDecomposition& md) {
  if (md.nodes.empty()) {
    if (inst.vertex_count() == 0) return std::nullopt;
    return std::string("empty decomposition for a nonempty instance");
  }
  const auto parts = node_vertices(md, inst.vertex_count());
  if (parts.back().size() != inst.vertex_count()) {
    std::vector<char> seen(inst.vertex_count(), 0);
    for (VertexIndex v : parts.back()) seen[v] = 1;
    for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
      if (!seen[v]) return "vertex " + inst.name(v) + " is not covered";
    }
  }
  const LabeledDigraph built = eval_md(md, inst.vertex_count());
  const LabeledDigraph want = labeled_union(inst);
  auto describe = [&](const Arc& arc) { return inst.name(arc.first) + "->" + inst.name(arc.second); };
  auto tags_text = [](const TagList& tags) {
    std::string s;
    for (Tag t : tags) s += (s.empty() ? "" : ",") + tag_name(t);
    return "{" + s + "}";
  };
  for (const auto& [arc, tags] : built.arcs) {
    auto it = want.arcs.find(arc);
    if (it == want.arcs.end()) return "arc " + describe(arc) + " is not in the instance";
    if (it->second != tags) {
      return "arc " + describe(arc) + " carries " + tags_text(tags) + " but the instance has " + tags_text(it->second);
    }
  }
  for (const auto& [arc, tags] : want.arcs) {
    if (!built.arcs.count(arc)) return "arc " + describe(arc) + " is missing from the decomposition";
  }
  return std::nullopt;
}

namespace {

Digraph kept_arcs(const LabeledDigraph& pattern, const std::vector<LabelMask>& selections) {
  std::vector<Arc> kept;
  for (const auto& [arc, tags] : pattern.arcs) {
    for (Tag tag : tags) {
      const LabelMask bit = LabelMask{1} << (tag_label(tag) - 1);
      const LabelMask chosen = tag_side(tag) == Side::A ? selections[arc.first] : selections[arc.second];
      if (chosen & bit) {
        kept.push_back(arc);
        break;
      }
    }
  }
  return Digraph(pattern.vertex_count, std::move(kept));
}

// For each achievable mask, the child masks that produced it first.
using Recipes = std::map<LabelMask, std::vector<LabelMask>>;

std::vector<Recipes> selection_recipes(const ModularDecomposition& md, const Instance& inst) {
  if (inst.k() > kMaxModularLabels) {
    throw InputError("modular solver supports at most " + std::to_string(kMaxModularLabels) + " labels");
  }
  std::vector<Recipes> recipes(md.nodes.size());
  for (std::size_t i = 0; i < md.nodes.size(); ++i) {
    const MdNode& node = md.nodes[i];
    Recipes& mine = recipes[i];
    if (node.op == MdOp::Vertex) {
      for (int l = 1; l <= inst.k(); ++l) mine[LabelMask{1} << (l - 1)] = {};
      continue;
    }
    // Odometer over the product of the children's selection lists.
    std::vector<std::vector<LabelMask>> options;
    for (int c : node.children) {
      std::vector<LabelMask> list;
      for (const auto& [mask, how] : recipes[static_cast<std::size_t>(c)]) list.push_back(mask);
      if (list.empty()) break;
      options.push_back(std::move(list));
    }
    if (options.size() != node.children.size()) continue;
    std::vector<std::size_t> digit(options.size(), 0);
    std::vector<LabelMask> tuple(options.size());
    while (true) {
      LabelMask combined = 0;
      for (std::size_t j = 0; j < options.size(); ++j) {
        tuple[j] = options[j][digit[j]];
        combined |= tuple[j];
      }
      if (!mine.count(combined) && (node.op == MdOp::Union || template_check(node.pattern, tuple))) {
        mine[combined] = tuple;
      }
      std::size_t j = options.size();
      while (j > 0 && ++digit[j - 1] == options[j - 1].size()) digit[--j] = 0;
      if (j == 0) break;
    }
  }
  return recipes;
}

void rebuild(const ModularDecomposition& md, const std::vector<Recipes>& recipes, int i, LabelMask mask,
             LabeledOrdering& out) {
  const MdNode& node = md.nodes[static_cast<std::size_t>(i)];
  const auto& how = recipes[static_cast<std::size_t>(i)].at(mask);
  switch (node.op) {
    case MdOp::Vertex:
      out.order.push_back(node.vertex);
      out.labels.push_back(__builtin_ctz(mask) + 1);
      return;
    case MdOp::Union:
      for (std::size_t j = 0; j < node.children.size(); ++j) rebuild(md, recipes, node.children[j], how[j], out);
      return;
    case MdOp::Subst: {
      // A kept arc x -> y puts block y before block x.
      auto order = topo_order(kept_arcs(node.pattern, how));
      if (!order) throw InternalError("recorded template selection is cyclic");
      for (auto it = order->rbegin(); it != order->rend(); ++it) {
        rebuild(md, recipes, node.children[*it], how[*it], out);
      }
      return;
    }
  }
}

}  // namespace

bool template_check(const LabeledDigraph& pattern, const std::vector<LabelMask>& selections) {
  if (selections.size() != pattern.vertex_count) throw InputError("one selection per template vertex is required");
  return is_acyclic(kept_arcs(pattern, selections));
}

std::vector<std::vector<LabelMask>> label_selections(const ModularDecomposition& md, const Instance& inst) {
  const auto recipes = selection_recipes(md, inst);
  std::vector<std::vector<LabelMask>> out(recipes.size());
  for (std::size_t i = 0; i < recipes.size(); ++i) {
    for (const auto& [mask, how] : recipes[i]) out[i].push_back(mask);
  }
  return out;
}

std::optional<LabeledOrdering> solve_modular(const Instance& inst, const ModularDecomposition& md) {
  if (auto bad = validate_md(inst, md)) throw InputError("decomposition does not match the instance: " + *bad);
  if (md.nodes.empty()) return LabeledOrdering{};
  const auto recipes = selection_recipes(md, inst);
  const Recipes& top = recipes.back();
  if (top.empty()) return std::nullopt;
  LabeledOrdering sol;
  rebuild(md, recipes, md.root(), top.begin()->first, sol);
  if (auto v = verify_direct(inst, sol, true)) {
    throw InternalError("modular reconstruction produced an ordering that fails at position " +
                        std::to_string(v->position));
  }
  return sol;
}

}  // namespace compat

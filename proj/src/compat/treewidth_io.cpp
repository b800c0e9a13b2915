#include "compat/treewidth_io.hpp"

#include <algorithm>
#include <sstream>

namespace compat {

namespace {

std::size_t parse_count(const std::string& token, const char* what, std::size_t line_no) {
  std::size_t used = 0;
  long long value = -1;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || value < 0) {
    throw InputError("td line " + std::to_string(line_no) + ": bad " + what + " '" + token + "'");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

TreeDecomposition td_from_pace(const Instance& inst, const std::string& text,
                               const std::optional<std::vector<std::string>>& names) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t bag_count = 0;
  std::size_t declared_vertices = 0;
  TreeDecomposition td;
  std::vector<char> bag_seen;

  auto vertex = [&](std::size_t j) -> VertexIndex {
    if (j < 1 || j > declared_vertices) {
      throw InputError("td line " + std::to_string(line_no) + ": vertex " + std::to_string(j) + " out of range");
    }
    if (names) {
      if (j > names->size()) throw InputError("td vertex " + std::to_string(j) + " has no entry in the name map");
      return inst.index_of((*names)[j - 1]);
    }
    if (j > inst.vertex_count()) throw InputError("td vertex " + std::to_string(j) + " exceeds the instance");
    return static_cast<VertexIndex>(j - 1);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "s") {
      if (header || tok.size() != 5 || tok[1] != "td") throw InputError("td: malformed or repeated header line");
      header = true;
      bag_count = parse_count(tok[2], "bag count", line_no);
      parse_count(tok[3], "bag size", line_no);
      declared_vertices = parse_count(tok[4], "vertex count", line_no);
      td.bags.resize(bag_count);
      bag_seen.assign(bag_count, 0);
      continue;
    }
    if (!header) throw InputError("td: content before the 's td' header");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw InputError("td line " + std::to_string(line_no) + ": bag line without id");
      const std::size_t id = parse_count(tok[1], "bag id", line_no);
      if (id < 1 || id > bag_count || bag_seen[id - 1]) {
        throw InputError("td line " + std::to_string(line_no) + ": bad or repeated bag id");
      }
      bag_seen[id - 1] = 1;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        td.bags[id - 1].push_back(vertex(parse_count(tok[i], "vertex", line_no)));
      }
      continue;
    }
    if (tok.size() != 2) throw InputError("td line " + std::to_string(line_no) + ": expected a tree edge");
    const std::size_t x = parse_count(tok[0], "bag id", line_no);
    const std::size_t y = parse_count(tok[1], "bag id", line_no);
    if (x < 1 || y < 1 || x > bag_count || y > bag_count) {
      throw InputError("td line " + std::to_string(line_no) + ": tree edge names a missing bag");
    }
    td.edges.emplace_back(x - 1, y - 1);
  }
  if (!header) throw InputError("td: missing 's td' header");
  for (std::size_t i = 0; i < bag_count; ++i) {
    if (!bag_seen[i]) throw InputError("td: bag " + std::to_string(i + 1) + " has no 'b' line");
    auto& bag = td.bags[i];
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  }
  return td;
}

std::string td_to_pace(const TreeDecomposition& td, std::size_t vertex_count) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << (td.width() + 1) << ' ' << vertex_count << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << (i + 1);
    for (VertexIndex v : td.bags[i]) out << ' ' << (v + 1);
    out << '\n';
  }
  for (const auto& [x, y] : td.edges) out << (x + 1) << ' ' << (y + 1) << '\n';
  return out.str();
}

TreeDecomposition td_from_json(const Instance& inst, const Json& doc) {
  require_object_keys(doc, {"bags", "edges", "root"}, {"bags", "edges"}, "tree decomposition");
  TreeDecomposition td;
  if (!doc["bags"].is_array()) throw InputError("bags must be an array");
  for (const auto& bag : doc["bags"]) {
    std::vector<VertexIndex> ids;
    for (const auto& name : string_list(bag, "bag")) ids.push_back(inst.index_of(name));
    td.bags.push_back(std::move(ids));
  }
  if (!doc["edges"].is_array()) throw InputError("edges must be an array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw InputError("tree edges must be pairs of bag indices");
    }
    td.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  if (doc.contains("root")) {
    if (!doc["root"].is_number_unsigned()) throw InputError("root must be a bag index");
    td.root = doc["root"].get<std::size_t>();
  }
  return td;
}

Json td_to_json(const Instance& inst, const TreeDecomposition& td) {
  Json doc;
  Json bags = Json::array();
  for (const auto& bag : td.bags) {
    Json names = Json::array();
    for (VertexIndex v : bag) names.push_back(inst.name(v));
    bags.push_back(std::move(names));
  }
  doc["bags"] = std::move(bags);
  Json edges = Json::array();
  for (const auto& [x, y] : td.edges) edges.push_back(Json::array({x, y}));
  doc["edges"] = std::move(edges);
  doc["root"] = td.root;
  return doc;
}

Json nice_to_json(const Instance& inst, const NiceTreeDecomposition& ntd) {
  Json nodes = Json::array();
  for (const auto& node : ntd.nodes) {
    Json entry;
    entry["kind"] = nice_kind_name(node.kind);
    Json bag = Json::array();
    for (VertexIndex v : node.bag) bag.push_back(inst.name(v));
    entry["bag"] = std::move(bag);
    if (node.kind != NiceKind::Join) entry["vertex"] = inst.name(node.vertex);
    Json children = Json::array();
    if (node.left >= 0) children.push_back(node.left);
    if (node.right >= 0) children.push_back(node.right);
    entry["children"] = std::move(children);
    nodes.push_back(std::move(entry));
  }
  Json doc;
  doc["nodes"] = std::move(nodes);
  return doc;
}

}  // namespace compat

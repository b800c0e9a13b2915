#include "compat/arrangement.hpp"

#include <algorithm>
#include <cmath>

#include "compat/ramp.hpp"

namespace compat {

bool is_legal_move(const Instance& inst, const VertexSubset& state, const Move& move) {
  const VertexIndex v = move.vertex;
  if (v >= inst.vertex_count() || state.size() != inst.vertex_count()) return false;
  if (move.label < 1 || move.label > inst.k()) return false;
  const bool present = state[v] != 0;
  if (present != (move.op == MoveOp::Remove)) return false;
  const LabelPair& pair = inst.pair(move.label);
  for (VertexIndex w : pair.a.out(v)) {
    if (state[w]) return false;
  }
  for (VertexIndex u : pair.b.in(v)) {
    if (!state[u]) return false;
  }
  return true;
}

SequenceCheck verify_sequence(const ArrangementInstance& inst, const std::vector<Move>& moves) {
  VertexSubset state = inst.start;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move& m = moves[i];
    if (m.vertex >= inst.base.vertex_count()) return {false, i, "unknown vertex"};
    if (m.op == MoveOp::Add && state[m.vertex]) return {false, i, "vertex already present"};
    if (m.op == MoveOp::Remove && !state[m.vertex]) return {false, i, "vertex not present"};
    if (!is_legal_move(inst.base, state, m)) return {false, i, "move violates a sink or source constraint"};
    state[m.vertex] = m.op == MoveOp::Add ? 1 : 0;
  }
  if (state != inst.target) return {false, moves.size(), "sequence does not end at the target set"};
  return {};
}

std::vector<Move> invert_sequence(const std::vector<Move>& moves) {
  std::vector<Move> out(moves.rbegin(), moves.rend());
  for (Move& m : out) m.op = m.op == MoveOp::Add ? MoveOp::Remove : MoveOp::Add;
  return out;
}

std::optional<std::vector<Move>> solve_bfs(const ArrangementInstance& inst) {
  const std::size_t n = inst.base.vertex_count();
  if (n > kMaxArrangementVertices) {
    throw InputError("set arrangement search supports at most " + std::to_string(kMaxArrangementVertices) +
                     " vertices");
  }
  const int k = inst.base.k();
  using Mask = std::uint32_t;
  const Mask all = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  // a_out[v][l]: A_l out-neighbours; b_in[v][l]: B_l in-neighbours.
  std::vector<std::vector<Mask>> a_out(n, std::vector<Mask>(static_cast<std::size_t>(k) + 1, 0));
  std::vector<std::vector<Mask>> b_in(n, std::vector<Mask>(static_cast<std::size_t>(k) + 1, 0));
  for (VertexIndex v = 0; v < n; ++v) {
    for (int l = 1; l <= k; ++l) {
      for (VertexIndex w : inst.base.a(l).out(v)) a_out[v][l] |= Mask{1} << w;
      for (VertexIndex u : inst.base.b(l).in(v)) b_in[v][l] |= Mask{1} << u;
    }
  }
  auto to_mask = [&](const VertexSubset& s) {
    if (s.size() != n) throw InputError("start/target sets must span the vertex list");
    Mask m = 0;
    for (VertexIndex v = 0; v < n; ++v) {
      if (s[v]) m |= Mask{1} << v;
    }
    return m;
  };
  const Mask start = to_mask(inst.start);
  const Mask target = to_mask(inst.target);

  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> parent(std::size_t{1} << n, kUnseen);
  std::vector<std::uint8_t> via_label(std::size_t{1} << n, 0);
  std::vector<Mask> frontier{start};
  parent[start] = start;
  while (!frontier.empty() && parent[target] == kUnseen) {
    std::vector<Mask> next;
    for (Mask s : frontier) {
      const Mask absent = all & ~s;
      for (int pass = 0; pass < 2; ++pass) {
        for (VertexIndex v = 0; v < n; ++v) {
          const Mask bit = Mask{1} << v;
          if (((s & bit) != 0) != (pass == 1)) continue;
          const Mask to = s ^ bit;
          if (parent[to] != kUnseen) continue;
          for (int l = 1; l <= k; ++l) {
            if ((a_out[v][l] & s) == 0 && (b_in[v][l] & absent & ~bit) == 0) {
              parent[to] = s;
              via_label[to] = static_cast<std::uint8_t>(l);
              next.push_back(to);
              break;
            }
          }
        }
      }
    }
    frontier = std::move(next);
  }
  if (parent[target] == kUnseen) return std::nullopt;

  std::vector<Move> moves;
  for (Mask s = target; s != start; s = parent[s]) {
    const Mask diff = s ^ parent[s];
    const auto v = static_cast<VertexIndex>(__builtin_ctz(diff));
    moves.push_back({(s & diff) ? MoveOp::Add : MoveOp::Remove, v, via_label[s]});
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

ArrangementInstance two_angle_to_arrangement(const TwoAngleScene& scene, double eps) {
  const std::size_t n = scene.arms.size();
  for (const auto& arm : scene.arms) {
    if (!(arm.a1 >= 0 && arm.a1 < kPi && arm.a2 >= 0 && arm.a2 < kPi)) {
      throw InputError("arm '" + arm.id + "' angles must lie in [0, pi)");
    }
    if (arm.a1 == arm.a2) throw InputError("arm '" + arm.id + "' needs two distinct angles");
  }
  if (scene.start.size() != n || scene.target.size() != n) {
    throw InputError("start/target sets must span the arm list");
  }
  auto config = [&](const VertexSubset& s) {
    Scene out;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = scene.arms[i];
      out.arms.push_back({a.id, a.cx, a.cy, s[i] ? a.a2 : a.a1});
    }
    return out;
  };
  check_scene(config(scene.start), eps);
  check_scene(config(scene.target), eps);

  InstanceBuilder builder(2);
  for (const auto& arm : scene.arms) builder.add_vertex(arm.id);
  const Direction dirs[2] = {Direction::CW, Direction::CCW};
  for (VertexIndex i = 0; i < n; ++i) {
    const auto& a = scene.arms[i];
    const Arm rotor{a.id, a.cx, a.cy, a.a1};
    for (VertexIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& b = scene.arms[j];
      for (int d = 0; d < 2; ++d) {
        if (sweep_hits(rotor, dirs[d], a.a2, Arm{b.id, b.cx, b.cy, b.a2}, eps)) builder.add_arc(Side::A, d + 1, i, j);
        if (sweep_hits(rotor, dirs[d], a.a2, Arm{b.id, b.cx, b.cy, b.a1}, eps)) builder.add_arc(Side::B, d + 1, j, i);
      }
    }
  }
  return {builder.build(), scene.start, scene.target};
}

namespace {

VertexSubset subset_from_json(const Instance& inst, const Json& doc, const char* what) {
  VertexSubset s(inst.vertex_count(), 0);
  for (const auto& name : string_list(doc, what)) {
    const VertexIndex v = inst.index_of(name);
    if (s[v]) throw InputError(std::string(what) + " repeats vertex '" + name + "'");
    s[v] = 1;
  }
  return s;
}

Json subset_to_json(const Instance& inst, const VertexSubset& s) {
  Json out = Json::array();
  for (VertexIndex v = 0; v < inst.vertex_count(); ++v) {
    if (s[v]) out.push_back(inst.name(v));
  }
  return out;
}

}  // namespace

ArrangementInstance arrangement_from_json(const Json& doc) {
  require_object_keys(doc, {"k", "vertices", "pairs", "start", "target"}, {"k", "vertices", "pairs", "start", "target"},
                      "arrangement instance");
  Json base = Json::object();
  for (const char* key : {"k", "vertices", "pairs"}) base[key] = doc[key];
  Instance inst = instance_from_json(base);
  VertexSubset start = subset_from_json(inst, doc["start"], "start");
  VertexSubset target = subset_from_json(inst, doc["target"], "target");
  return {std::move(inst), std::move(start), std::move(target)};
}

Json arrangement_to_json(const ArrangementInstance& inst) {
  Json doc = instance_to_json(inst.base);
  doc["start"] = subset_to_json(inst.base, inst.start);
  doc["target"] = subset_to_json(inst.base, inst.target);
  return doc;
}

std::vector<Move> moves_from_json(const Instance& inst, const Json& doc) {
  require_object_keys(doc, {"moves"}, {"moves"}, "move sequence");
  if (!doc["moves"].is_array()) throw InputError("moves must be an array");
  std::vector<Move> moves;
  for (const auto& m : doc["moves"]) {
    require_object_keys(m, {"op", "vertex", "label"}, {"op", "vertex", "label"}, "move");
    if (!m["op"].is_string() || !m["vertex"].is_string() || !m["label"].is_number_integer()) {
      throw InputError("move fields: op and vertex strings, integer label");
    }
    const auto op = m["op"].get<std::string>();
    if (op != "add" && op != "remove") throw InputError("move op must be \"add\" or \"remove\"");
    moves.push_back({op == "add" ? MoveOp::Add : MoveOp::Remove, inst.index_of(m["vertex"].get<std::string>()),
                     m["label"].get<int>()});
  }
  return moves;
}

Json moves_to_json(const Instance& inst, const std::vector<Move>& moves) {
  Json list = Json::array();
  for (const Move& m : moves) {
    Json entry;
    entry["op"] = m.op == MoveOp::Add ? "add" : "remove";
    entry["vertex"] = inst.name(m.vertex);
    entry["label"] = m.label;
    list.push_back(std::move(entry));
  }
  Json doc;
  doc["moves"] = std::move(list);
  return doc;
}

TwoAngleScene two_angle_scene_from_json(const Json& doc) {
  require_object_keys(doc, {"arms", "start", "target"}, {"arms", "start", "target"}, "two-angle scene");
  if (!doc["arms"].is_array()) throw InputError("arms must be an array");
  TwoAngleScene scene;
  std::vector<std::string> ids;
  for (const auto& a : doc["arms"]) {
    require_object_keys(a, {"id", "cx", "cy", "a1", "a2"}, {"id", "cx", "cy", "a1", "a2"}, "arm");
    if (!a["id"].is_string() || !a["cx"].is_number() || !a["cy"].is_number() || !a["a1"].is_number() ||
        !a["a2"].is_number()) {
      throw InputError("arm fields: id string, cx/cy/a1/a2 numbers");
    }
    scene.arms.push_back({a["id"].get<std::string>(), a["cx"].get<double>(), a["cy"].get<double>(),
                          a["a1"].get<double>(), a["a2"].get<double>()});
    ids.push_back(scene.arms.back().id);
  }
  auto subset = [&](const char* key) {
    VertexSubset s(ids.size(), 0);
    for (const auto& name : string_list(doc[key], key)) {
      auto it = std::find(ids.begin(), ids.end(), name);
      if (it == ids.end()) throw InputError(std::string(key) + " names unknown arm '" + name + "'");
      s[static_cast<std::size_t>(it - ids.begin())] = 1;
    }
    return s;
  };
  scene.start = subset("start");
  scene.target = subset("target");
  return scene;
}

}  // namespace compat

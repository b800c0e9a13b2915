#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compat/model_io.hpp"

namespace compat {

// Membership flags indexed by vertex.
using VertexSubset = std::vector<char>;

struct ArrangementInstance {
  Instance base;
  VertexSubset start;
  VertexSubset target;
};

enum class MoveOp { Add, Remove };

struct Move {
  MoveOp op;
  VertexIndex vertex;
  int label;

  bool operator==(const Move&) const = default;
};

// Adding v to S and removing v from S u {v} are legal under the same test:
// no A_l out-neighbour of v inside S and no B_l in-neighbour of v outside S.
bool is_legal_move(const Instance& inst, const VertexSubset& state, const Move& move);

struct SequenceCheck {
  bool ok = true;
  std::size_t index = 0;  // first illegal move, or moves.size() when the end state is wrong
  std::string reason;
};

SequenceCheck verify_sequence(const ArrangementInstance& inst, const std::vector<Move>& moves);

inline constexpr std::size_t kMaxArrangementVertices = 24;

// Shortest sequence; among equally short ones, adds before removes, then the
// smaller vertex, each with its smallest legal label. Throws InputError above
// kMaxArrangementVertices.
std::optional<std::vector<Move>> solve_bfs(const ArrangementInstance& inst);

// Reverses the order and swaps adds with removes; labels stay.
std::vector<Move> invert_sequence(const std::vector<Move>& moves);

// Arms with two resting angles. Membership in a state means the arm sits at a2.
struct TwoAngleArm {
  std::string id;
  double cx = 0;
  double cy = 0;
  double a1 = 0;
  double a2 = 0;
};

struct TwoAngleScene {
  std::vector<TwoAngleArm> arms;
  VertexSubset start;
  VertexSubset target;
};

// Label 1 turns clockwise between a1 and a2, label 2 counter-clockwise.
ArrangementInstance two_angle_to_arrangement(const TwoAngleScene& scene, double eps);

ArrangementInstance arrangement_from_json(const Json& doc);
Json arrangement_to_json(const ArrangementInstance& inst);
std::vector<Move> moves_from_json(const Instance& inst, const Json& doc);
Json moves_to_json(const Instance& inst, const std::vector<Move>& moves);
TwoAngleScene two_angle_scene_from_json(const Json& doc);

}  // namespace compat

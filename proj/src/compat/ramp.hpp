#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compat/model_io.hpp"

namespace compat {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kVertical = kPi / 2;
inline constexpr double kDefaultEpsilon = 1e-9;

struct Point {
  double x = 0;
  double y = 0;
};

struct Segment {
  Point p;
  Point q;
};

// Unit-length arm turning about its midpoint; angle in [0, pi).
struct Arm {
  std::string id;
  double cx = 0;
  double cy = 0;
  double angle = 0;
};

struct Scene {
  std::vector<Arm> arms;
};

enum class Direction { CW, CCW };

struct Step {
  std::size_t arm;  // index into Scene::arms
  Direction dir;
};

struct Schedule {
  std::vector<Step> steps;
};

Segment arm_segment(double cx, double cy, double angle);
inline Segment arm_segment(const Arm& arm) { return arm_segment(arm.cx, arm.cy, arm.angle); }

// Distance between disjoint segments, or minus the smallest endpoint-to-other
// distance when they meet. Near zero means a perturbation can flip contact.
double segment_clearance(const Segment& a, const Segment& b);

// Closed segments within eps of each other. A negative eps asks for contact
// that survives a perturbation of size |eps|.
bool segments_intersect(const Segment& a, const Segment& b, double eps);

// Swept directions mod pi: CCW runs up from `from`, CW runs down. The arc is
// taken closed; its start never collides in a conflict-free configuration.
struct AngleArc {
  double start = 0;   // in [0, pi)
  double length = 0;  // in [0, pi)
};
AngleArc swept_arc(double from, double to, Direction dir);

// Does the double wedge swept by `rotor` turning from its angle to `target`
// meet `other`'s segment? Throws InputError when the centers coincide.
bool sweep_hits(const Arm& rotor, Direction dir, double target, const Arm& other, double eps);

// Throws InputError on bad angles, duplicate ids, shared centers or touching arms.
void check_scene(const Scene& scene, double eps);

// Vertices are the arm ids. Label 1 is clockwise, label 2 counter-clockwise.
Instance reduce_scene(const Scene& scene, double eps);

// The reduction's predicates all agree at +10 eps and -10 eps.
bool scene_is_robust(const Scene& scene, double eps);

// Vertex v of the reduced instance is arm v of the scene.
Schedule schedule_from_solution(const Scene& scene, const LabeledOrdering& sol);
LabeledOrdering solution_from_schedule(const Scene& scene, const Schedule& sched);

struct Collision {
  std::size_t step;   // steps.size() for a clash in the final configuration
  std::size_t rotor;
  std::size_t other;
};

// Throws InputError when an arm turns twice or a non-vertical arm never turns.
std::optional<Collision> verify_schedule(const Scene& scene, const Schedule& sched, double eps);

std::string render_svg(const Scene& scene, const Schedule* sched);

Scene scene_from_json(const Json& doc);
Json scene_to_json(const Scene& scene);
Schedule schedule_from_json(const Scene& scene, const Json& doc);
Json schedule_to_json(const Scene& scene, const Schedule& sched);

const char* direction_name(Direction dir);

}  // namespace compat

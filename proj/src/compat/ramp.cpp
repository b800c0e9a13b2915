#include "compat/ramp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace compat {

namespace {

double mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

double point_segment_distance(Point p, const Segment& s) {
  const Point d = sub(s.q, s.p);
  const double len2 = dot(d, d);
  double t = len2 > 0 ? dot(sub(p, s.p), d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point foot{s.p.x + t * d.x, s.p.y + t * d.y};
  return std::hypot(p.x - foot.x, p.y - foot.y);
}

bool is_vertical(double angle, double eps) { return std::fabs(angle - kVertical) <= std::max(eps, 0.0); }

Arm at_angle(const Arm& arm, double angle) {
  Arm out = arm;
  out.angle = angle;
  return out;
}

}  // namespace

const char* direction_name(Direction dir) { return dir == Direction::CW ? "cw" : "ccw"; }

Segment arm_segment(double cx, double cy, double angle) {
  const double dx = 0.5 * std::cos(angle);
  const double dy = 0.5 * std::sin(angle);
  return {{cx - dx, cy - dy}, {cx + dx, cy + dy}};
}

double segment_clearance(const Segment& a, const Segment& b) {
  const double nearest = std::min({point_segment_distance(a.p, b), point_segment_distance(a.q, b),
                                   point_segment_distance(b.p, a), point_segment_distance(b.q, a)});
  const Point da = sub(a.q, a.p);
  const Point db = sub(b.q, b.p);
  const double o1 = cross(da, sub(b.p, a.p));
  const double o2 = cross(da, sub(b.q, a.p));
  const double o3 = cross(db, sub(a.p, b.p));
  const double o4 = cross(db, sub(a.q, b.p));
  const bool crossing = ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
  return crossing ? -nearest : nearest;
}

bool segments_intersect(const Segment& a, const Segment& b, double eps) {
  return segment_clearance(a, b) <= eps;
}

AngleArc swept_arc(double from, double to, Direction dir) {
  if (dir == Direction::CCW) return {mod_pi(from), mod_pi(to - from)};
  return {mod_pi(to), mod_pi(from - to)};
}

bool sweep_hits(const Arm& rotor, Direction dir, double target, const Arm& other, double eps) {
  const Point c{rotor.cx, rotor.cy};
  if (std::hypot(other.cx - c.x, other.cy - c.y) <= 1e-12) {
    throw InputError("arms '" + rotor.id + "' and '" + other.id + "' share a center");
  }
  const AngleArc arc = swept_arc(rotor.angle, target, dir);
  if (arc.length <= 0) return false;

  // Clip the other segment to the disk of radius 1/2 around the center.
  const double radius = 0.5 + eps;
  if (radius <= 0) return false;
  const Segment seg = arm_segment(other);
  const Point d = sub(seg.q, seg.p);
  const Point f = sub(seg.p, c);
  const double qa = dot(d, d);
  const double qb = 2 * dot(f, d);
  const double qc = dot(f, f) - radius * radius;
  const double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return false;
  const double root = std::sqrt(disc);
  const double t0 = std::max(0.0, (-qb - root) / (2 * qa));
  const double t1 = std::min(1.0, (-qb + root) / (2 * qa));
  if (t0 > t1) return false;
  const Point p0{seg.p.x + t0 * d.x, seg.p.y + t0 * d.y};
  const Point p1{seg.p.x + t1 * d.x, seg.p.y + t1 * d.y};

  // A chord through the center meets every direction.
  if (point_segment_distance(c, {p0, p1}) <= std::max(eps, 1e-15)) return true;

  // Along a chord that misses the center the direction turns monotonically.
  const Point u = sub(p0, c);
  const Point w = sub(p1, c);
  const double phi = mod_pi(std::atan2(u.y, u.x));
  const double turn = std::atan2(cross(u, w), dot(u, w));
  const double chord_start = turn >= 0 ? phi : mod_pi(phi + turn);
  const double chord_length = std::fabs(turn);

  const double gap = mod_pi(arc.start - chord_start);
  return gap <= chord_length + eps || gap >= kPi - arc.length - eps;
}

void check_scene(const Scene& scene, double eps) {
  std::set<std::string> ids;
  for (const Arm& arm : scene.arms) {
    if (arm.id.empty()) throw InputError("arm ids must be nonempty");
    if (!ids.insert(arm.id).second) throw InputError("duplicate arm id '" + arm.id + "'");
    if (!std::isfinite(arm.cx) || !std::isfinite(arm.cy)) throw InputError("arm '" + arm.id + "' has a non-finite center");
    if (!(arm.angle >= 0 && arm.angle < kPi)) throw InputError("arm '" + arm.id + "' angle must lie in [0, pi)");
  }
  for (std::size_t i = 0; i < scene.arms.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.arms.size(); ++j) {
      const Arm& a = scene.arms[i];
      const Arm& b = scene.arms[j];
      if (a.cx == b.cx && a.cy == b.cy) throw InputError("arms '" + a.id + "' and '" + b.id + "' share a center");
      if (segments_intersect(arm_segment(a), arm_segment(b), eps)) {
        throw InputError("arms '" + a.id + "' and '" + b.id + "' intersect in the start configuration");
      }
    }
  }
}

namespace {

struct PairFacts {
  bool a_arc[2];  // rotor i sweeping (CW, CCW) hits j at rest
  bool b_arc[2];  // vertical i blocks j sweeping (CW, CCW)
};

PairFacts pair_facts(const Arm& i, const Arm& j, double eps) {
  const Arm i_up = at_angle(i, kVertical);
  const bool crossing = segments_intersect(arm_segment(i_up), arm_segment(j), eps);
  PairFacts facts{};
  const Direction dirs[2] = {Direction::CW, Direction::CCW};
  for (int d = 0; d < 2; ++d) {
    facts.a_arc[d] = sweep_hits(i, dirs[d], kVertical, j, eps);
    facts.b_arc[d] = crossing || sweep_hits(j, dirs[d], kVertical, i_up, eps);
  }
  return facts;
}

}  // namespace

Instance reduce_scene(const Scene& scene, double eps) {
  check_scene(scene, eps);
  InstanceBuilder builder(2);
  for (const Arm& arm : scene.arms) builder.add_vertex(arm.id);
  const std::size_t n = scene.arms.size();
  for (VertexIndex i = 0; i < n; ++i) {
    for (VertexIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      const PairFacts facts = pair_facts(scene.arms[i], scene.arms[j], eps);
      for (int d = 0; d < 2; ++d) {
        if (facts.a_arc[d]) builder.add_arc(Side::A, d + 1, i, j);
        if (facts.b_arc[d]) builder.add_arc(Side::B, d + 1, i, j);
      }
    }
  }
  return builder.build();
}

bool scene_is_robust(const Scene& scene, double eps) {
  const double wide = 10 * eps;
  const std::size_t n = scene.arms.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Arm& a = scene.arms[i];
      const Arm& b = scene.arms[j];
      const Segment rest_a = arm_segment(a);
      const Segment rest_b = arm_segment(b);
      const Segment up_a = arm_segment(at_angle(a, kVertical));
      const Segment up_b = arm_segment(at_angle(b, kVertical));
      for (const auto& [s, t] : {std::pair{rest_a, rest_b}, std::pair{up_a, rest_b}, std::pair{up_a, up_b}}) {
        if (std::fabs(segment_clearance(s, t)) <= wide) return false;
      }
      const PairFacts loose = pair_facts(a, b, wide);
      const PairFacts tight = pair_facts(a, b, -wide);
      for (int d = 0; d < 2; ++d) {
        if (loose.a_arc[d] != tight.a_arc[d] || loose.b_arc[d] != tight.b_arc[d]) return false;
      }
    }
  }
  return true;
}

Schedule schedule_from_solution(const Scene& scene, const LabeledOrdering& sol) {
  if (sol.order.size() != sol.labels.size()) throw InputError("order and labels differ in length");
  Schedule sched;
  for (std::size_t i = 0; i < sol.order.size(); ++i) {
    if (sol.order[i] >= scene.arms.size()) throw InputError("ordering names a vertex with no arm");
    if (sol.labels[i] != 1 && sol.labels[i] != 2) throw InputError("arm schedules use labels 1 and 2 only");
    sched.steps.push_back({sol.order[i], sol.labels[i] == 1 ? Direction::CW : Direction::CCW});
  }
  return sched;
}

LabeledOrdering solution_from_schedule(const Scene& scene, const Schedule& sched) {
  LabeledOrdering sol;
  for (const Step& step : sched.steps) {
    if (step.arm >= scene.arms.size()) throw InputError("schedule names an unknown arm");
    sol.order.push_back(static_cast<VertexIndex>(step.arm));
    sol.labels.push_back(step.dir == Direction::CW ? 1 : 2);
  }
  return sol;
}

std::optional<Collision> verify_schedule(const Scene& scene, const Schedule& sched, double eps) {
  const std::size_t n = scene.arms.size();
  std::vector<char> moved(n, 0);
  for (const Step& step : sched.steps) {
    if (step.arm >= n) throw InputError("schedule names an unknown arm");
    if (moved[step.arm]) throw InputError("arm '" + scene.arms[step.arm].id + "' rotates twice");
    moved[step.arm] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!moved[i] && !is_vertical(scene.arms[i].angle, eps)) {
      throw InputError("arm '" + scene.arms[i].id + "' is never rotated");
    }
  }

  std::vector<Arm> now = scene.arms;
  for (std::size_t s = 0; s < sched.steps.size(); ++s) {
    const std::size_t r = sched.steps[s].arm;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != r && sweep_hits(now[r], sched.steps[s].dir, kVertical, now[j], eps)) return Collision{s, r, j};
    }
    now[r].angle = kVertical;
  }
  for (Arm& arm : now) arm.angle = kVertical;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (segments_intersect(arm_segment(now[i]), arm_segment(now[j]), eps)) {
        return Collision{sched.steps.size(), i, j};
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Scene& scene, const Schedule* sched) {
  constexpr double scale = 100.0;
  constexpr double margin = 0.75;
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!scene.arms.empty()) {
    min_x = max_x = scene.arms[0].cx;
    min_y = max_y = scene.arms[0].cy;
    for (const Arm& arm : scene.arms) {
      min_x = std::min(min_x, arm.cx);
      max_x = std::max(max_x, arm.cx);
      min_y = std::min(min_y, arm.cy);
      max_y = std::max(max_y, arm.cy);
    }
  }
  min_x -= margin;
  max_x += margin;
  min_y -= margin;
  max_y += margin;
  const double width = (max_x - min_x) * scale;
  const double height = (max_y - min_y) * scale;
  auto px = [&](double x) { return fixed((x - min_x) * scale); };
  auto py = [&](double y) { return fixed((max_y - y) * scale); };

  std::vector<std::string> step_text(scene.arms.size());
  if (sched) {
    for (std::size_t s = 0; s < sched->steps.size(); ++s) {
      const Step& step = sched->steps[s];
      if (step.arm >= scene.arms.size()) throw InputError("schedule names an unknown arm");
      step_text[step.arm] = std::to_string(s + 1) + (step.dir == Direction::CW ? " ↻" : " ↺");
    }
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
         "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out += "  <g id=\"arms\" stroke=\"#1f4e79\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
  for (const Arm& arm : scene.arms) {
    const Segment s = arm_segment(arm);
    out += "    <line id=\"arm-" + xml_escape(arm.id) + "\" x1=\"" + px(s.p.x) + "\" y1=\"" + py(s.p.y) + "\" x2=\"" +
           px(s.q.x) + "\" y2=\"" + py(s.q.y) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g id=\"centers\" fill=\"#c0392b\">\n";
  for (const Arm& arm : scene.arms) {
    out += "    <circle cx=\"" + px(arm.cx) + "\" cy=\"" + py(arm.cy) + "\" r=\"4\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#222222\">\n";
  for (std::size_t i = 0; i < scene.arms.size(); ++i) {
    const Arm& arm = scene.arms[i];
    std::string text = xml_escape(arm.id);
    if (!step_text[i].empty()) text += " [" + step_text[i] + "]";
    out += "    <text x=\"" + px(arm.cx + 0.08) + "\" y=\"" + py(arm.cy - 0.12) + "\">" + text + "</text>\n";
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

Scene scene_from_json(const Json& doc) {
  require_object_keys(doc, {"arms"}, {"arms"}, "scene");
  if (!doc["arms"].is_array()) throw InputError("arms must be an array");
  Scene scene;
  for (const auto& a : doc["arms"]) {
    require_object_keys(a, {"id", "cx", "cy", "angle"}, {"id", "cx", "cy", "angle"}, "arm");
    if (!a["id"].is_string() || !a["cx"].is_number() || !a["cy"].is_number() || !a["angle"].is_number()) {
      throw InputError("arm fields: id string, cx/cy/angle numbers");
    }
    scene.arms.push_back({a["id"].get<std::string>(), a["cx"].get<double>(), a["cy"].get<double>(),
                          a["angle"].get<double>()});
  }
  return scene;
}

Json scene_to_json(const Scene& scene) {
  Json arms = Json::array();
  for (const Arm& arm : scene.arms) {
    Json a;
    a["id"] = arm.id;
    a["cx"] = arm.cx;
    a["cy"] = arm.cy;
    a["angle"] = arm.angle;
    arms.push_back(std::move(a));
  }
  Json doc;
  doc["arms"] = std::move(arms);
  return doc;
}

Schedule schedule_from_json(const Scene& scene, const Json& doc) {
  require_object_keys(doc, {"steps"}, {"steps"}, "schedule");
  if (!doc["steps"].is_array()) throw InputError("steps must be an array");
  Schedule sched;
  for (const auto& s : doc["steps"]) {
    require_object_keys(s, {"arm", "dir"}, {"arm", "dir"}, "step");
    if (!s["arm"].is_string() || !s["dir"].is_string()) throw InputError("step fields: arm and dir strings");
    const auto id = s["arm"].get<std::string>();
    const auto dir = s["dir"].get<std::string>();
    auto it = std::find_if(scene.arms.begin(), scene.arms.end(), [&](const Arm& a) { return a.id == id; });
    if (it == scene.arms.end()) throw InputError("schedule names unknown arm '" + id + "'");
    if (dir != "cw" && dir != "ccw") throw InputError("step dir must be \"cw\" or \"ccw\"");
    sched.steps.push_back({static_cast<std::size_t>(it - scene.arms.begin()), dir == "cw" ? Direction::CW : Direction::CCW});
  }
  return sched;
}

Json schedule_to_json(const Scene& scene, const Schedule& sched) {
  Json steps = Json::array();
  for (const Step& step : sched.steps) {
    Json s;
    s["arm"] = scene.arms.at(step.arm).id;
    s["dir"] = direction_name(step.dir);
    steps.push_back(std::move(s));
  }
  Json doc;
  doc["steps"] = std::move(steps);
  return doc;
}

}  // namespace compat

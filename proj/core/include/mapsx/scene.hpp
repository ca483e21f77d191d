#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mapsx/dynamics.hpp"
#include "mapsx/geometry.hpp"

namespace mapsx {

struct GoalDisc {
  Point2 center;
  double radius = 0.0;
};

struct GoalRect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
};

// Goal membership is tested on the projected workspace position only.
using GoalRegion = std::variant<GoalDisc, GoalRect>;

bool goal_contains(const GoalRegion& g, Point2 p);
Point2 sample_goal_point(const GoalRegion& g, Rng& rng);
bool goal_intersects_workspace(const GoalRegion& g, const Aabb& workspace);

struct AgentSpec {
  std::string name;
  DynamicsModel model;
  AgentState start;
  GoalRegion goal;
  double radius = 0.0;
};

struct Scene {
  Aabb workspace;
  std::vector<Obstacle> obstacles;
  std::vector<AgentSpec> agents;
};

struct PlannerConfig {
  enum class Planner { rrt, est };
  enum class Mode { baseline, post, lazy, maps, anytime };

  Planner planner = Planner::rrt;
  Mode mode = Mode::post;
  std::optional<int> segment_bound;  // r; nullopt = unbounded
  double dt = 0.1;
  int steps_min = 1;
  int steps_max = 10;
  double goal_bias = 0.05;
  int candidates = 1;  // control candidates per agent per extension
  double max_time = 30.0;  // modeled seconds (see workclock.hpp)
  std::uint64_t max_iterations = UINT64_MAX;
  std::uint64_t seed = 0;
  double clearance = 0.0;
};

const char* planner_name(PlannerConfig::Planner p);
const char* mode_name(PlannerConfig::Mode m);
bool parse_planner(const std::string& s, PlannerConfig::Planner& out);
bool parse_mode(const std::string& s, PlannerConfig::Mode& out);

// Scene file syntax error; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason);
  int line() const { return line_; }

 private:
  int line_;
};

// A scene whose invariants do not hold.
class SceneError : public std::runtime_error {
 public:
  explicit SceneError(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
  std::string rule;     // e.g. "StartOverlap"
  std::string subject;  // agent/obstacle names involved
  std::string detail;

  std::string to_string() const;
};

// Parses the line-oriented scene format (see README). Throws ParseError on
// syntax problems and SceneError when the parsed scene fails validation.
Scene parse_scene(const std::string& text);

// Canonical text form; parse(serialize(parse(t))) == parse(t).
std::string serialize_scene(const Scene& scene);

// Empty iff all scene invariants hold.
std::vector<Violation> validate(const Scene& scene);

// FNV-1a over the canonical serialization; identifies the scene in plan files.
std::uint64_t scene_hash(const Scene& scene);

Scene load_scene_file(const std::string& path);

}  // namespace mapsx

#include "mapsx/scene.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mapsx {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && tok.size() > 0 && std::isfinite(out);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Splits "key=value", returns false when '=' is absent.
bool split_kv(const std::string& tok, std::string& key, std::string& value) {
  const auto pos = tok.find('=');
  if (pos == std::string::npos || pos == 0) return false;
  key = tok.substr(0, pos);
  value = tok.substr(pos + 1);
  return true;
}

// Parses "(v1,v2,...,vn)" into numbers.
bool parse_tuple(const std::string& s, std::vector<double>& out) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  std::string inner = s.substr(1, s.size() - 2);
  std::stringstream ss(inner);
  std::string field;
  out.clear();
  while (std::getline(ss, field, ',')) {
    double v;
    if (!parse_double(field, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

bool goal_contains(const GoalRegion& g, Point2 p) {
  if (const auto* disc = std::get_if<GoalDisc>(&g)) {
    return distance(disc->center, p) <= disc->radius;
  }
  const auto& r = std::get<GoalRect>(g);
  return p.x >= r.xmin && p.x <= r.xmax && p.y >= r.ymin && p.y <= r.ymax;
}

Point2 sample_goal_point(const GoalRegion& g, Rng& rng) {
  if (const auto* disc = std::get_if<GoalDisc>(&g)) {
    for (;;) {
      const double x = rng.uniform(-disc->radius, disc->radius);
      const double y = rng.uniform(-disc->radius, disc->radius);
      if (x * x + y * y <= disc->radius * disc->radius) {
        return {disc->center.x + x, disc->center.y + y};
      }
    }
  }
  const auto& r = std::get<GoalRect>(g);
  return {rng.uniform(r.xmin, r.xmax), rng.uniform(r.ymin, r.ymax)};
}

bool goal_intersects_workspace(const GoalRegion& g, const Aabb& workspace) {
  if (const auto* disc = std::get_if<GoalDisc>(&g)) {
    const double dx = std::max({workspace.xmin - disc->center.x, 0.0, disc->center.x - workspace.xmax});
    const double dy = std::max({workspace.ymin - disc->center.y, 0.0, disc->center.y - workspace.ymax});
    return std::hypot(dx, dy) <= disc->radius;
  }
  const auto& r = std::get<GoalRect>(g);
  return r.xmin <= workspace.xmax && r.xmax >= workspace.xmin && r.ymin <= workspace.ymax &&
         r.ymax >= workspace.ymin;
}

const char* planner_name(PlannerConfig::Planner p) {
  return p == PlannerConfig::Planner::rrt ? "rrt" : "est";
}

const char* mode_name(PlannerConfig::Mode m) {
  switch (m) {
    case PlannerConfig::Mode::baseline: return "baseline";
    case PlannerConfig::Mode::post: return "post";
    case PlannerConfig::Mode::lazy: return "lazy";
    case PlannerConfig::Mode::maps: return "maps";
    case PlannerConfig::Mode::anytime: return "anytime";
  }
  return "?";
}

bool parse_planner(const std::string& s, PlannerConfig::Planner& out) {
  if (s == "rrt") out = PlannerConfig::Planner::rrt;
  else if (s == "est") out = PlannerConfig::Planner::est;
  else return false;
  return true;
}

bool parse_mode(const std::string& s, PlannerConfig::Mode& out) {
  if (s == "baseline") out = PlannerConfig::Mode::baseline;
  else if (s == "post") out = PlannerConfig::Mode::post;
  else if (s == "lazy") out = PlannerConfig::Mode::lazy;
  else if (s == "maps") out = PlannerConfig::Mode::maps;
  else if (s == "anytime") out = PlannerConfig::Mode::anytime;
  else return false;
  return true;
}

ParseError::ParseError(int line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

std::string Violation::to_string() const {
  return rule + "(" + subject + "): " + detail;
}

namespace {

// Parses an agent directive:
//   agent NAME MODEL radius=R start=(..) goal=disc(..)|rect(..) [KEY=VAL ...]
AgentSpec parse_agent(const std::vector<std::string>& toks, int lineno) {
  if (toks.size() < 6) throw ParseError(lineno, "agent directive needs name, model, radius, start, goal");
  AgentSpec agent;
  agent.name = toks[1];
  if (!parse_model_tag(toks[2], agent.model.tag)) {
    throw ParseError(lineno, "unknown model tag '" + toks[2] + "'");
  }

  std::string key, value;
  if (!split_kv(toks[3], key, value) || key != "radius" || !parse_double(value, agent.radius)) {
    throw ParseError(lineno, "expected radius=R, got '" + toks[3] + "'");
  }

  if (!split_kv(toks[4], key, value) || key != "start") {
    throw ParseError(lineno, "expected start=(...), got '" + toks[4] + "'");
  }
  std::vector<double> start_vals;
  if (!parse_tuple(value, start_vals)) throw ParseError(lineno, "malformed start tuple");
  if (static_cast<int>(start_vals.size()) != agent.model.state_dim()) {
    throw ParseError(lineno, "start tuple has " + std::to_string(start_vals.size()) +
                                 " values, model " + toks[2] + " needs " +
                                 std::to_string(agent.model.state_dim()));
  }
  for (std::size_t i = 0; i < start_vals.size(); ++i) agent.start.q[i] = start_vals[i];
  if (agent.model.has_heading()) agent.start.q[2] = wrap_angle(agent.start.q[2]);

  if (!split_kv(toks[5], key, value) || key != "goal") {
    throw ParseError(lineno, "expected goal=disc(...)|rect(...), got '" + toks[5] + "'");
  }
  std::vector<double> goal_vals;
  if (value.rfind("disc", 0) == 0 && parse_tuple(value.substr(4), goal_vals) && goal_vals.size() == 3) {
    agent.goal = GoalDisc{{goal_vals[0], goal_vals[1]}, goal_vals[2]};
  } else if (value.rfind("rect", 0) == 0 && parse_tuple(value.substr(4), goal_vals) &&
             goal_vals.size() == 4) {
    agent.goal = GoalRect{goal_vals[0], goal_vals[1], goal_vals[2], goal_vals[3]};
  } else {
    throw ParseError(lineno, "malformed goal '" + value + "'");
  }

  for (std::size_t i = 6; i < toks.size(); ++i) {
    if (!split_kv(toks[i], key, value)) throw ParseError(lineno, "expected KEY=VAL, got '" + toks[i] + "'");
    double v;
    if (!parse_double(value, v)) throw ParseError(lineno, "non-numeric value in '" + toks[i] + "'");
    if (key == "vmax") agent.model.vmax = v;
    else if (key == "amax") agent.model.amax = v;
    else if (key == "wmax") agent.model.omega_max = v;
    else if (key == "phimax") agent.model.steer_max = v;
    else if (key == "wheelbase") agent.model.wheelbase = v;
    else throw ParseError(lineno, "unknown bound override '" + key + "'");
  }
  return agent;
}

}  // namespace

Scene parse_scene(const std::string& text) {
  Scene scene;
  bool have_workspace = false;

  std::istringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto toks = tokenize(raw);
    if (toks.empty()) continue;

    if (toks[0] == "workspace") {
      if (toks.size() != 5) throw ParseError(lineno, "workspace needs XMIN YMIN XMAX YMAX");
      double v[4];
      for (int i = 0; i < 4; ++i) {
        if (!parse_double(toks[i + 1], v[i])) throw ParseError(lineno, "non-numeric workspace bound");
      }
      scene.workspace = {v[0], v[1], v[2], v[3]};
      have_workspace = true;
    } else if (toks[0] == "obstacle") {
      if (toks.size() < 2) throw ParseError(lineno, "obstacle needs a kind (rect|poly)");
      if (toks[1] == "rect") {
        if (toks.size() != 6) throw ParseError(lineno, "obstacle rect needs XMIN YMIN XMAX YMAX");
        double v[4];
        for (int i = 0; i < 4; ++i) {
          if (!parse_double(toks[i + 2], v[i])) throw ParseError(lineno, "non-numeric obstacle bound");
        }
        scene.obstacles.push_back(Aabb{v[0], v[1], v[2], v[3]});
      } else if (toks[1] == "poly") {
        if (toks.size() < 8 || (toks.size() - 2) % 2 != 0) {
          throw ParseError(lineno, "obstacle poly needs >=3 X Y pairs");
        }
        ConvexPolygon poly;
        for (std::size_t i = 2; i + 1 < toks.size(); i += 2) {
          double x, y;
          if (!parse_double(toks[i], x) || !parse_double(toks[i + 1], y)) {
            throw ParseError(lineno, "non-numeric polygon vertex");
          }
          poly.vertices.push_back({x, y});
        }
        scene.obstacles.push_back(std::move(poly));
      } else {
        throw ParseError(lineno, "unknown obstacle kind '" + toks[1] + "'");
      }
    } else if (toks[0] == "agent") {
      scene.agents.push_back(parse_agent(toks, lineno));
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }

  if (!have_workspace) throw ParseError(lineno, "missing workspace directive");

  const auto violations = validate(scene);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) {
      if (!msg.empty()) msg += "; ";
      msg += v.to_string();
    }
    throw SceneError(msg);
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  std::string out;
  out += "workspace " + format_double(scene.workspace.xmin) + " " + format_double(scene.workspace.ymin) +
         " " + format_double(scene.workspace.xmax) + " " + format_double(scene.workspace.ymax) + "\n";
  for (const auto& o : scene.obstacles) {
    if (const auto* r = std::get_if<Aabb>(&o)) {
      out += "obstacle rect " + format_double(r->xmin) + " " + format_double(r->ymin) + " " +
             format_double(r->xmax) + " " + format_double(r->ymax) + "\n";
    } else {
      out += "obstacle poly";
      for (const auto& v : std::get<ConvexPolygon>(o).vertices) {
        out += " " + format_double(v.x) + " " + format_double(v.y);
      }
      out += "\n";
    }
  }
  const DynamicsModel defaults;
  for (const auto& a : scene.agents) {
    out += "agent " + a.name + " " + model_name(a.model.tag) + " radius=" + format_double(a.radius);
    out += " start=(";
    for (int i = 0; i < a.model.state_dim(); ++i) {
      if (i) out += ",";
      out += format_double(a.start.q[i]);
    }
    out += ")";
    if (const auto* disc = std::get_if<GoalDisc>(&a.goal)) {
      out += " goal=disc(" + format_double(disc->center.x) + "," + format_double(disc->center.y) + "," +
             format_double(disc->radius) + ")";
    } else {
      const auto& r = std::get<GoalRect>(a.goal);
      out += " goal=rect(" + format_double(r.xmin) + "," + format_double(r.ymin) + "," +
             format_double(r.xmax) + "," + format_double(r.ymax) + ")";
    }
    if (a.model.vmax != defaults.vmax) out += " vmax=" + format_double(a.model.vmax);
    if (a.model.amax != defaults.amax) out += " amax=" + format_double(a.model.amax);
    if (a.model.omega_max != defaults.omega_max) out += " wmax=" + format_double(a.model.omega_max);
    if (a.model.steer_max != defaults.steer_max) out += " phimax=" + format_double(a.model.steer_max);
    if (a.model.wheelbase != defaults.wheelbase) out += " wheelbase=" + format_double(a.model.wheelbase);
    out += "\n";
  }
  return out;
}

namespace {

bool polygon_is_convex_ccw(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    if (cross(b - a, c - b) < -kGeomEps) return false;
  }
  return true;
}

bool model_bounds_ok(const DynamicsModel& m) {
  const bool basics = std::isfinite(m.vmax) && m.vmax > 0.0 && std::isfinite(m.amax) && m.amax > 0.0 &&
                      std::isfinite(m.omega_max) && m.omega_max > 0.0 && std::isfinite(m.steer_max) &&
                      m.steer_max > 0.0 && m.steer_max < 0.5 * kPi;
  const bool car = m.tag != ModelTag::C1 && m.tag != ModelTag::C2
                       ? true
                       : std::isfinite(m.wheelbase) && m.wheelbase > 0.0;
  return basics && car;
}

}  // namespace

std::vector<Violation> validate(const Scene& scene) {
  std::vector<Violation> out;
  const auto& ws = scene.workspace;

  if (!(ws.xmin < ws.xmax && ws.ymin < ws.ymax)) {
    out.push_back({"EmptyWorkspace", "workspace", "workspace must have positive area"});
  }
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    const auto& o = scene.obstacles[i];
    const std::string name = "obstacle" + std::to_string(i + 1);
    if (const auto* r = std::get_if<Aabb>(&o)) {
      if (!(r->xmin < r->xmax && r->ymin < r->ymax)) {
        out.push_back({"DegenerateObstacle", name, "rect must satisfy xmin<xmax, ymin<ymax"});
      }
    } else if (!polygon_is_convex_ccw(std::get<ConvexPolygon>(o))) {
      out.push_back({"NonConvexObstacle", name, "polygon must be convex with >=3 CCW vertices"});
    }
  }

  if (scene.agents.empty()) {
    out.push_back({"NoAgents", "scene", "at least one agent is required"});
  }
  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    const auto& a = scene.agents[i];
    if (a.radius < 0.0) out.push_back({"NegativeRadius", a.name, "radius must be >= 0"});
    if (!model_bounds_ok(a.model)) {
      out.push_back({"BadModelBounds", a.name, "model bounds must be finite and positive"});
    }
    const Point2 p = project_w(a.start);
    if (p.x < ws.xmin + a.radius || p.x > ws.xmax - a.radius || p.y < ws.ymin + a.radius ||
        p.y > ws.ymax - a.radius) {
      out.push_back({"StartOutsideWorkspace", a.name, "start disc must lie inside the workspace"});
    }
    for (std::size_t oi = 0; oi < scene.obstacles.size(); ++oi) {
      if (disc_hits_obstacle(p, a.radius, scene.obstacles[oi])) {
        out.push_back({"StartInObstacle", a.name, "start disc touches obstacle" + std::to_string(oi + 1)});
      }
    }
    if (!velocity_within_bounds(a.model, a.start)) {
      out.push_back({"StartVelocityOutOfBounds", a.name, "start velocity exceeds vmax"});
    }
    if (!goal_intersects_workspace(a.goal, ws)) {
      out.push_back({"GoalOutsideWorkspace", a.name, "goal region does not intersect the workspace"});
    }
    if (const auto* disc = std::get_if<GoalDisc>(&a.goal)) {
      if (!(disc->radius > 0.0)) out.push_back({"EmptyGoal", a.name, "goal disc needs radius > 0"});
    } else {
      const auto& r = std::get<GoalRect>(a.goal);
      if (!(r.xmin < r.xmax && r.ymin < r.ymax)) {
        out.push_back({"EmptyGoal", a.name, "goal rect needs positive area"});
      }
    }
    for (std::size_t j = i + 1; j < scene.agents.size(); ++j) {
      const auto& b = scene.agents[j];
      if (a.name == b.name) out.push_back({"DuplicateName", a.name + "," + b.name, "agent names must be unique"});
      if (distance(p, project_w(b.start)) <= a.radius + b.radius) {
        out.push_back({"StartOverlap", a.name + "," + b.name, "start discs touch"});
      }
    }
  }
  return out;
}

std::uint64_t scene_hash(const Scene& scene) {
  const std::string canon = serialize_scene(scene);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SceneError("cannot open scene file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scene(ss.str());
}

}  // namespace mapsx

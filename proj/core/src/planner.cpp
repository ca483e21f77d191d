#include "mapsx/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mapsx {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
}  // namespace

DensityGrid::DensityGrid(const Aabb& workspace, std::size_t /*agent_count*/, int cells_per_axis)
    : workspace_(workspace), cells_(cells_per_axis) {}

std::uint64_t DensityGrid::signature(const CompoundState& s) const {
  const double wx = workspace_.width();
  const double wy = workspace_.height();
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const Point2 p = project_w(s.agents[i]);
    int ix = static_cast<int>((p.x - workspace_.xmin) / wx * cells_);
    int iy = static_cast<int>((p.y - workspace_.ymin) / wy * cells_);
    ix = std::clamp(ix, 0, cells_ - 1);
    iy = std::clamp(iy, 0, cells_ - 1);
    h = mix_hash(h, i);
    h = mix_hash(h, static_cast<std::uint64_t>(ix));
    h = mix_hash(h, static_cast<std::uint64_t>(iy));
  }
  return h;
}

void DensityGrid::add_node(int node_id, const CompoundState& s) {
  const std::uint64_t sig = signature(s);
  sig_by_node_[node_id] = sig;
  ++counts_[sig];
}

void DensityGrid::remove_node(int node_id) {
  const auto it = sig_by_node_.find(node_id);
  if (it == sig_by_node_.end()) return;
  auto cit = counts_.find(it->second);
  if (cit != counts_.end() && --cit->second <= 0) counts_.erase(cit);
  sig_by_node_.erase(it);
}

int DensityGrid::occupancy_of(int node_id) const {
  const auto it = sig_by_node_.find(node_id);
  return it == sig_by_node_.end() ? 0 : occupancy(it->second);
}

int DensityGrid::occupancy(std::uint64_t sig) const {
  const auto it = counts_.find(sig);
  return it == counts_.end() ? 0 : it->second;
}

namespace {

AgentState sample_agent_state(const AgentSpec& agent, const Aabb& ws, bool from_goal, Rng& rng) {
  AgentState s;
  Point2 p;
  if (from_goal) {
    p = sample_goal_point(agent.goal, rng);
  } else {
    p = {rng.uniform(ws.xmin, ws.xmax), rng.uniform(ws.ymin, ws.ymax)};
  }
  s.q[0] = p.x;
  s.q[1] = p.y;
  switch (agent.model.tag) {
    case ModelTag::L1:
      break;
    case ModelTag::L2:
      s.q[2] = rng.uniform(-agent.model.vmax, agent.model.vmax);
      s.q[3] = rng.uniform(-agent.model.vmax, agent.model.vmax);
      break;
    case ModelTag::U1:
    case ModelTag::C1:
      s.q[2] = rng.uniform(-kPi, kPi);
      break;
    case ModelTag::C2:
      s.q[2] = rng.uniform(-kPi, kPi);
      s.q[3] = rng.uniform(-agent.model.vmax, agent.model.vmax);
      break;
  }
  return s;
}

}  // namespace

CompoundState sample_compound(const Scene& scene, const PlannerConfig& config, Rng& rng) {
  const bool from_goal = rng.uniform01() < config.goal_bias;
  CompoundState x;
  x.agents.reserve(scene.agents.size());
  for (const auto& agent : scene.agents) {
    x.agents.push_back(sample_agent_state(agent, scene.workspace, from_goal, rng));
  }
  return x;
}

int nearest_node(const Tree& tree, const Scene& scene, const CompoundState& q, WorkClock* clock) {
  const std::size_t k = scene.agents.size();
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  tree.for_each_live([&](const TreeNode& n) {
    if (clock) clock->charge(work::kDistanceEval * k);
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      d += state_distance(scene.agents[i].model, n.state.agents[i], q.agents[i]);
      if (d >= best_d) break;
    }
    if (d < best_d) {
      best_d = d;
      best = n.id;
    }
  });
  return best;
}

SampleResult sample_rrt(const Tree& tree, const Scene& scene, const PlannerConfig& config,
                        Rng& rng, WorkClock* clock) {
  SampleResult r;
  r.x_rand = sample_compound(scene, config, rng);
  r.x_near = nearest_node(tree, scene, r.x_rand, clock);
  return r;
}

int select_est(const Tree& tree, const DensityGrid& grid, Rng& rng, WorkClock* clock) {
  double total = 0.0;
  std::vector<std::pair<int, double>> weights;
  weights.reserve(tree.live_count());
  tree.for_each_live([&](const TreeNode& n) {
    if (clock) clock->charge(work::kEstWeight);
    const int occ = std::max(1, grid.occupancy_of(n.id));
    const double w = 1.0 / static_cast<double>(occ);
    weights.emplace_back(n.id, w);
    total += w;
  });
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  for (const auto& [id, w] : weights) {
    acc += w;
    if (u < acc) return id;
  }
  return weights.back().first;
}

bool agent_in_goal(const AgentSpec& agent, const AgentState& s) {
  return goal_contains(agent.goal, project_w(s));
}

bool goal_reached(const Scene& scene, const CompoundState& s) {
  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    if (!agent_in_goal(scene.agents[i], s.agents[i])) return false;
  }
  return true;
}

ExtendResult multi_agent_extend(const Tree& tree, int from, const CompoundState& x_rand, Rng& rng,
                                const Scene& scene, const PlannerConfig& config, WorkClock* clock) {
  const TreeNode& parent = tree.node(from);
  const int steps = config.steps_min == config.steps_max
                        ? config.steps_min
                        : rng.uniform_range(config.steps_min, config.steps_max);
  const double duration = steps * config.dt;

  ExtendResult result;
  result.edge.steps = steps;
  result.edge.duration = duration;
  result.edge.motions.reserve(scene.agents.size());
  result.x_new.agents.reserve(scene.agents.size());

  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    const AgentSpec& agent = scene.agents[i];
    const AgentState& s0 = parent.state.agents[i];
    SampledMotion motion;
    if (agent_in_goal(agent, s0)) {
      motion = propagate(agent.model, s0, hold_control(agent.model, s0, duration), steps, config.dt);
      if (clock) clock->charge(work::kRk4Substep * static_cast<std::uint64_t>(steps));
    } else {
      double best_d = std::numeric_limits<double>::infinity();
      for (int b = 0; b < config.candidates; ++b) {
        const ControlInput u = sample_control(agent.model, rng);
        SampledMotion candidate = propagate(agent.model, s0, u, steps, config.dt);
        if (clock) {
          clock->charge(work::kRk4Substep * static_cast<std::uint64_t>(steps) + work::kDistanceEval);
        }
        const double d = state_distance(agent.model, candidate.states.back(), x_rand.agents[i]);
        if (d < best_d) {
          best_d = d;
          motion = std::move(candidate);
        }
      }
    }
    result.x_new.agents.push_back(motion.states.back());
    result.edge.motions.push_back(std::move(motion));
  }
  return result;
}

bool is_valid(const Edge& edge, const Scene& scene, WorkClock* clock) {
  const std::size_t k = scene.agents.size();
  const int samples = edge.steps + 1;
  for (int j = 0; j < samples; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      const AgentSpec& agent = scene.agents[i];
      const AgentState& s = edge.motions[i].states[static_cast<std::size_t>(j)];
      const Point2 p = project_w(s);
      if (clock) {
        clock->charge(work::kSampleCheck + work::kObstacleCheck * scene.obstacles.size());
      }
      const auto& ws = scene.workspace;
      if (p.x < ws.xmin + agent.radius || p.x > ws.xmax - agent.radius ||
          p.y < ws.ymin + agent.radius || p.y > ws.ymax - agent.radius) {
        return false;
      }
      if (!velocity_within_bounds(agent.model, s)) return false;
      for (const auto& o : scene.obstacles) {
        if (disc_hits_obstacle(p, agent.radius, o)) return false;
      }
      for (std::size_t m = 0; m < i; ++m) {
        if (clock) clock->charge(work::kSampleCheck);
        const Point2 q = project_w(edge.motions[m].states[static_cast<std::size_t>(j)]);
        if (distance(p, q) <= agent.radius + scene.agents[m].radius) return false;
      }
    }
  }
  return true;
}

QueryResult run_query(const Scene& scene, const PlannerConfig& config, Rng& rng,
                      const QueryCallbacks& callbacks) {
  CompoundState root;
  root.agents.reserve(scene.agents.size());
  for (const auto& agent : scene.agents) root.agents.push_back(agent.start);

  QueryResult result;
  result.tree = Tree(std::move(root), config.dt);

  WorkClock clock;
  DensityGrid grid(scene.workspace, scene.agents.size());
  const bool est = config.planner == PlannerConfig::Planner::est;
  if (est) grid.add_node(0, result.tree.node(0).state);

  QueryContext ctx{result.tree, est ? &grid : nullptr, clock, scene, config};

  const auto finish = [&](QueryResult::Status status, std::vector<int> solution) {
    result.status = status;
    result.solution = std::move(solution);
    result.stats.plan_time = clock.seconds();
    result.stats.segment_time = clock.segmentation_seconds();
    result.stats.work_units = clock.total_units();
    return result;
  };

  if (goal_reached(scene, result.tree.node(0).state)) {
    return finish(QueryResult::Status::solved, {0});
  }

  const std::uint64_t budget = WorkClock::units_for_seconds(config.max_time);

  while (result.stats.iterations < config.max_iterations && clock.total_units() < budget) {
    ++result.stats.iterations;
    clock.charge(work::kIteration);

    SampleResult sample;
    if (est) {
      sample.x_rand = sample_compound(scene, config, rng);
      sample.x_near = select_est(result.tree, grid, rng, &clock);
    } else {
      sample = sample_rrt(result.tree, scene, config, rng, &clock);
    }

    ExtendResult ext =
        multi_agent_extend(result.tree, sample.x_near, sample.x_rand, rng, scene, config, &clock);
    if (!is_valid(ext.edge, scene, &clock)) continue;

    EdgePaths paths = project_edge(ext.edge);
    CandidateDecision decision;
    if (callbacks.on_candidate) {
      decision = callbacks.on_candidate(ctx, sample.x_near, ext.edge, paths);
    }
    if (!decision.accept) continue;

    const int id = result.tree.add_node(sample.x_near, std::move(ext.x_new), std::move(ext.edge),
                                        std::move(paths), decision.cost, decision.atomic_branch);
    ++result.stats.states_added;
    if (est) grid.add_node(id, result.tree.node(id).state);

    if (goal_reached(scene, result.tree.node(id).state)) {
      GoalAction action = GoalAction::stop_solved;
      if (callbacks.on_goal) action = callbacks.on_goal(ctx, id);
      if (action == GoalAction::stop_solved) {
        return finish(QueryResult::Status::solved, result.tree.path_from_root(id));
      }
      if (action == GoalAction::stop_atomic) {
        return finish(QueryResult::Status::atomic_conflict, result.tree.path_from_root(id));
      }
    }
  }
  return finish(QueryResult::Status::timeout, {});
}

QueryResult plan_baseline(const Scene& scene, const PlannerConfig& config, Rng& rng) {
  return run_query(scene, config, rng, QueryCallbacks{});
}

}  // namespace mapsx

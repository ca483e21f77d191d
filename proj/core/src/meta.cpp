#include "mapsx/meta.hpp"

#include <algorithm>
#include <limits>

namespace mapsx {

namespace {

SegmentationResult trivial_segmentation(double makespan) {
  SegmentationResult seg;
  seg.count = 1;
  seg.boundaries = {0};
  seg.times = {makespan};
  return seg;
}

// Boundary times recomputed from node arrival times, so they coincide
// bitwise with trajectory sample times.
void rebase_times(SegmentationResult& seg, const Tree& tree, std::span<const int> path) {
  for (std::size_t i = 0; i < seg.boundaries.size(); ++i) {
    seg.times[i] = tree.node(path[static_cast<std::size_t>(seg.boundaries[i])]).arrival_time;
  }
}

ExplainablePlan build_plan(const Scene& scene, const PlannerConfig& config, const QueryResult& qr,
                           SegmentationResult seg, bool verified) {
  ExplainablePlan plan;
  plan.segmentation = std::move(seg);
  plan.segmentation_verified = verified;
  plan.r_used = config.segment_bound;
  plan.planner = config.planner;
  plan.mode = config.mode;
  plan.dt = config.dt;
  plan.seed = config.seed;
  plan.stats = qr.stats;
  plan.solution_nodes = qr.solution;

  const std::size_t k = scene.agents.size();
  plan.agent_names.reserve(k);
  for (const auto& a : scene.agents) {
    plan.agent_names.push_back(a.name);
    plan.state_dims.push_back(a.model.state_dim());
  }

  plan.trajectories.assign(k, {});
  const auto& path = qr.solution;
  if (path.empty()) return plan;

  for (std::size_t i = 0; i < k; ++i) {
    auto& traj = plan.trajectories[i];
    traj.push_back({0.0, qr.tree.node(path[0]).state.agents[i]});
    int step = 0;
    for (std::size_t p = 1; p < path.size(); ++p) {
      const Edge& edge = qr.tree.node(path[p]).incoming;
      const auto& states = edge.motions[i].states;
      for (int s = 1; s <= edge.steps; ++s) {
        ++step;
        traj.push_back({step * config.dt, states[static_cast<std::size_t>(s)]});
      }
    }
  }
  return plan;
}

PlanOutcome make_outcome(const Scene& scene, const PlannerConfig& config, QueryResult qr,
                         std::optional<SegmentationResult> seg, bool verified) {
  PlanOutcome out;
  out.stats = qr.stats;
  switch (qr.status) {
    case QueryResult::Status::solved:
      out.status = PlanOutcome::Status::solved;
      break;
    case QueryResult::Status::timeout:
      out.status = PlanOutcome::Status::timeout;
      break;
    case QueryResult::Status::atomic_conflict:
      out.status = PlanOutcome::Status::atomic_conflict;
      break;
  }
  if (out.status == PlanOutcome::Status::solved) {
    if (!seg) {
      // Immediate root solutions (and baseline) carry a trivial segment.
      const double makespan = qr.solution.empty() ? 0.0 : qr.tree.node(qr.solution.back()).arrival_time;
      seg = trivial_segmentation(makespan);
    }
    out.plan = build_plan(scene, config, qr, std::move(*seg), verified);
  }
  out.tree = std::move(qr.tree);
  return out;
}

}  // namespace

PruneReport prune_sol(Tree& tree, std::span<const int> path, int r, double clearance,
                      DensityGrid* grid, WorkClock* clock) {
  PruneReport report;
  const auto edges = collect_path_edges(tree, path);
  const auto outcome = segment_sol(edges, clearance, clock);

  // Deepest path node whose prefix is explainable within r segments. Greedy
  // labels are prefix-minimal, so this is the last edge with label <= r.
  std::size_t keep = 0;  // node index within the path
  const std::size_t labelled = outcome.atomic ? outcome.atomic_edge : outcome.edge_labels.size();
  for (std::size_t e = 0; e < labelled; ++e) {
    if (outcome.edge_labels[e] <= r) keep = e + 1;
    else break;
  }
  report.retained_prefix = static_cast<int>(keep) + 1;
  if (keep + 1 >= path.size()) return report;  // nothing to prune

  const int first_removed = path[keep + 1];
  report.removed_nodes = tree.remove_subtrees(
      {first_removed}, [&](const TreeNode& n) {
        if (grid) grid->remove_node(n.id);
      });
  return report;
}

PlanOutcome plan_post(const Scene& scene, const PlannerConfig& config, Rng& rng) {
  std::optional<SegmentationResult> seg;
  QueryCallbacks callbacks;
  callbacks.on_goal = [&](QueryContext& ctx, int goal_node) {
    const auto path = ctx.tree.path_from_root(goal_node);
    auto outcome = segment_sol(collect_path_edges(ctx.tree, path), ctx.config.clearance, &ctx.clock);
    if (outcome.atomic) return GoalAction::stop_atomic;
    rebase_times(outcome.result, ctx.tree, path);
    seg = std::move(outcome.result);
    return GoalAction::stop_solved;
  };
  QueryResult qr = run_query(scene, config, rng, callbacks);
  return make_outcome(scene, config, std::move(qr), std::move(seg), true);
}

PlanOutcome plan_lazy(const Scene& scene, const PlannerConfig& config, Rng& rng) {
  const int bound = config.segment_bound.value_or(std::numeric_limits<int>::max());
  std::optional<SegmentationResult> seg;
  QueryCallbacks callbacks;
  callbacks.on_goal = [&](QueryContext& ctx, int goal_node) {
    const auto path = ctx.tree.path_from_root(goal_node);
    auto outcome = segment_sol(collect_path_edges(ctx.tree, path), ctx.config.clearance, &ctx.clock);
    if (!outcome.atomic && outcome.result.count <= bound) {
      rebase_times(outcome.result, ctx.tree, path);
      seg = std::move(outcome.result);
      return GoalAction::stop_solved;
    }
    prune_sol(ctx.tree, path, bound, ctx.config.clearance, ctx.grid, &ctx.clock);
    return GoalAction::keep_planning;
  };
  QueryResult qr = run_query(scene, config, rng, callbacks);
  return make_outcome(scene, config, std::move(qr), std::move(seg), true);
}

PlanOutcome plan_maps(const Scene& scene, const PlannerConfig& config, Rng& rng) {
  QueryCallbacks callbacks;
  callbacks.on_candidate = [&](QueryContext& ctx, int parent, const Edge&,
                               const EdgePaths& paths) {
    const CostResult cr = find_total_cost(ctx.tree, parent, paths, ctx.config.clearance, &ctx.clock);
    CandidateDecision d;
    d.cost = cr.cost;
    d.atomic_branch = cr.atomic || ctx.tree.node(parent).atomic_branch;
    if (ctx.config.segment_bound && (d.atomic_branch || d.cost > *ctx.config.segment_bound)) {
      d.accept = false;
    }
    return d;
  };
  std::optional<SegmentationResult> seg;
  callbacks.on_goal = [&](QueryContext& ctx, int goal_node) {
    if (ctx.tree.node(goal_node).atomic_branch) return GoalAction::stop_atomic;
    const auto path = ctx.tree.path_from_root(goal_node);
    seg = segmentation_from_costs(ctx.tree, path);
    return GoalAction::stop_solved;
  };
  QueryResult qr = run_query(scene, config, rng, callbacks);
  return make_outcome(scene, config, std::move(qr), std::move(seg), true);
}

PlanOutcome plan_anytime(const Scene& scene, const PlannerConfig& config) {
  PlanOutcome best;
  best.status = PlanOutcome::Status::timeout;
  PlanStats totals;

  double remaining = config.max_time;
  std::optional<int> r = config.segment_bound;
  std::uint64_t attempt = 0;

  while (remaining > 0.0) {
    PlannerConfig cfg = config;
    cfg.mode = PlannerConfig::Mode::maps;
    cfg.segment_bound = r;
    cfg.seed = config.seed + attempt;
    cfg.max_time = remaining;
    Rng rng(cfg.seed);

    PlanOutcome outcome = plan_maps(scene, cfg, rng);
    totals.plan_time += outcome.stats.plan_time;
    totals.segment_time += outcome.stats.segment_time;
    totals.states_added += outcome.stats.states_added;
    totals.iterations += outcome.stats.iterations;
    totals.work_units += outcome.stats.work_units;
    remaining -= outcome.stats.plan_time;
    ++attempt;

    if (outcome.status == PlanOutcome::Status::solved) {
      const int s = outcome.plan->segmentation.count;
      outcome.plan->mode = PlannerConfig::Mode::anytime;
      outcome.plan->seed = config.seed;
      best = std::move(outcome);
      if (s <= 1) break;
      r = s - 1;
    } else if (outcome.status == PlanOutcome::Status::atomic_conflict) {
      continue;  // reseed and retry at the same bound
    } else if (outcome.stats.iterations >= config.max_iterations && remaining > 0.0) {
      continue;  // iteration-capped, time left: try the next seed
    } else {
      break;  // budget exhausted
    }
  }
  best.stats = totals;
  if (best.plan) best.plan->stats = totals;
  return best;
}

PlanOutcome plan_run(const Scene& scene, const PlannerConfig& config) {
  Rng rng(config.seed);
  switch (config.mode) {
    case PlannerConfig::Mode::baseline: {
      QueryResult qr = plan_baseline(scene, config, rng);
      return make_outcome(scene, config, std::move(qr), std::nullopt, false);
    }
    case PlannerConfig::Mode::post:
      return plan_post(scene, config, rng);
    case PlannerConfig::Mode::lazy:
      return plan_lazy(scene, config, rng);
    case PlannerConfig::Mode::maps:
      return plan_maps(scene, config, rng);
    case PlannerConfig::Mode::anytime:
      return plan_anytime(scene, config);
  }
  return {};
}

}  // namespace mapsx

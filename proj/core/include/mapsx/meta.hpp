#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapsx/planner.hpp"
#include "mapsx/segmentation.hpp"

namespace mapsx {

struct TimedState {
  double t = 0.0;
  AgentState state;
};

// A solved query: per-agent timed trajectories at dt resolution plus the
// disjoint segmentation that explains them.
struct ExplainablePlan {
  std::vector<std::string> agent_names;
  std::vector<int> state_dims;  // per agent
  std::vector<std::vector<TimedState>> trajectories;
  SegmentationResult segmentation;
  // False only for baseline plans, whose single "segment" is unchecked.
  bool segmentation_verified = true;
  std::optional<int> r_used;
  PlannerConfig::Planner planner = PlannerConfig::Planner::rrt;
  PlannerConfig::Mode mode = PlannerConfig::Mode::post;
  double dt = 0.1;
  std::uint64_t seed = 0;
  PlanStats stats;
  std::vector<int> solution_nodes;  // node ids of the solution path

  double makespan() const {
    return trajectories.empty() || trajectories[0].empty() ? 0.0 : trajectories[0].back().t;
  }
};

struct PlanOutcome {
  enum class Status { solved, timeout, atomic_conflict };
  Status status = Status::timeout;
  std::optional<ExplainablePlan> plan;
  Tree tree{CompoundState{}};
  PlanStats stats;
};

struct PruneReport {
  int removed_nodes = 0;
  int retained_prefix = 0;  // nodes of the path kept (root included)
};

// Removes the path suffix past the deepest node explainable within r
// segments, together with every descendant subtree of the removed path
// nodes. The density grid, when given, is patched accordingly.
PruneReport prune_sol(Tree& tree, std::span<const int> path, int r, double clearance,
                      DensityGrid* grid, WorkClock* clock);

// Planner X followed by one minimal segmentation; r is not enforced.
PlanOutcome plan_post(const Scene& scene, const PlannerConfig& config, Rng& rng);

// Segment candidate solutions only; prune unsatisfiable ones and continue.
PlanOutcome plan_lazy(const Scene& scene, const PlannerConfig& config, Rng& rng);

// Track per-node segment costs during growth and reject nodes over the
// bound; the final segmentation is read off the stored costs.
PlanOutcome plan_maps(const Scene& scene, const PlannerConfig& config, Rng& rng);

// Repeatedly run plan_maps, lowering the bound below each found count until
// a single segment is reached or the budget runs out; returns the best plan.
// Attempt j seeds its own generator with config.seed + j.
PlanOutcome plan_anytime(const Scene& scene, const PlannerConfig& config);

// Dispatch on config.mode (baseline runs the plain loop; its plan carries an
// unchecked single segment).
PlanOutcome plan_run(const Scene& scene, const PlannerConfig& config);

}  // namespace mapsx

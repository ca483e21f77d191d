#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "mapsx/rng.hpp"
#include "mapsx/scene.hpp"
#include "mapsx/tree.hpp"
#include "mapsx/workclock.hpp"

namespace mapsx {

// Occupancy grid over per-agent projected positions; drives EST selection.
// A node's signature combines the grid cells of all agents; occupancy is the
// number of inserted nodes sharing that signature.
class DensityGrid {
 public:
  DensityGrid() = default;
  DensityGrid(const Aabb& workspace, std::size_t agent_count, int cells_per_axis = 20);

  std::uint64_t signature(const CompoundState& s) const;

  void add_node(int node_id, const CompoundState& s);
  void remove_node(int node_id);

  int occupancy_of(int node_id) const;
  int occupancy(std::uint64_t sig) const;

 private:
  Aabb workspace_{};
  int cells_ = 20;
  std::unordered_map<std::uint64_t, int> counts_;
  std::unordered_map<int, std::uint64_t> sig_by_node_;
};

struct SampleResult {
  CompoundState x_rand;
  int x_near = 0;
};

struct ExtendResult {
  Edge edge;
  CompoundState x_new;
};

// Uniform compound sample; with probability goal_bias the positions are drawn
// from the goal regions instead (headings/velocities stay uniform).
CompoundState sample_compound(const Scene& scene, const PlannerConfig& config, Rng& rng);

// Linear scan over live nodes for the node minimising the summed per-agent
// state distance; ties resolve to the lowest id.
int nearest_node(const Tree& tree, const Scene& scene, const CompoundState& q, WorkClock* clock);

// RRT sampling: goal-biased uniform state plus its nearest live node.
SampleResult sample_rrt(const Tree& tree, const Scene& scene, const PlannerConfig& config,
                        Rng& rng, WorkClock* clock);

// EST selection: node drawn with probability proportional to
// 1 / occupancy(its cell signature).
int select_est(const Tree& tree, const DensityGrid& grid, Rng& rng, WorkClock* clock);

// Shared-duration extension. Agents outside their goal draw `candidates`
// controls and keep the one ending nearest to their component of x_rand;
// agents inside hold (zero control, or maximal braking for second-order
// models still in motion).
ExtendResult multi_agent_extend(const Tree& tree, int from, const CompoundState& x_rand, Rng& rng,
                                const Scene& scene, const PlannerConfig& config, WorkClock* clock);

// Validity of every edge sample: agent discs avoid obstacles, stay inside the
// workspace, velocities within bounds, pairwise distance > r_i + r_j.
bool is_valid(const Edge& edge, const Scene& scene, WorkClock* clock);

bool agent_in_goal(const AgentSpec& agent, const AgentState& s);
bool goal_reached(const Scene& scene, const CompoundState& s);

struct PlanStats {
  double plan_time = 0.0;     // modeled seconds (work units x scale)
  double segment_time = 0.0;  // modeled seconds in disjointness computations
  std::uint64_t states_added = 0;
  std::uint64_t iterations = 0;
  std::uint64_t work_units = 0;
};

struct QueryResult {
  enum class Status { solved, timeout, atomic_conflict };
  Status status = Status::timeout;
  std::vector<int> solution;  // root..goal ids when status != timeout
  Tree tree{CompoundState{}};
  PlanStats stats;
};

// Mode-specific behaviour plugged into the shared query loop.
struct CandidateDecision {
  bool accept = true;
  int cost = 1;
  bool atomic_branch = false;
};

enum class GoalAction { stop_solved, stop_atomic, keep_planning };

struct QueryContext {
  Tree& tree;
  DensityGrid* grid;  // non-null for EST queries
  WorkClock& clock;
  const Scene& scene;
  const PlannerConfig& config;
};

struct QueryCallbacks {
  // Invoked after is_valid, before insertion. Default accepts with cost 1.
  std::function<CandidateDecision(QueryContext&, int parent, const Edge&, const EdgePaths&)>
      on_candidate;
  // Invoked when an inserted node reaches the goal. Default stops, solved.
  std::function<GoalAction(QueryContext&, int goal_node)> on_goal;
};

// The planning loop shared by every mode: sample, extend, validate, insert,
// goal test, until solved or the iteration/time budget runs out.
QueryResult run_query(const Scene& scene, const PlannerConfig& config, Rng& rng,
                      const QueryCallbacks& callbacks);

// The loop with default callbacks: no segment bookkeeping, first goal wins.
QueryResult plan_baseline(const Scene& scene, const PlannerConfig& config, Rng& rng);

}  // namespace mapsx

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mapsx/dynamics.hpp"
#include "mapsx/geometry.hpp"

namespace mapsx {

// Joint state of all agents, one entry per agent.
struct CompoundState {
  std::vector<AgentState> agents;
};

// One propagated tree edge: per-agent motions sharing duration and sample
// times. Agents held at goal carry constant-position motions.
struct Edge {
  std::vector<SampledMotion> motions;
  double duration = 0.0;
  int steps = 0;
};

// Workspace projection of an edge, one polyline per agent; the unit of all
// disjointness checks.
struct EdgePaths {
  std::vector<Polyline2> agent_paths;
  double duration = 0.0;
};

EdgePaths project_edge(const Edge& edge);

struct TreeNode {
  int id = 0;
  int parent = -1;  // -1 for the root
  CompoundState state;
  Edge incoming;      // empty for the root
  EdgePaths paths;    // cached projection of `incoming`
  int cost = 1;       // segments needed to explain root->node (MAPS bookkeeping)
  bool atomic_branch = false;  // some edge on root->node conflicts by itself
  int arrival_steps = 0;       // dt steps from the root
  double arrival_time = 0.0;   // arrival_steps * dt, so sample times align exactly
  bool live = true;
  std::vector<int> children;
};

// Append-only node store with soft removal. Node ids are dense and stable;
// pruned nodes stay in place but are skipped by iteration and selection.
class Tree {
 public:
  explicit Tree(CompoundState root_state, double dt = 0.1);

  int add_node(int parent, CompoundState state, Edge edge, EdgePaths paths, int cost,
               bool atomic_branch);

  const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t live_count() const { return live_; }

  // Root-first list of node ids ending at `id`.
  std::vector<int> path_from_root(int id) const;

  // Marks each listed node and its whole subtree as removed; `on_remove` is
  // invoked once per removed node (density-grid patch-up).
  int remove_subtrees(const std::vector<int>& roots,
                      const std::function<void(const TreeNode&)>& on_remove);

  template <typename F>
  void for_each_live(F&& f) const {
    for (const auto& n : nodes_) {
      if (n.live) f(n);
    }
  }

  double dt() const { return dt_; }

 private:
  std::vector<TreeNode> nodes_;
  std::size_t live_ = 0;
  double dt_ = 0.1;
};

}  // namespace mapsx

#include "mapsx/tree.hpp"

#include <algorithm>

namespace mapsx {

EdgePaths project_edge(const Edge& edge) {
  EdgePaths paths;
  paths.duration = edge.duration;
  paths.agent_paths.reserve(edge.motions.size());
  for (const auto& motion : edge.motions) {
    Polyline2 pl;
    pl.points.reserve(motion.states.size());
    for (const auto& s : motion.states) pl.points.push_back(project_w(s));
    paths.agent_paths.push_back(std::move(pl));
  }
  return paths;
}

Tree::Tree(CompoundState root_state, double dt) : dt_(dt) {
  TreeNode root;
  root.id = 0;
  root.parent = -1;
  root.state = std::move(root_state);
  root.cost = 1;
  nodes_.push_back(std::move(root));
  live_ = 1;
}

int Tree::add_node(int parent, CompoundState state, Edge edge, EdgePaths paths, int cost,
                   bool atomic_branch) {
  TreeNode n;
  n.id = static_cast<int>(nodes_.size());
  n.parent = parent;
  n.state = std::move(state);
  n.paths = std::move(paths);
  n.incoming = std::move(edge);
  n.cost = cost;
  n.atomic_branch = atomic_branch;
  n.arrival_steps = nodes_[static_cast<std::size_t>(parent)].arrival_steps + n.incoming.steps;
  n.arrival_time = n.arrival_steps * dt_;
  nodes_[static_cast<std::size_t>(parent)].children.push_back(n.id);
  nodes_.push_back(std::move(n));
  ++live_;
  return static_cast<int>(nodes_.size()) - 1;
}

std::vector<int> Tree::path_from_root(int id) const {
  std::vector<int> path;
  for (int v = id; v != -1; v = nodes_[static_cast<std::size_t>(v)].parent) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

int Tree::remove_subtrees(const std::vector<int>& roots,
                          const std::function<void(const TreeNode&)>& on_remove) {
  int removed = 0;
  std::vector<int> stack(roots);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    TreeNode& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.live) continue;
    n.live = false;
    --live_;
    ++removed;
    if (on_remove) on_remove(n);
    for (int c : n.children) stack.push_back(c);
  }
  return removed;
}

}  // namespace mapsx

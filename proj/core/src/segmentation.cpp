#include "mapsx/segmentation.hpp"

#include <algorithm>
#include <limits>

namespace mapsx {

namespace {

// Appends `edge`'s points for one agent, skipping a duplicated junction.
void append_polyline(Polyline2& acc, const Polyline2& edge) {
  for (std::size_t i = 0; i < edge.points.size(); ++i) {
    if (!acc.points.empty() && i == 0) {
      const Point2 last = acc.points.back();
      if (last.x == edge.points[0].x && last.y == edge.points[0].y) continue;
    }
    acc.points.push_back(edge.points[i]);
  }
}

bool conflict_counted(const Polyline2& p, const Polyline2& q, double clearance, WorkClock* clock) {
  std::uint64_t pairs = 0;
  const bool hit = polylines_conflict(p, q, clearance, &pairs);
  if (clock) clock->charge_segmentation(work::kSegmentPair * pairs);
  return hit;
}

// Cross-agent conflicts within a single edge.
bool edge_self_conflict(const EdgePaths& edge, double clearance, WorkClock* clock) {
  const std::size_t k = edge.agent_paths.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (conflict_counted(edge.agent_paths[i], edge.agent_paths[j], clearance, clock)) return true;
    }
  }
  return false;
}

// Conflicts introduced by appending `edge` to per-agent accumulated paths
// that are already pairwise disjoint.
bool edge_conflicts_with_run(const std::vector<Polyline2>& acc, const EdgePaths& edge,
                             double clearance, WorkClock* clock) {
  const std::size_t k = edge.agent_paths.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (acc[j].points.empty()) continue;
      if (conflict_counted(edge.agent_paths[i], acc[j], clearance, clock)) return true;
    }
  }
  return edge_self_conflict(edge, clearance, clock);
}

}  // namespace

int SegmentationResult::segment_of_edge(std::size_t e) const {
  const int node = static_cast<int>(e) + 1;  // edge e ends at node e+1
  for (std::size_t s = 0; s < boundaries.size(); ++s) {
    if (node <= boundaries[s]) return static_cast<int>(s) + 1;
  }
  return count;
}

bool run_disjoint(std::span<const EdgePaths> run, double clearance, WorkClock* clock) {
  if (run.empty()) return true;
  const std::size_t k = run.front().agent_paths.size();
  if (k < 2) return true;

  std::vector<Polyline2> concat(k);
  for (const auto& edge : run) {
    for (std::size_t i = 0; i < k; ++i) append_polyline(concat[i], edge.agent_paths[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (conflict_counted(concat[i], concat[j], clearance, clock)) return false;
    }
  }
  return true;
}

SegmentationOutcome segment_sol(std::span<const EdgePaths> edges, double clearance,
                                WorkClock* clock) {
  SegmentationOutcome out;
  if (edges.empty()) {
    out.result.count = 1;
    out.result.boundaries = {0};
    out.result.times = {0.0};
    return out;
  }

  const std::size_t k = edges.front().agent_paths.size();
  std::vector<Polyline2> acc(k);
  int segment = 1;
  double t = 0.0;

  out.edge_labels.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const EdgePaths& edge = edges[e];
    if (edge_conflicts_with_run(acc, edge, clearance, clock)) {
      // Close the current segment before this edge.
      if (edge_self_conflict(edge, clearance, clock)) {
        out.atomic = true;
        out.atomic_edge = e;
        return out;
      }
      out.result.boundaries.push_back(static_cast<int>(e));
      out.result.times.push_back(t);
      ++segment;
      for (auto& a : acc) a.points.clear();
      for (std::size_t i = 0; i < k; ++i) append_polyline(acc[i], edge.agent_paths[i]);
    } else {
      for (std::size_t i = 0; i < k; ++i) append_polyline(acc[i], edge.agent_paths[i]);
    }
    t += edge.duration;
    out.edge_labels.push_back(segment);
  }

  out.result.boundaries.push_back(static_cast<int>(edges.size()));
  out.result.times.push_back(t);
  out.result.count = segment;
  return out;
}

OracleOutcome min_segments_oracle(std::span<const EdgePaths> edges, double clearance) {
  OracleOutcome out;
  const std::size_t n = edges.size();
  if (n == 0) {
    out.count = 1;
    return out;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (!run_disjoint(edges.subspan(e, 1), clearance)) {
      out.atomic = true;
      out.atomic_edge = e;
      return out;
    }
  }

  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(n + 1, kInf);
  best[0] = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (best[j] == kInf) continue;
      if (run_disjoint(edges.subspan(j, i - j), clearance)) {
        best[i] = std::min(best[i], best[j] + 1);
      }
    }
  }
  out.count = best[n];
  return out;
}

CostResult find_total_cost(const Tree& tree, int parent, const EdgePaths& candidate,
                           double clearance, WorkClock* clock) {
  CostResult out;
  if (edge_self_conflict(candidate, clearance, clock)) {
    out.atomic = true;
    out.cost = tree.node(parent).cost + 1;
    return out;
  }

  const int parent_cost = tree.node(parent).cost;
  const std::size_t k = candidate.agent_paths.size();

  // Current segment: maximal ancestor run ending at parent with parent's cost.
  std::vector<const EdgePaths*> run;
  for (int v = parent; v != 0 && tree.node(v).cost == parent_cost; v = tree.node(v).parent) {
    run.push_back(&tree.node(v).paths);
  }

  bool conflict = false;
  for (const EdgePaths* edge : run) {
    for (std::size_t i = 0; i < k && !conflict; ++i) {
      for (std::size_t j = 0; j < k && !conflict; ++j) {
        if (i == j) continue;
        if (conflict_counted(candidate.agent_paths[i], edge->agent_paths[j], clearance, clock)) {
          conflict = true;
        }
      }
    }
    if (conflict) break;
  }
  out.cost = conflict ? parent_cost + 1 : parent_cost;
  return out;
}

std::vector<EdgePaths> collect_path_edges(const Tree& tree, std::span<const int> path) {
  std::vector<EdgePaths> edges;
  edges.reserve(path.size() > 0 ? path.size() - 1 : 0);
  for (std::size_t i = 1; i < path.size(); ++i) edges.push_back(tree.node(path[i]).paths);
  return edges;
}

std::vector<double> collect_arrival_times(const Tree& tree, std::span<const int> path) {
  std::vector<double> times;
  times.reserve(path.size());
  for (int id : path) times.push_back(tree.node(id).arrival_time);
  return times;
}

SegmentationResult segmentation_from_costs(const Tree& tree, std::span<const int> path) {
  SegmentationResult seg;
  if (path.size() <= 1) {
    seg.count = 1;
    seg.boundaries = {0};
    seg.times = {path.empty() ? 0.0 : tree.node(path[0]).arrival_time};
    return seg;
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (tree.node(path[i + 1]).cost > tree.node(path[i]).cost) {
      seg.boundaries.push_back(static_cast<int>(i));
      seg.times.push_back(tree.node(path[i]).arrival_time);
    }
  }
  seg.boundaries.push_back(static_cast<int>(path.size()) - 1);
  seg.times.push_back(tree.node(path.back()).arrival_time);
  seg.count = tree.node(path.back()).cost;
  return seg;
}

}  // namespace mapsx

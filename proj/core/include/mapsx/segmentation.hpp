#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapsx/tree.hpp"
#include "mapsx/workclock.hpp"

namespace mapsx {

// Segmentation of a root->goal path with m edges (nodes 0..m). Boundaries are
// node indices ending each segment; the last boundary is always node m.
struct SegmentationResult {
  std::vector<int> boundaries;
  std::vector<double> times;  // arrival times of the boundary nodes
  int count = 0;              // s

  // Segment index (1..count) containing edge `e` (0-based).
  int segment_of_edge(std::size_t e) const;
};

struct SegmentationOutcome {
  bool atomic = false;          // a single edge conflicts by itself
  std::size_t atomic_edge = 0;  // 0-based index of that edge
  SegmentationResult result;
  std::vector<int> edge_labels;  // greedy segment number per edge (prefix counts)
};

// True iff, over the whole run, every agent pair's concatenated projected
// paths stay farther apart than `clearance` (paths as curves: the check is
// over all pairs of times, not synchronized positions).
bool run_disjoint(std::span<const EdgePaths> run, double clearance, WorkClock* clock = nullptr);

// Greedy left-to-right minimal segmentation: extend the current segment edge
// by edge; when an edge would make it non-disjoint, close the segment before
// that edge and start a new one there. Minimal among node-aligned
// segmentations. An edgeless path yields a single trivial segment.
SegmentationOutcome segment_sol(std::span<const EdgePaths> edges, double clearance,
                                WorkClock* clock = nullptr);

// Independent dynamic program over the same path: best[i] = min over j < i
// with run (j..i] disjoint of best[j] + 1. Used as the oracle for the greedy
// result. Returns the count; `atomic`/`atomic_edge` mirror segment_sol.
struct OracleOutcome {
  bool atomic = false;
  std::size_t atomic_edge = 0;
  int count = 0;
};
OracleOutcome min_segments_oracle(std::span<const EdgePaths> edges, double clearance);

// Incremental per-node cost: the run of ancestors ending at `parent` whose
// cost equals parent's is the current segment; if it stays disjoint after
// adding the candidate edge, the candidate costs parent.cost, else
// parent.cost + 1. `atomic` marks a candidate that conflicts by itself.
struct CostResult {
  int cost = 0;
  bool atomic = false;
};
CostResult find_total_cost(const Tree& tree, int parent, const EdgePaths& candidate,
                           double clearance, WorkClock* clock = nullptr);

// Segmentation helpers over tree paths.
std::vector<EdgePaths> collect_path_edges(const Tree& tree, std::span<const int> path);
std::vector<double> collect_arrival_times(const Tree& tree, std::span<const int> path);

// Reads the segmentation directly off stored node costs (MAPS bookkeeping);
// no disjointness work is done.
SegmentationResult segmentation_from_costs(const Tree& tree, std::span<const int> path);

}  // namespace mapsx

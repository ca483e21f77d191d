#pragma once

#include <vector>

#include "mapsx/rng.hpp"
#include "mapsx/tree.hpp"

namespace mapsx {

// Synthetic root->goal path for segmentation tests, independent of the
// planner. Each agent walks rightward inside its own horizontal lane;
// `crossing_density` in [0, 1] scales vertical wandering across lanes:
// 0 keeps every agent strictly inside its lane (no conflicts possible),
// higher values make path crossings increasingly frequent.
std::vector<EdgePaths> fixture_random_path(Rng& rng, int n_nodes, int k_agents,
                                           double crossing_density);

}  // namespace mapsx

#include "mapsx/fixtures.hpp"

namespace mapsx {

std::vector<EdgePaths> fixture_random_path(Rng& rng, int n_nodes, int k_agents,
                                           double crossing_density) {
  const int n_edges = n_nodes > 1 ? n_nodes - 1 : 0;
  const double amplitude = 0.45 + crossing_density * 1.5 * k_agents;

  std::vector<double> xs(static_cast<std::size_t>(k_agents), 0.0);
  std::vector<double> lane(static_cast<std::size_t>(k_agents));
  for (int i = 0; i < k_agents; ++i) lane[static_cast<std::size_t>(i)] = 2.0 * i + 0.5;

  std::vector<Point2> current(static_cast<std::size_t>(k_agents));
  for (int i = 0; i < k_agents; ++i) {
    current[static_cast<std::size_t>(i)] = {0.0, lane[static_cast<std::size_t>(i)]};
  }

  std::vector<EdgePaths> edges;
  edges.reserve(static_cast<std::size_t>(n_edges));
  for (int e = 0; e < n_edges; ++e) {
    EdgePaths edge;
    edge.duration = 1.0;
    edge.agent_paths.resize(static_cast<std::size_t>(k_agents));
    for (int i = 0; i < k_agents; ++i) {
      auto& pl = edge.agent_paths[static_cast<std::size_t>(i)];
      pl.points.push_back(current[static_cast<std::size_t>(i)]);
      for (int sub = 0; sub < 3; ++sub) {
        xs[static_cast<std::size_t>(i)] += rng.uniform(0.2, 0.6);
        const double y = lane[static_cast<std::size_t>(i)] + rng.uniform(-amplitude, amplitude);
        pl.points.push_back({xs[static_cast<std::size_t>(i)], y});
      }
      current[static_cast<std::size_t>(i)] = pl.points.back();
    }
    edges.push_back(std::move(edge));
  }
  return edges;
}

}  // namespace mapsx

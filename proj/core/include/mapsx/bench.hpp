#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapsx/meta.hpp"
#include "mapsx/scene.hpp"

namespace mapsx {

// One benchmark sweep: `runs` seeded queries per r value. Run i uses seed
// base_seed + i; runs are independent and may execute in parallel without
// changing any result (all reported times are modeled, see workclock.hpp).
struct BenchSpec {
  std::string scene_label;
  PlannerConfig::Planner planner = PlannerConfig::Planner::rrt;
  PlannerConfig::Mode mode = PlannerConfig::Mode::maps;
  std::vector<std::optional<int>> r_values = {std::nullopt};
  int runs = 1;
  double time_cap = 30.0;  // modeled seconds per run
  std::uint64_t base_seed = 0;
  PlannerConfig base;  // dt, goal bias, candidates, clearance, ...
  int threads = 0;     // 0 = hardware concurrency
};

struct BenchRecord {
  std::string scene;
  std::string planner;
  std::string mode;
  std::string dynamics;
  int agents = 0;
  std::string r;  // decimal integer or "inf"
  int runs = 0;
  double solved_pct = 0.0;
  double runtime_mean = 0.0, runtime_std = 0.0;  // all runs; failures count the cap
  double runtime_success_mean = 0.0, runtime_success_std = 0.0;  // NaN when no successes
  double cost_mean = 0.0, cost_std = 0.0;  // segment counts of successes; NaN when none
  double segment_time_mean = 0.0, segment_time_std = 0.0;
  double states_per_sec_mean = 0.0, states_per_sec_std = 0.0;
};

std::vector<BenchRecord> run_bench(const BenchSpec& spec, const Scene& scene);

// Header row in BenchRecord field order; floats at 4 significant digits.
std::string write_csv(std::span<const BenchRecord> records);

}  // namespace mapsx

#pragma once

#include <cstdint>

namespace mapsx {

// Deterministic planning clock. Planning budgets and every reported runtime
// are derived from counted work units instead of wall time, so a query is a
// pure function of (scene, config, seed): identical inputs give identical
// trees, solutions, and benchmark records, including timeout runs.
//
// Unit charges approximate the relative real cost of each primitive; the
// global scale below converts units to nominal seconds.
namespace work {

inline constexpr std::uint64_t kIteration = 120;      // per planner iteration
inline constexpr std::uint64_t kRk4Substep = 40;      // per agent per dt step
inline constexpr std::uint64_t kDistanceEval = 12;    // per agent, NN scan
inline constexpr std::uint64_t kEstWeight = 4;        // per node, EST selection
inline constexpr std::uint64_t kSegmentPair = 30;     // per segment pair tested
inline constexpr std::uint64_t kObstacleCheck = 12;   // per obstacle per sample
inline constexpr std::uint64_t kSampleCheck = 8;      // workspace/pair per sample

}  // namespace work

// Nominal seconds per work unit.
inline constexpr double kSecondsPerWorkUnit = 25e-9;

class WorkClock {
 public:
  void charge(std::uint64_t units) { total_ += units; }

  // Work spent in disjointness / segmentation computations; counted in the
  // total as well.
  void charge_segmentation(std::uint64_t units) {
    total_ += units;
    segmentation_ += units;
  }

  std::uint64_t total_units() const { return total_; }
  std::uint64_t segmentation_units() const { return segmentation_; }

  double seconds() const { return static_cast<double>(total_) * kSecondsPerWorkUnit; }
  double segmentation_seconds() const {
    return static_cast<double>(segmentation_) * kSecondsPerWorkUnit;
  }

  static std::uint64_t units_for_seconds(double seconds) {
    if (seconds <= 0.0) return 0;
    return static_cast<std::uint64_t>(seconds / kSecondsPerWorkUnit);
  }

 private:
  std::uint64_t total_ = 0;
  std::uint64_t segmentation_ = 0;
};

}  // namespace mapsx

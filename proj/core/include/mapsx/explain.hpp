#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapsx/meta.hpp"
#include "mapsx/scene.hpp"

namespace mapsx {

class PlanFormatError : public std::runtime_error {
 public:
  explicit PlanFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Self-contained, render-ready form of a plan. All numbers are held at the
// plan file's 12-significant-digit precision, so writing, re-parsing, and
// re-rendering are byte-stable.
struct PlanDocument {
  std::uint64_t scene_hash = 0;
  std::string planner;
  std::string mode;
  std::string r;  // decimal integer or "inf"
  std::uint64_t seed = 0;
  double dt = 0.1;
  int segments = 1;
  std::vector<double> boundary_times;

  struct AgentTrack {
    std::string name;
    std::vector<int> segment;                 // per row, non-decreasing, 1..segments
    std::vector<double> time;                 // per row, sorted
    std::vector<std::vector<double>> values;  // per row: x y [extra dims]
  };
  std::vector<AgentTrack> tracks;
};

PlanDocument to_document(const ExplainablePlan& plan, std::uint64_t scene_hash);

// Header lines `# key: value`, then `NAME SEG TIME X Y [dims...]` rows in
// agent blocks; numbers at 12 significant digits.
std::string write_plan(const PlanDocument& doc);
std::string write_plan(const ExplainablePlan& plan, const Scene& scene);

PlanDocument parse_plan(const std::string& text);

// One SVG document per image: the full plan first, then one per segment.
// Obstacles in gray, one fixed color per agent, small circles at segment
// start positions, large circles (or rects) at the goal regions, and an
// interval caption. Pure function of (document, scene).
std::vector<std::string> render_segments(const PlanDocument& doc, const Scene& scene);
std::vector<std::string> render_segments(const ExplainablePlan& plan, const Scene& scene);

// plan_full.svg, plan_seg_01.svg, ... matching render_segments order.
std::vector<std::string> image_file_names(int segments);

}  // namespace mapsx

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapsx/bench.hpp"
#include "mapsx/explain.hpp"
#include "mapsx/meta.hpp"
#include "mapsx/scene.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitTimeout = 2;

// Parses "-r INT|inf"; empty means unbounded too.
bool parse_bound(const std::string& text, std::optional<int>& out, std::string& error) {
  if (text.empty() || text == "inf") {
    out = std::nullopt;
    return true;
  }
  try {
    const int r = std::stoi(text);
    if (r < 1) {
      error = "segment bound must be >= 1 (or 'inf'), got " + text;
      return false;
    }
    out = r;
    return true;
  } catch (const std::exception&) {
    error = "cannot parse segment bound '" + text + "'";
    return false;
  }
}

// All outputs land as *.tmp first and are renamed together, so a failed
// command leaves no partial files behind.
class OutputBatch {
 public:
  explicit OutputBatch(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void add(const std::string& name, const std::string& content) {
    const fs::path tmp = dir_ / (name + ".tmp");
    std::ofstream f(tmp, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    staged_.emplace_back(tmp, dir_ / name);
  }

  void commit() {
    for (const auto& [tmp, final_path] : staged_) fs::rename(tmp, final_path);
    staged_.clear();
  }

  ~OutputBatch() {
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CommonFlags {
  std::string scene_path;
  std::string planner = "rrt";
  std::string mode = "post";
  std::string bound = "inf";
  std::uint64_t seed = 0;
  double max_time = 30.0;
  std::uint64_t max_iters = UINT64_MAX;
  double dt = 0.1;
  double goal_bias = 0.05;
  int candidates = 1;
  double clearance = 0.0;
  int steps_min = 1;
  int steps_max = 10;
  std::string out_dir = "out";
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool needs_mode) {
  cmd->add_option("--scene", f.scene_path, "Scene file")->required();
  cmd->add_option("--planner", f.planner, "Tree planner")->check(CLI::IsMember({"rrt", "est"}));
  if (needs_mode) {
    cmd->add_option("--mode", f.mode, "Planning mode")
        ->check(CLI::IsMember({"baseline", "post", "lazy", "maps", "anytime"}));
  }
  cmd->add_option("-r,--bound", f.bound, "Max segments (positive integer or 'inf')");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--max-time", f.max_time, "Per-query time budget, seconds");
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap");
  cmd->add_option("--dt", f.dt, "Propagation and sampling resolution, seconds");
  cmd->add_option("--goal-bias", f.goal_bias, "Goal sampling probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--candidates", f.candidates, "Control candidates per extension");
  cmd->add_option("--clearance", f.clearance, "Disjointness clearance, meters");
  cmd->add_option("--steps-min", f.steps_min, "Min dt steps per extension");
  cmd->add_option("--steps-max", f.steps_max, "Max dt steps per extension");
  cmd->add_option("--out", f.out_dir, "Output directory");
}

mapsx::PlannerConfig make_config(const CommonFlags& f, const std::optional<int>& bound) {
  mapsx::PlannerConfig cfg;
  mapsx::parse_planner(f.planner, cfg.planner);
  mapsx::parse_mode(f.mode, cfg.mode);
  cfg.segment_bound = bound;
  cfg.seed = f.seed;
  cfg.max_time = f.max_time;
  cfg.max_iterations = f.max_iters;
  cfg.dt = f.dt;
  cfg.goal_bias = f.goal_bias;
  cfg.candidates = f.candidates;
  cfg.clearance = f.clearance;
  cfg.steps_min = f.steps_min;
  cfg.steps_max = f.steps_max;
  return cfg;
}

int cmd_plan(const CommonFlags& f) {
  std::optional<int> bound;
  std::string err;
  if (!parse_bound(f.bound, bound, err)) {
    std::cerr << "error: " << err << "\n";
    return kExitInputError;
  }

  mapsx::Scene scene;
  try {
    scene = mapsx::load_scene_file(f.scene_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const mapsx::PlannerConfig cfg = make_config(f, bound);
  const mapsx::PlanOutcome outcome = mapsx::plan_run(scene, cfg);

  if (outcome.status == mapsx::PlanOutcome::Status::timeout) {
    std::cerr << "no solution within budget (" << outcome.stats.iterations << " iterations, "
              << outcome.tree.live_count() << " nodes)\n";
    return kExitTimeout;
  }
  if (outcome.status == mapsx::PlanOutcome::Status::atomic_conflict) {
    std::cerr << "solution has an atomic conflict: a single edge's paths intersect, no "
                 "node-aligned segmentation exists\n";
    return kExitTimeout;
  }

  const mapsx::ExplainablePlan& plan = *outcome.plan;
  try {
    OutputBatch batch(f.out_dir);
    const mapsx::PlanDocument doc = mapsx::to_document(plan, mapsx::scene_hash(scene));
    batch.add("plan.txt", mapsx::write_plan(doc));
    const auto images = mapsx::render_segments(doc, scene);
    const auto names = mapsx::image_file_names(doc.segments);
    // Baseline plans carry no verified segmentation: emit the full image only.
    const std::size_t image_count = plan.segmentation_verified ? images.size() : 1;
    for (std::size_t i = 0; i < image_count; ++i) batch.add(names[i], images[i]);
    batch.commit();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  char time_buf[32];
  std::snprintf(time_buf, sizeof(time_buf), "%.3f", plan.stats.plan_time);
  std::cout << "solved s=" << plan.segmentation.count << " time=" << time_buf
            << " nodes=" << outcome.tree.size() << "\n";
  return kExitOk;
}

int cmd_bench(const CommonFlags& f, const std::string& r_list, int runs, int threads) {
  mapsx::Scene scene;
  try {
    scene = mapsx::load_scene_file(f.scene_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  mapsx::BenchSpec spec;
  spec.scene_label = fs::path(f.scene_path).stem().string();
  mapsx::parse_planner(f.planner, spec.planner);
  mapsx::parse_mode(f.mode, spec.mode);
  spec.runs = runs;
  spec.time_cap = f.max_time;
  spec.base_seed = f.seed;
  spec.threads = threads;
  spec.base = make_config(f, std::nullopt);

  spec.r_values.clear();
  std::stringstream ss(r_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::optional<int> bound;
    std::string err;
    if (!parse_bound(item, bound, err)) {
      std::cerr << "error: " << err << "\n";
      return kExitInputError;
    }
    spec.r_values.push_back(bound);
  }
  if (spec.r_values.empty()) spec.r_values.push_back(std::nullopt);

  const auto records = mapsx::run_bench(spec, scene);
  try {
    OutputBatch batch(f.out_dir);
    batch.add("bench.csv", mapsx::write_csv(records));
    batch.commit();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  std::cout << "wrote " << records.size() << " record(s) to " << f.out_dir << "/bench.csv\n";
  return kExitOk;
}

int cmd_render(const std::string& plan_path, const std::string& scene_path,
               const std::string& out_dir, int only_segment) {
  try {
    const mapsx::Scene scene = mapsx::load_scene_file(scene_path);
    const mapsx::PlanDocument doc = mapsx::parse_plan(read_file(plan_path));
    if (doc.scene_hash != mapsx::scene_hash(scene)) {
      std::cerr << "error: scene hash mismatch; the plan was produced for a different scene\n";
      return kExitInputError;
    }
    if (only_segment > doc.segments) {
      std::cerr << "error: plan has " << doc.segments << " segment(s), cannot render segment "
                << only_segment << "\n";
      return kExitInputError;
    }
    const auto images = mapsx::render_segments(doc, scene);
    const auto names = mapsx::image_file_names(doc.segments);
    OutputBatch batch(out_dir);
    if (only_segment > 0) {
      batch.add(names[static_cast<std::size_t>(only_segment)],
                images[static_cast<std::size_t>(only_segment)]);
    } else {
      for (std::size_t i = 0; i < images.size(); ++i) batch.add(names[i], images[i]);
    }
    batch.commit();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent kinodynamic planning with segment-disjoint visual explanations"};
  app.require_subcommand(1);

  CommonFlags plan_flags;
  CLI::App* plan = app.add_subcommand("plan", "Plan once and write plan.txt plus SVG images");
  add_common_flags(plan, plan_flags, true);

  CommonFlags bench_flags;
  std::string r_list = "inf";
  int runs = 1;
  int threads = 0;
  CLI::App* bench = app.add_subcommand("bench", "Repeated seeded runs, aggregated to CSV");
  add_common_flags(bench, bench_flags, true);
  bench->add_option("--runs", runs, "Runs per r value")->check(CLI::PositiveNumber);
  bench->add_option("--r-list", r_list, "Comma-separated r values (integers or 'inf')");
  bench->add_option("--threads", threads, "Worker threads (0 = hardware)");

  std::string render_plan, render_scene, render_out = "out";
  int only_segment = 0;
  CLI::App* render = app.add_subcommand("render", "Re-render images from a saved plan");
  render->add_option("--plan", render_plan, "Plan file")->required();
  render->add_option("--scene", render_scene, "Scene file")->required();
  render->add_option("--out", render_out, "Output directory");
  render->add_option("--segments", only_segment, "Render only this segment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (plan->parsed()) return cmd_plan(plan_flags);
  if (bench->parsed()) return cmd_bench(bench_flags, r_list, runs, threads);
  if (render->parsed()) return cmd_render(render_plan, render_scene, render_out, only_segment);
  return kExitInputError;
}

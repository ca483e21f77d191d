#include "mapsx/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace mapsx {

namespace {

struct RunSample {
  bool solved = false;
  double runtime = 0.0;
  double segment_time = 0.0;
  double states_per_sec = 0.0;
  int cost = 0;
};

struct MeanStd {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_dev = std::numeric_limits<double>::quiet_NaN();
};

MeanStd aggregate(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - out.mean) * (x - out.mean);
  out.std_dev = std::sqrt(var / static_cast<double>(xs.size()));
  return out;
}

std::string dynamics_label(const Scene& scene) {
  std::string label;
  for (const auto& agent : scene.agents) {
    const std::string tag = model_name(agent.model.tag);
    if (label.find(tag) == std::string::npos) {
      if (!label.empty()) label += "+";
      label += tag;
    }
  }
  return label;
}

std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchSpec& spec, const Scene& scene) {
  std::vector<BenchRecord> records;

  for (const auto& r : spec.r_values) {
    std::vector<RunSample> samples(static_cast<std::size_t>(spec.runs));

    const auto run_one = [&](int i) {
      PlannerConfig cfg = spec.base;
      cfg.planner = spec.planner;
      cfg.mode = spec.mode;
      cfg.segment_bound = r;
      cfg.max_time = spec.time_cap;
      cfg.seed = spec.base_seed + static_cast<std::uint64_t>(i);

      const PlanOutcome outcome = plan_run(scene, cfg);
      RunSample& s = samples[static_cast<std::size_t>(i)];
      s.solved = outcome.status == PlanOutcome::Status::solved;
      s.runtime = s.solved ? std::min(outcome.stats.plan_time, spec.time_cap) : spec.time_cap;
      s.segment_time = outcome.stats.segment_time;
      s.states_per_sec = outcome.stats.plan_time > 0.0
                             ? static_cast<double>(outcome.stats.states_added) / outcome.stats.plan_time
                             : 0.0;
      if (s.solved && outcome.plan) s.cost = outcome.plan->segmentation.count;
    };

    unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.runs));
    if (threads <= 1) {
      for (int i = 0; i < spec.runs; ++i) run_one(i);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (int i = next.fetch_add(1); i < spec.runs; i = next.fetch_add(1)) run_one(i);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::vector<double> runtimes, runtimes_success, costs, seg_times, states_rates;
    int successes = 0;
    for (const RunSample& s : samples) {
      runtimes.push_back(s.runtime);
      seg_times.push_back(s.segment_time);
      states_rates.push_back(s.states_per_sec);
      if (s.solved) {
        ++successes;
        runtimes_success.push_back(s.runtime);
        costs.push_back(static_cast<double>(s.cost));
      }
    }

    BenchRecord rec;
    rec.scene = spec.scene_label;
    rec.planner = planner_name(spec.planner);
    rec.mode = mode_name(spec.mode);
    rec.dynamics = dynamics_label(scene);
    rec.agents = static_cast<int>(scene.agents.size());
    rec.r = r ? std::to_string(*r) : "inf";
    rec.runs = spec.runs;
    rec.solved_pct = 100.0 * static_cast<double>(successes) / static_cast<double>(spec.runs);
    const auto rt = aggregate(runtimes);
    rec.runtime_mean = rt.mean;
    rec.runtime_std = rt.std_dev;
    const auto rts = aggregate(runtimes_success);
    rec.runtime_success_mean = rts.mean;
    rec.runtime_success_std = rts.std_dev;
    const auto c = aggregate(costs);
    rec.cost_mean = c.mean;
    rec.cost_std = c.std_dev;
    const auto st = aggregate(seg_times);
    rec.segment_time_mean = st.mean;
    rec.segment_time_std = st.std_dev;
    const auto sr = aggregate(states_rates);
    rec.states_per_sec_mean = sr.mean;
    rec.states_per_sec_std = sr.std_dev;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string write_csv(std::span<const BenchRecord> records) {
  std::string out =
      "scene,planner,mode,dynamics,agents,r,runs,solved_pct,"
      "runtime_mean,runtime_std,runtime_success_mean,runtime_success_std,"
      "cost_mean,cost_std,segment_time_mean,segment_time_std,"
      "states_per_sec_mean,states_per_sec_std\n";
  for (const auto& r : records) {
    out += r.scene + "," + r.planner + "," + r.mode + "," + r.dynamics + "," +
           std::to_string(r.agents) + "," + r.r + "," + std::to_string(r.runs) + "," +
           fmt4(r.solved_pct) + "," + fmt4(r.runtime_mean) + "," + fmt4(r.runtime_std) + "," +
           fmt4(r.runtime_success_mean) + "," + fmt4(r.runtime_success_std) + "," +
           fmt4(r.cost_mean) + "," + fmt4(r.cost_std) + "," + fmt4(r.segment_time_mean) + "," +
           fmt4(r.segment_time_std) + "," + fmt4(r.states_per_sec_mean) + "," +
           fmt4(r.states_per_sec_std) + "\n";
  }
  return out;
}

}  // namespace mapsx

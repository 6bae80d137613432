#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "radpipe/clustering.hpp"
#include "radpipe/config.hpp"
#include "radpipe/errors.hpp"
#include "radpipe/evaluation.hpp"
#include "radpipe/io.hpp"
#include "radpipe/pipeline.hpp"
#include "radpipe/random.hpp"
#include "radpipe/simulator.hpp"

namespace {

using radpipe::RadarFrame;
using radpipe::RadarPoint;
using json = nlohmann::ordered_json;

struct DetectArgs {
  std::string frames_path;
  std::string poses_path;
  std::string config_path;
  std::string profile = "indoor";
  std::string out_path;
  std::string dump_clusters_path;
  bool realtime = false;
  double rate = 0.0;
};

radpipe::PipelineConfig resolve_config(const std::string& config_path,
                                       const std::string& profile) {
  if (config_path.empty()) {
    return radpipe::default_pipeline_config(profile);
  }
  return radpipe::load_pipeline_config(config_path, profile);
}

int run_detect(const DetectArgs& args) {
  const radpipe::PipelineConfig config = resolve_config(args.config_path, args.profile);
  const std::vector<RadarFrame> frames = radpipe::read_frames(args.frames_path);

  std::vector<radpipe::StampedPose> poses;
  if (args.poses_path.empty()) {
    std::cerr << "warning: no pose stream given; processing in degraded mode\n";
  } else if (!std::ifstream(args.poses_path)) {
    std::cerr << "warning: pose file " << args.poses_path
              << " is missing; processing in degraded mode\n";
  } else {
    std::vector<std::string> warnings;
    poses = radpipe::read_poses(args.poses_path, &warnings);
    for (const std::string& w : warnings) {
      std::cerr << "warning: " << args.poses_path << " " << w << '\n';
    }
  }

  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << args.out_path << '\n';
    return 1;
  }
  std::ofstream dump;
  if (!args.dump_clusters_path.empty()) {
    dump.open(args.dump_clusters_path, std::ios::binary);
    if (!dump) {
      std::cerr << "error: cannot write " << args.dump_clusters_path << '\n';
      return 1;
    }
  }

  radpipe::Pipeline pipeline(config);
  const auto wall_start = std::chrono::steady_clock::now();
  std::size_t deadline_misses = 0;
  std::size_t degraded_frames = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    double interval = 0.0;
    if (args.realtime) {
      if (args.rate > 0.0) {
        interval = 1.0 / args.rate;
      } else if (i + 1 < frames.size()) {
        interval = frames[i + 1].timestamp - frames[i].timestamp;
      } else if (i > 0) {
        interval = frames[i].timestamp - frames[i - 1].timestamp;
      }
      const double offset = args.rate > 0.0
                                ? static_cast<double>(i) / args.rate
                                : frames[i].timestamp - frames.front().timestamp;
      std::this_thread::sleep_until(wall_start + std::chrono::duration_cast<
                                                     std::chrono::steady_clock::duration>(
                                                     std::chrono::duration<double>(offset)));
    }

    const radpipe::FrameResult result = pipeline.process_frame(frames[i], poses);
    if (result.degraded) {
      ++degraded_frames;
    }
    if (args.realtime && interval > 0.0 &&
        static_cast<double>(result.stage_latencies.total_us) > interval * 1e6) {
      ++deadline_misses;
    }

    radpipe::DetectionFrame record;
    record.timestamp = frames[i].timestamp;
    record.detections = result.detections;
    record.degraded = result.degraded;
    record.latencies = result.stage_latencies;
    out << radpipe::detection_line(record) << '\n';

    if (dump.is_open()) {
      json line;
      line["t"] = frames[i].timestamp;
      json clusters = json::array();
      for (const radpipe::Cluster& c : result.clusters) {
        json entry;
        entry["indices"] = c.indices;
        json points = json::array();
        for (const RadarPoint& p : c.points) {
          points.push_back(json::array({p.x, p.y, p.z, p.doppler, p.rcs, p.dyn_flag ? 1 : 0}));
        }
        entry["points"] = std::move(points);
        clusters.push_back(std::move(entry));
      }
      line["clusters"] = std::move(clusters);
      dump << line.dump() << '\n';
    }
  }
  if (degraded_frames > 0) {
    std::cerr << "warning: " << degraded_frames << " of " << frames.size()
              << " frames processed in degraded mode\n";
  }
  if (args.realtime) {
    std::cerr << "realtime: " << deadline_misses << " deadline misses over " << frames.size()
              << " frames\n";
  }
  return 0;
}

int run_simulate(const std::string& scene_path, std::optional<std::uint64_t> seed,
                 const std::string& frames_path, const std::string& poses_path,
                 const std::string& truth_path) {
  radpipe::SceneConfig cfg = radpipe::load_scene_config(scene_path);
  if (seed.has_value()) {
    cfg.seed = *seed;
  }
  const radpipe::SceneOutput scene = radpipe::generate_scene(cfg);
  radpipe::write_frames(frames_path, scene.frames);
  radpipe::write_poses(poses_path, scene.poses);
  radpipe::write_truth(truth_path, scene.truth);
  std::cerr << "simulated " << scene.frames.size() << " frames, " << scene.poses.size()
            << " poses\n";
  return 0;
}

int run_evaluate(const std::string& detections_path, const std::string& truth_path,
                 const std::string& report_path) {
  const std::vector<radpipe::DetectionFrame> detections =
      radpipe::read_detections(detections_path);
  const std::vector<radpipe::TruthFrame> truth = radpipe::read_truth(truth_path);
  const radpipe::CountSeries series = radpipe::count_pedestrians(detections, truth);
  const radpipe::MetricsReport report = radpipe::compute_metrics(series);
  std::cout << radpipe::format_report(report);
  if (!report_path.empty()) {
    json machine;
    machine["frames"] = report.frames;
    machine["positive_frames"] = report.positive_frames;
    machine["detected_positive_frames"] = report.detected_positive_frames;
    machine["overcount_frames"] = report.overcount_frames;
    machine["total_ground_truth"] = report.total_ground_truth;
    machine["total_credited"] = report.total_credited;
    machine["frame_recall"] = report.frame_recall;
    machine["person_count_recall"] = report.person_count_recall;
    machine["false_alarm_rate"] = report.false_alarm_rate;
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << '\n';
      return 1;
    }
    out << machine.dump(2) << '\n';
  }
  return 0;
}

int run_filter(const std::string& frames_path, const std::string& config_path,
               const std::string& profile, const std::string& out_path) {
  const radpipe::PipelineConfig config = resolve_config(config_path, profile);
  const std::vector<RadarFrame> frames = radpipe::read_frames(frames_path);
  std::vector<RadarFrame> filtered;
  filtered.reserve(frames.size());
  radpipe::RejectionStats totals;
  for (const RadarFrame& frame : frames) {
    auto [kept, stats] = radpipe::filter_frame(config.profile, frame);
    totals.input += stats.input;
    totals.kept += stats.kept;
    totals.rejected_rcs += stats.rejected_rcs;
    totals.rejected_degenerate += stats.rejected_degenerate;
    totals.rejected_angular += stats.rejected_angular;
    totals.rejected_doppler += stats.rejected_doppler;
    filtered.push_back(std::move(kept));
  }
  radpipe::write_frames(out_path, filtered);
  std::cout << "input points: " << totals.input << '\n'
            << "kept: " << totals.kept << '\n'
            << "rejected rcs: " << totals.rejected_rcs << '\n'
            << "rejected degenerate: " << totals.rejected_degenerate << '\n'
            << "rejected angular: " << totals.rejected_angular << '\n'
            << "rejected doppler: " << totals.rejected_doppler << '\n';
  return 0;
}

// Synthetic constant-density frame: N points uniform over a cube whose
// volume scales with N, so neighbour counts stay flat as N grows.
RadarFrame bench_frame(std::size_t n, double timestamp, radpipe::RandomSource& rng) {
  constexpr double kDensity = 30.0;  // points per cubic meter
  const double side = std::cbrt(static_cast<double>(std::max<std::size_t>(n, 1)) / kDensity);
  RadarFrame frame;
  frame.timestamp = timestamp;
  frame.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RadarPoint p;
    p.x = 1.0 + rng.uniform() * side;
    p.y = -side / 2.0 + rng.uniform() * side;
    p.z = -side / 2.0 + rng.uniform() * side;
    p.doppler = rng.uniform(-5.0, 5.0);
    p.rcs = rng.uniform(0.0, 40.0);
    p.dyn_flag = false;
    frame.points.push_back(p);
  }
  return frame;
}

std::int64_t percentile(std::vector<std::int64_t> samples, double q) {
  if (samples.empty()) {
    return 0;
  }
  std::sort(samples.begin(), samples.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(samples.size())));
  return samples[std::min(samples.size() - 1, std::max<std::size_t>(rank, 1) - 1)];
}

int run_bench(std::size_t points, std::size_t frames, std::uint64_t seed) {
  radpipe::PipelineConfig config;
  // Wide-open bounds so every synthetic point survives filtering and the
  // later stages carry the full load.
  config.profile = {-1000.0, 1000.0, -180.0, 180.0, -90.0, 90.0, -1000.0, 1000.0};
  config.retention.rcs_retain_min = config.profile.rcs_min;
  config.retention.rcs_retain_max = config.profile.rcs_max;
  radpipe::Pipeline pipeline(config);

  radpipe::RandomSource rng(seed);
  std::vector<radpipe::StampedPose> poses;
  const double frame_interval = 1.0 / 15.0;
  const double total_time = static_cast<double>(frames + 2) * frame_interval;
  for (double t = 0.0; t <= total_time; t += 0.01) {
    poses.push_back({t, Eigen::Vector3d(0.5 * t, 0.0, 0.0), Eigen::Quaterniond::Identity()});
  }

  std::vector<std::int64_t> filter_us, accumulate_us, cluster_us, classify_us, total_us;
  for (std::size_t i = 0; i < frames + 2; ++i) {
    const RadarFrame frame = bench_frame(points, static_cast<double>(i) * frame_interval, rng);
    const radpipe::FrameResult result = pipeline.process_frame(frame, poses);
    if (i < 2) {
      continue;  // warmup: cold caches and the one-frame accumulation ramp
    }
    filter_us.push_back(result.stage_latencies.filter_us);
    accumulate_us.push_back(result.stage_latencies.accumulate_us);
    cluster_us.push_back(result.stage_latencies.cluster_us);
    classify_us.push_back(result.stage_latencies.classify_us);
    total_us.push_back(result.stage_latencies.total_us);
  }

  const auto report_stage = [](const char* name, const std::vector<std::int64_t>& samples) {
    std::cout << name << ": p50 " << percentile(samples, 0.50) << " us, p95 "
              << percentile(samples, 0.95) << " us, p99 " << percentile(samples, 0.99)
              << " us\n";
  };
  std::cout << "frames: " << frames << ", points per frame: " << points << '\n';
  report_stage("filter", filter_us);
  report_stage("accumulate", accumulate_us);
  report_stage("cluster", cluster_us);
  report_stage("classify", classify_us);
  report_stage("total", total_us);

  const std::int64_t p99_total = percentile(total_us, 0.99);
  constexpr std::int64_t kBudgetUs = 66667;
  std::cout << "budget: " << kBudgetUs << " us (15 Hz)\n";
  std::cout << "within budget: " << (p99_total < kBudgetUs ? "yes" : "no") << '\n';

  // Clustering scaling on constant-density data, doubling N.
  const std::vector<std::size_t> sizes = {2000, 4000, 8000};
  constexpr int kTrials = 5;
  radpipe::ClusteringParams params;
  std::vector<std::int64_t> medians;
  for (std::size_t n : sizes) {
    std::vector<std::int64_t> trials;
    for (int trial = 0; trial < kTrials + 1; ++trial) {
      const RadarFrame frame = bench_frame(n, 0.0, rng);
      const auto start = std::chrono::steady_clock::now();
      const auto clusters = radpipe::euclidean_cluster(frame.points, params);
      const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      volatile std::size_t sink = clusters.size();
      (void)sink;
      if (trial == 0) {
        continue;  // warmup
      }
      trials.push_back(elapsed);
    }
    medians.push_back(percentile(trials, 0.50));
  }
  std::cout << "clustering scaling (median of " << kTrials << " trials):\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::cout << "  N=" << sizes[i] << ": " << medians[i] << " us";
    if (i > 0 && medians[i - 1] > 0) {
      std::cout << "  (x" << static_cast<double>(medians[i]) / static_cast<double>(medians[i - 1])
                << " vs N=" << sizes[i - 1] << ")";
    }
    std::cout << '\n';
  }

  const double ratio = medians[1] > 0 ? static_cast<double>(medians[2]) /
                                            static_cast<double>(medians[1])
                                      : 0.0;
  std::cout << "p99_total_us=" << p99_total << '\n';
  std::cout << "cluster_ratio_8000_4000=" << ratio << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4D radar perception pipeline"};
  app.require_subcommand(1);

  DetectArgs detect;
  CLI::App* detect_cmd = app.add_subcommand("detect", "Run the detection pipeline over a stream");
  detect_cmd->add_option("--frames", detect.frames_path, "Radar frames (JSON Lines)")->required();
  detect_cmd->add_option("--poses", detect.poses_path, "Pose stream (JSON Lines)");
  detect_cmd->add_option("--config", detect.config_path, "Pipeline config file");
  detect_cmd->add_option("--profile", detect.profile, "Active filter profile");
  detect_cmd->add_option("--out", detect.out_path, "Detection log output")->required();
  detect_cmd->add_flag("--realtime", detect.realtime, "Pace frames at their recorded interval");
  detect_cmd->add_option("--rate", detect.rate, "Override pacing rate, Hz");
  detect_cmd->add_option("--dump-clusters", detect.dump_clusters_path,
                         "Write retained cluster membership (JSON Lines)");

  std::string scene_path, sim_frames, sim_poses, sim_truth;
  std::uint64_t seed_value = 0;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic scene");
  simulate_cmd->add_option("--scene", scene_path, "Scene config file")->required();
  CLI::Option* seed_option = simulate_cmd->add_option("--seed", seed_value, "Override the scene seed");
  simulate_cmd->add_option("--out-frames", sim_frames, "Frames output")->required();
  simulate_cmd->add_option("--out-poses", sim_poses, "Poses output")->required();
  simulate_cmd->add_option("--out-truth", sim_truth, "Ground truth output")->required();

  std::string eval_detections, eval_truth, eval_report;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Score a detection log");
  evaluate_cmd->add_option("--detections", eval_detections, "Detection log")->required();
  evaluate_cmd->add_option("--truth", eval_truth, "Ground truth file")->required();
  evaluate_cmd->add_option("--report", eval_report, "Machine-readable report output");

  std::size_t bench_points = 6000;
  std::size_t bench_frames = 120;
  std::uint64_t bench_seed = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Per-stage latency statistics");
  bench_cmd->add_option("--points", bench_points, "Points per synthetic frame");
  bench_cmd->add_option("--frames", bench_frames, "Number of timed frames");
  bench_cmd->add_option("--seed", bench_seed, "Generator seed");

  std::string filter_frames, filter_config, filter_out;
  std::string filter_profile = "indoor";
  CLI::App* filter_cmd = app.add_subcommand("filter", "Run stage 1 alone");
  filter_cmd->add_option("--frames", filter_frames, "Radar frames (JSON Lines)")->required();
  filter_cmd->add_option("--config", filter_config, "Pipeline config file");
  filter_cmd->add_option("--profile", filter_profile, "Active filter profile");
  filter_cmd->add_option("--out", filter_out, "Filtered frames output")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect_cmd->parsed()) {
      return run_detect(detect);
    }
    if (simulate_cmd->parsed()) {
      return run_simulate(scene_path,
                          seed_option->count() > 0 ? std::optional<std::uint64_t>(seed_value)
                                                   : std::nullopt,
                          sim_frames, sim_poses, sim_truth);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(eval_detections, eval_truth, eval_report);
    }
    if (bench_cmd->parsed()) {
      return run_bench(bench_points, bench_frames, bench_seed);
    }
    if (filter_cmd->parsed()) {
      return run_filter(filter_frames, filter_config, filter_profile, filter_out);
    }
  } catch (const radpipe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

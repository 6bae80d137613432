#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "radpipe/clustering.hpp"
#include "radpipe/filtering.hpp"
#include "radpipe/pipeline.hpp"
#include "radpipe/random.hpp"
#include "radpipe/spatial_index.hpp"
#include "radpipe/types.hpp"

using namespace radpipe;

namespace {

// Uniform cloud at a constant 30 points/m^3, same generator as the CLI bench
// subcommand: the neighbour-graph degree stays flat as N grows, so timings
// isolate the data-structure costs instead of the point density.
RadarFrame bench_frame(std::size_t n, double timestamp, RandomSource& rng) {
  constexpr double kDensity = 30.0;
  const double side =
      std::cbrt(static_cast<double>(std::max<std::size_t>(n, 1)) / kDensity);
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

// Bounds wide enough that nothing is rejected; used where the later stages
// should carry the full load.
FilterProfile open_profile() {
  FilterProfile p;
  p.rcs_min = -1000.0;
  p.rcs_max = 1000.0;
  p.az_min = -180.0;
  p.az_max = 180.0;
  p.el_min = -90.0;
  p.el_max = 90.0;
  p.v_min = -1000.0;
  p.v_max = 1000.0;
  return p;
}

void BM_FilterFrame(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(1);
  const RadarFrame frame = bench_frame(n, 0.0, rng);
  const FilterProfile profile = builtin_profile("outdoor");
  for (auto _ : state) {
    auto [kept, stats] = filter_frame(profile, frame);
    benchmark::DoNotOptimize(kept.points.data());
    benchmark::DoNotOptimize(stats.kept);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FilterFrame)
    ->RangeMultiplier(4)
    ->Range(1000, 16000)
    ->Unit(benchmark::kMicrosecond);

void BM_KdTreeBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(2);
  const RadarFrame frame = bench_frame(n, 0.0, rng);
  for (auto _ : state) {
    KdTree tree(frame.points);
    benchmark::DoNotOptimize(tree.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KdTreeBuild)
    ->RangeMultiplier(2)
    ->Range(1000, 16000)
    ->Complexity(benchmark::oNLogN)
    ->Unit(benchmark::kMicrosecond);

void BM_KdTreeRadiusSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(3);
  const RadarFrame frame = bench_frame(n, 0.0, rng);
  const KdTree tree(frame.points);
  std::size_t i = 0;
  for (auto _ : state) {
    const Eigen::Vector3d center = frame.points[i].position();
    auto hits = tree.radius_search(center, 0.6);
    benchmark::DoNotOptimize(hits.data());
    i = (i + 1) % frame.points.size();
  }
}
BENCHMARK(BM_KdTreeRadiusSearch)->RangeMultiplier(4)->Range(1000, 16000);

void BM_EuclideanCluster(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(4);
  const RadarFrame frame = bench_frame(n, 0.0, rng);
  const ClusteringParams params;
  for (auto _ : state) {
    auto clusters = euclidean_cluster(frame.points, params);
    benchmark::DoNotOptimize(clusters.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EuclideanCluster)
    ->RangeMultiplier(2)
    ->Range(1000, 8000)
    ->Complexity(benchmark::oNLogN)
    ->Unit(benchmark::kMillisecond);

void BM_PipelineFrame(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  constexpr double kRate = 15.0;
  constexpr std::size_t kStreamFrames = 64;

  PipelineConfig config;
  config.profile = open_profile();
  Pipeline pipeline(config);

  RandomSource rng(5);
  std::vector<RadarFrame> frames;
  frames.reserve(kStreamFrames);
  for (std::size_t k = 0; k < kStreamFrames; ++k) {
    frames.push_back(bench_frame(n, static_cast<double>(k) / kRate, rng));
  }

  // Straight-line 100 Hz pose track covering the whole stream, so both the
  // accumulation alignment and the ego-velocity window always find poses.
  std::vector<StampedPose> poses;
  const double horizon = static_cast<double>(kStreamFrames) / kRate + 1.0;
  for (int j = 0; j * 0.01 <= horizon; ++j) {
    StampedPose pose;
    pose.timestamp = j * 0.01;
    pose.translation = Eigen::Vector3d(2.0 * pose.timestamp, 0.0, 0.0);
    pose.rotation = Eigen::Quaterniond::Identity();
    poses.push_back(pose);
  }

  std::size_t k = 0;
  for (auto _ : state) {
    if (k == 0) {
      pipeline.reset();
    }
    FrameResult result = pipeline.process_frame(frames[k], poses);
    benchmark::DoNotOptimize(result.detections.data());
    k = (k + 1) % kStreamFrames;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PipelineFrame)
    ->Arg(3000)
    ->Arg(6000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

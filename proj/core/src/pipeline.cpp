#include "radpipe/pipeline.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "radpipe/errors.hpp"

namespace radpipe {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_us(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - since).count();
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {}

void Pipeline::reset() { previous_filtered_.reset(); }

FrameResult Pipeline::process_frame(const RadarFrame& raw,
                                    const std::vector<StampedPose>& poses) {
  if (previous_filtered_ && raw.timestamp <= previous_filtered_->timestamp) {
    throw FrameOrder("frame at " + std::to_string(raw.timestamp) +
                     " does not follow frame at " +
                     std::to_string(previous_filtered_->timestamp));
  }
  const auto start_total = Clock::now();
  FrameResult result;
  result.point_counts.raw = raw.points.size();

  auto start = Clock::now();
  RadarFrame normalized = raw;
  if (config_.doppler_sign == DopplerSign::RecedingPositive) {
    for (RadarPoint& p : normalized.points) {
      p.doppler = -p.doppler;
    }
  }
  auto [filtered, rejection] = filter_frame(config_.profile, normalized);
  result.rejection = rejection;
  result.point_counts.filtered = filtered.points.size();
  result.stage_latencies.filter_us = elapsed_us(start);

  start = Clock::now();
  RadarFrame accumulated;
  if (previous_filtered_) {
    RigidTransform curr_from_prev = RigidTransform::Identity();
    try {
      const StampedPose pose_prev =
          interpolate_pose(poses, previous_filtered_->timestamp, config_.interpolation);
      const StampedPose pose_curr = interpolate_pose(poses, raw.timestamp, config_.interpolation);
      curr_from_prev = relative_transform(pose_prev, pose_curr);
    } catch (const PoseGap&) {
      result.degraded = true;
    }
    accumulated = accumulate(*previous_filtered_, filtered, curr_from_prev);
  } else {
    accumulated = filtered;
  }
  result.point_counts.accumulated = accumulated.points.size();
  result.stage_latencies.accumulate_us = elapsed_us(start);

  start = Clock::now();
  const std::vector<Cluster> clusters = euclidean_cluster(accumulated, config_.clustering);
  EgoState ego;
  try {
    ego = ego_velocity(poses, raw.timestamp, config_.velocity);
  } catch (const PoseGap&) {
    result.degraded = true;
  }
  std::vector<ClusterDescriptors> descriptors;
  descriptors.reserve(clusters.size());
  for (const Cluster& c : clusters) {
    descriptors.push_back(describe_cluster(c, ego, config_.clustering));
  }
  const std::vector<std::size_t> kept = retain_clusters(descriptors, config_.retention);
  result.stage_latencies.cluster_us = elapsed_us(start);

  start = Clock::now();
  result.detections.reserve(kept.size());
  result.clusters.reserve(kept.size());
  for (std::size_t k : kept) {
    DetectedObject obj = classify(bounding_box(clusters[k]), descriptors[k], config_.classifier);
    obj.frame_timestamp = raw.timestamp;
    result.detections.push_back(std::move(obj));
    result.clusters.push_back(clusters[k]);
  }
  result.stage_latencies.classify_us = elapsed_us(start);

  previous_filtered_ = std::move(filtered);
  result.stage_latencies.total_us = elapsed_us(start_total);
  return result;
}

FrameResult Pipeline::process_frame(const RadarFrame& raw, const PoseBuffer& poses) {
  return process_frame(raw, poses.snapshot());
}

}  // namespace radpipe

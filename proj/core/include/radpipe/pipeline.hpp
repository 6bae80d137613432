#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "radpipe/classification.hpp"
#include "radpipe/clustering.hpp"
#include "radpipe/ego_motion.hpp"
#include "radpipe/filtering.hpp"
#include "radpipe/types.hpp"

namespace radpipe {

// Sign convention of the sensor's reported Doppler. Internally everything
// is closing-positive; receding-positive input is negated on ingestion.
enum class DopplerSign : std::uint8_t { ClosingPositive, RecedingPositive };

struct PipelineConfig {
  FilterProfile profile;
  ClusteringParams clustering;
  RetentionRules retention;
  ClassifierRules classifier;
  DopplerSign doppler_sign = DopplerSign::ClosingPositive;
  InterpolationOptions interpolation;
  VelocityOptions velocity;
};

struct StageLatencies {
  std::int64_t filter_us = 0;
  std::int64_t accumulate_us = 0;
  std::int64_t cluster_us = 0;
  std::int64_t classify_us = 0;
  std::int64_t total_us = 0;
};

struct PointCounts {
  std::size_t raw = 0;
  std::size_t filtered = 0;
  std::size_t accumulated = 0;
};

struct FrameResult {
  std::vector<DetectedObject> detections;
  // Retained clusters, aligned one-to-one with detections; indices refer to
  // the accumulated frame of this iteration.
  std::vector<Cluster> clusters;
  StageLatencies stage_latencies;
  PointCounts point_counts;
  RejectionStats rejection;
  // Set when poses were missing for accumulation or ego velocity; the frame
  // is then processed with an identity alignment and zero ego velocity.
  bool degraded = false;
};

// Four-stage detector over a frame stream with a two-frame sliding window.
// Single-owner sequential per stream: the previous filtered frame is
// mutable state. Distinct instances may run concurrently.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  // Frames must arrive in strictly increasing timestamp order; violations
  // throw FrameOrder and leave the stored state unchanged.
  FrameResult process_frame(const RadarFrame& raw, const std::vector<StampedPose>& poses);
  FrameResult process_frame(const RadarFrame& raw, const PoseBuffer& poses);

  // Drops the stored previous frame, restarting the stream cold.
  void reset();

  const PipelineConfig& config() const { return config_; }

 private:
  PipelineConfig config_;
  std::optional<RadarFrame> previous_filtered_;
};

}  // namespace radpipe

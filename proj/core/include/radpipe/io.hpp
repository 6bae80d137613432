#pragma once

#include <string>
#include <vector>

#include "radpipe/pipeline.hpp"
#include "radpipe/simulator.hpp"
#include "radpipe/types.hpp"

namespace radpipe {

// One parsed line of a detection log.
struct DetectionFrame {
  double timestamp = 0.0;
  std::vector<DetectedObject> detections;
  bool degraded = false;
  StageLatencies latencies;
};

// All readers take JSON Lines files, are strict (unknown keys, wrong arity,
// or non-finite numbers are errors), and throw ParseError carrying the
// 1-based line number. Writers emit one line per record with a fixed field
// order and shortest round-trip number formatting, so identical data
// serializes to identical bytes.

std::vector<RadarFrame> read_frames(const std::string& path);
void write_frames(const std::string& path, const std::vector<RadarFrame>& frames);

// Quaternions must be unit within 1e-6; norms off by up to 1e-3 are
// renormalized with a note appended to `warnings`, beyond that ParseError.
std::vector<StampedPose> read_poses(const std::string& path,
                                    std::vector<std::string>* warnings = nullptr);
void write_poses(const std::string& path, const std::vector<StampedPose>& poses);

std::vector<DetectionFrame> read_detections(const std::string& path);
void write_detections(const std::string& path, const std::vector<DetectionFrame>& frames);

std::vector<TruthFrame> read_truth(const std::string& path);
void write_truth(const std::string& path, const std::vector<TruthFrame>& truth);

// Single-line serializers backing the writers; no trailing newline.
std::string frame_line(const RadarFrame& frame);
std::string pose_line(const StampedPose& pose);
std::string detection_line(const DetectionFrame& frame);
std::string truth_line(const TruthFrame& frame);

}  // namespace radpipe

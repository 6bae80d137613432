#pragma once

#include <string>
#include <vector>

#include "radpipe/simulator.hpp"
#include "radpipe/types.hpp"

namespace radpipe {

// One serialized pipeline output frame (see io.hpp for the wire form).
struct DetectionFrame;

// Per-frame detected vs. ground-truth pedestrian counts.
struct CountSeries {
  struct Entry {
    double timestamp = 0.0;
    int detected = 0;
    int ground_truth = 0;
  };
  std::vector<Entry> entries;
};

// Fraction of positive-truth frames (gt >= 1) with at least one detection.
// Throws UndefinedMetric when no frame has positive ground truth.
double frame_recall(const CountSeries& s);

// Sum of min(detected, gt) over frames, divided by total gt. Throws
// UndefinedMetric when total ground truth is zero.
double person_count_recall(const CountSeries& s);

// Fraction of all frames where detected exceeds gt. Throws UndefinedMetric
// on an empty series.
double false_alarm_rate(const CountSeries& s);

// Joins a detection log with ground truth on timestamps (tolerance 1 ms),
// counting pedestrian-typed detections against visible ground-truth
// pedestrians. Mismatched lengths or timestamps throw AlignmentError.
CountSeries count_pedestrians(const std::vector<DetectionFrame>& detections,
                              const std::vector<TruthFrame>& truth);

struct MetricsReport {
  std::size_t frames = 0;
  std::size_t positive_frames = 0;
  std::size_t detected_positive_frames = 0;
  std::size_t overcount_frames = 0;
  long total_ground_truth = 0;
  long total_credited = 0;
  double frame_recall = 0.0;
  double person_count_recall = 0.0;
  double false_alarm_rate = 0.0;
};

MetricsReport compute_metrics(const CountSeries& s);

// "93.75% (94%)": the exact percentage followed by the rounded display
// figure.
std::string format_percent(double ratio);

// Multi-line human-readable report.
std::string format_report(const MetricsReport& report);

}  // namespace radpipe

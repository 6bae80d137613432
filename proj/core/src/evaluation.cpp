#include "radpipe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "radpipe/classification.hpp"
#include "radpipe/errors.hpp"
#include "radpipe/io.hpp"

namespace radpipe {

namespace {

constexpr double kJoinToleranceSeconds = 1e-3;

}  // namespace

double frame_recall(const CountSeries& s) {
  std::size_t positive = 0;
  std::size_t detected = 0;
  for (const CountSeries::Entry& e : s.entries) {
    if (e.ground_truth >= 1) {
      ++positive;
      if (e.detected >= 1) {
        ++detected;
      }
    }
  }
  if (positive == 0) {
    throw UndefinedMetric("frame_recall needs at least one positive ground-truth frame");
  }
  return static_cast<double>(detected) / static_cast<double>(positive);
}

double person_count_recall(const CountSeries& s) {
  long total = 0;
  long credited = 0;
  for (const CountSeries::Entry& e : s.entries) {
    total += e.ground_truth;
    credited += std::min(e.detected, e.ground_truth);
  }
  if (total == 0) {
    throw UndefinedMetric("person_count_recall needs nonzero total ground truth");
  }
  return static_cast<double>(credited) / static_cast<double>(total);
}

double false_alarm_rate(const CountSeries& s) {
  if (s.entries.empty()) {
    throw UndefinedMetric("false_alarm_rate needs a non-empty series");
  }
  std::size_t overcount = 0;
  for (const CountSeries::Entry& e : s.entries) {
    if (e.detected > e.ground_truth) {
      ++overcount;
    }
  }
  return static_cast<double>(overcount) / static_cast<double>(s.entries.size());
}

CountSeries count_pedestrians(const std::vector<DetectionFrame>& detections,
                              const std::vector<TruthFrame>& truth) {
  if (detections.size() != truth.size()) {
    throw AlignmentError("detection log has " + std::to_string(detections.size()) +
                         " frames, ground truth has " + std::to_string(truth.size()));
  }
  CountSeries series;
  series.entries.reserve(detections.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const double dt = detections[i].timestamp;
    const double tt = truth[i].timestamp;
    if (std::abs(dt - tt) > kJoinToleranceSeconds) {
      throw AlignmentError("frame " + std::to_string(i) + " timestamps differ: detections at " +
                           std::to_string(dt) + ", truth at " + std::to_string(tt));
    }
    CountSeries::Entry entry;
    entry.timestamp = dt;
    for (const DetectedObject& obj : detections[i].detections) {
      if (obj.object_type == ObjectType::Pedestrian) {
        ++entry.detected;
      }
    }
    for (const TruthObject& obj : truth[i].objects) {
      if (obj.object_class == "pedestrian" && obj.visible) {
        ++entry.ground_truth;
      }
    }
    series.entries.push_back(entry);
  }
  return series;
}

MetricsReport compute_metrics(const CountSeries& s) {
  MetricsReport report;
  report.frames = s.entries.size();
  for (const CountSeries::Entry& e : s.entries) {
    if (e.ground_truth >= 1) {
      ++report.positive_frames;
      if (e.detected >= 1) {
        ++report.detected_positive_frames;
      }
    }
    if (e.detected > e.ground_truth) {
      ++report.overcount_frames;
    }
    report.total_ground_truth += e.ground_truth;
    report.total_credited += std::min(e.detected, e.ground_truth);
  }
  report.frame_recall = frame_recall(s);
  report.person_count_recall = person_count_recall(s);
  report.false_alarm_rate = false_alarm_rate(s);
  return report;
}

std::string format_percent(double ratio) {
  const nlohmann::json exact = ratio * 100.0;
  std::ostringstream out;
  out << exact.dump() << "% (" << std::llround(ratio * 100.0) << "%)";
  return out.str();
}

std::string format_report(const MetricsReport& report) {
  std::ostringstream out;
  out << "frames: " << report.frames << '\n';
  out << "positive frames: " << report.positive_frames << '\n';
  out << "frame recall: " << report.detected_positive_frames << '/' << report.positive_frames
      << " = " << format_percent(report.frame_recall) << '\n';
  out << "person-count recall: " << report.total_credited << '/' << report.total_ground_truth
      << " = " << format_percent(report.person_count_recall) << '\n';
  out << "false-alarm rate (over all frames): " << report.overcount_frames << '/' << report.frames
      << " = " << format_percent(report.false_alarm_rate) << '\n';
  return out.str();
}

}  // namespace radpipe

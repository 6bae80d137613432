#include "radpipe/ego_motion.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "radpipe/errors.hpp"
#include "radpipe/geometry.hpp"

namespace radpipe {

PoseBuffer::PoseBuffer(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

void PoseBuffer::push(const StampedPose& pose) {
  std::unique_lock lock(mutex_);
  if (!poses_.empty() && pose.timestamp <= poses_.back().timestamp) {
    throw FrameOrder("pose timestamp " + std::to_string(pose.timestamp) +
                     " does not exceed newest stored pose " +
                     std::to_string(poses_.back().timestamp));
  }
  poses_.push_back(pose);
  while (poses_.size() > capacity_) {
    poses_.pop_front();
  }
}

std::vector<StampedPose> PoseBuffer::snapshot() const {
  std::shared_lock lock(mutex_);
  return {poses_.begin(), poses_.end()};
}

std::size_t PoseBuffer::size() const {
  std::shared_lock lock(mutex_);
  return poses_.size();
}

StampedPose interpolate_pose(const std::vector<StampedPose>& poses, double timestamp,
                             const InterpolationOptions& options) {
  if (poses.empty()) {
    throw PoseGap("no poses available");
  }
  if (timestamp < poses.front().timestamp) {
    throw PoseGap("query " + std::to_string(timestamp) + " precedes oldest pose " +
                  std::to_string(poses.front().timestamp));
  }
  if (timestamp > poses.back().timestamp) {
    if (timestamp - poses.back().timestamp > options.extrapolation_limit) {
      throw PoseGap("query " + std::to_string(timestamp) + " exceeds newest pose " +
                    std::to_string(poses.back().timestamp) + " by more than the limit");
    }
    StampedPose held = poses.back();
    held.timestamp = timestamp;
    return held;
  }
  const auto after = std::lower_bound(
      poses.begin(), poses.end(), timestamp,
      [](const StampedPose& pose, double t) { return pose.timestamp < t; });
  if (after->timestamp == timestamp) {
    return *after;
  }
  const StampedPose& hi = *after;
  const StampedPose& lo = *std::prev(after);
  const double alpha = (timestamp - lo.timestamp) / (hi.timestamp - lo.timestamp);
  StampedPose out;
  out.timestamp = timestamp;
  out.translation = (1.0 - alpha) * lo.translation + alpha * hi.translation;
  out.rotation = lo.rotation.slerp(alpha, hi.rotation).normalized();
  return out;
}

StampedPose interpolate_pose(const PoseBuffer& buffer, double timestamp,
                             const InterpolationOptions& options) {
  return interpolate_pose(buffer.snapshot(), timestamp, options);
}

RigidTransform relative_transform(const StampedPose& prev, const StampedPose& curr) {
  const RigidTransform world_from_prev{prev.rotation, prev.translation};
  const RigidTransform world_from_curr{curr.rotation, curr.translation};
  return world_from_curr.inverse().compose(world_from_prev);
}

RadarFrame accumulate(const RadarFrame& prev, const RadarFrame& curr,
                      const RigidTransform& curr_from_prev) {
  if (prev.timestamp >= curr.timestamp) {
    throw FrameOrder("previous frame at " + std::to_string(prev.timestamp) +
                     " does not precede current frame at " + std::to_string(curr.timestamp));
  }
  RadarFrame out;
  out.timestamp = curr.timestamp;
  out.points.reserve(curr.points.size() + prev.points.size());
  out.tags.reserve(curr.points.size() + prev.points.size());
  for (const RadarPoint& p : curr.points) {
    out.points.push_back(p);
    out.tags.push_back(SourceTag::Current);
  }
  for (const RadarPoint& p : prev.points) {
    out.points.push_back(apply_transform(curr_from_prev, p));
    out.tags.push_back(SourceTag::AccumulatedPrevious);
  }
  return out;
}

EgoState ego_velocity(const std::vector<StampedPose>& poses, double timestamp,
                      const VelocityOptions& options) {
  const double half = options.window / 2.0;
  const StampedPose* first = nullptr;
  const StampedPose* last = nullptr;
  for (const StampedPose& pose : poses) {
    if (pose.timestamp < timestamp - half || pose.timestamp > timestamp + half) {
      continue;
    }
    if (first == nullptr) {
      first = &pose;
    }
    last = &pose;
  }
  if (first == nullptr || last->timestamp <= first->timestamp) {
    throw PoseGap("fewer than two poses inside the velocity window around " +
                  std::to_string(timestamp));
  }
  const Eigen::Vector3d world_velocity =
      (last->translation - first->translation) / (last->timestamp - first->timestamp);

  // Orientation at the query time: interpolated when bracketed, otherwise
  // the nearest window endpoint.
  Eigen::Quaterniond orientation;
  if (timestamp <= first->timestamp) {
    orientation = first->rotation;
  } else if (timestamp >= last->timestamp) {
    orientation = last->rotation;
  } else {
    InterpolationOptions interp;
    orientation = interpolate_pose(poses, timestamp, interp).rotation;
  }
  return {orientation.conjugate() * world_velocity};
}

EgoState ego_velocity(const PoseBuffer& buffer, double timestamp,
                      const VelocityOptions& options) {
  return ego_velocity(buffer.snapshot(), timestamp, options);
}

double compensate_doppler(const RadarPoint& point, const EgoState& ego) {
  return point.doppler - ego.velocity.dot(los_unit_vector(point));
}

}  // namespace radpipe

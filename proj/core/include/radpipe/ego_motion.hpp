#pragma once

#include <deque>
#include <shared_mutex>
#include <vector>

#include <Eigen/Dense>

#include "radpipe/types.hpp"

namespace radpipe {

// Platform velocity expressed in the sensor frame at the query time.
struct EgoState {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

// Thread-safe store for timestamped sensor poses. One writer may push while
// any number of readers take snapshots. Timestamps must strictly increase;
// the oldest entries are evicted once capacity is exceeded.
class PoseBuffer {
 public:
  explicit PoseBuffer(std::size_t capacity = 256);

  // Appends a pose. Throws FrameOrder unless its timestamp exceeds the
  // newest stored pose.
  void push(const StampedPose& pose);

  // Copies the current contents, oldest first.
  std::vector<StampedPose> snapshot() const;

  std::size_t size() const;

 private:
  std::size_t capacity_;
  std::deque<StampedPose> poses_;
  mutable std::shared_mutex mutex_;
};

struct InterpolationOptions {
  // Maximum age (seconds) by which a query may exceed the newest pose and
  // still be answered by holding that pose.
  double extrapolation_limit = 0.050;
};

struct VelocityOptions {
  // Width (seconds) of the window centered on the query time used for
  // finite differencing.
  double window = 0.200;
};

// Pose at `timestamp` from a time-sorted pose list. Exact hits return the
// stored pose. Between neighbours, translation is interpolated linearly and
// rotation by shortest-arc spherical interpolation. Queries before the
// first pose, or past the newest by more than `extrapolation_limit`, throw
// PoseGap. Queries past the newest pose but within the limit hold that pose.
StampedPose interpolate_pose(const std::vector<StampedPose>& poses, double timestamp,
                             const InterpolationOptions& options = {});
StampedPose interpolate_pose(const PoseBuffer& buffer, double timestamp,
                             const InterpolationOptions& options = {});

// Transform mapping points from the frame at `prev` into the frame at
// `curr`: T = inverse(world_from_curr) * world_from_prev.
RigidTransform relative_transform(const StampedPose& prev, const StampedPose& curr);

// Merges `prev` into `curr`: current points first, then the previous points
// mapped through `curr_from_prev`. Doppler values of the previous frame are
// carried unchanged. Tags identify each point's source frame. Throws
// FrameOrder unless prev.timestamp < curr.timestamp.
RadarFrame accumulate(const RadarFrame& prev, const RadarFrame& curr,
                      const RigidTransform& curr_from_prev);

// Ego velocity at `timestamp` from finite differencing the first and last
// poses inside the centered window, rotated into the sensor frame at the
// query time. Throws PoseGap when fewer than two distinct-time poses fall
// inside the window.
EgoState ego_velocity(const std::vector<StampedPose>& poses, double timestamp,
                      const VelocityOptions& options = {});
EgoState ego_velocity(const PoseBuffer& buffer, double timestamp,
                      const VelocityOptions& options = {});

// Removes the ego-motion contribution from a measured Doppler value:
// compensated = doppler - v_ego . r_hat, with r_hat the unit line of sight
// from the sensor to the point. World-static points compensate to zero
// under the closing-positive convention.
double compensate_doppler(const RadarPoint& point, const EgoState& ego);

}  // namespace radpipe

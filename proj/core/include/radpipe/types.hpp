#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace radpipe {

/// One radar detection in the sensor frame (x forward, y left, z up).
///
/// Doppler is the radial velocity along the line of sight, positive when the
/// target is closing on the sensor. RCS is carried as the unitless value the
/// sensor reports. The vendor dynamic/static flag is preserved through the
/// pipeline but not consumed by any stage.
struct RadarPoint {
  double x = 0.0;        ///< meters, forward
  double y = 0.0;        ///< meters, left
  double z = 0.0;        ///< meters, up
  double doppler = 0.0;  ///< m/s, positive = closing
  double rcs = 0.0;      ///< unitless radar cross section
  bool dyn_flag = false; ///< vendor dynamic/static flag

  Eigen::Vector3d position() const { return {x, y, z}; }

  bool operator==(const RadarPoint&) const = default;
};

/// Origin of a point inside an accumulated cloud.
enum class SourceTag : std::uint8_t { Current, AccumulatedPrevious };

/// Timestamped point collection.
///
/// `tags` is either empty (every point is from the current sweep) or holds
/// one entry per point; accumulation fills it.
struct RadarFrame {
  double timestamp = 0.0;  ///< seconds, monotonic across a stream
  std::vector<RadarPoint> points;
  std::vector<SourceTag> tags;

  SourceTag tag(std::size_t i) const {
    return tags.empty() ? SourceTag::Current : tags[i];
  }
  std::size_t size() const { return points.size(); }
};

/// Rigid SE(3) transform: rotate, then translate.
struct RigidTransform {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform Identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  RigidTransform inverse() const {
    const Eigen::Quaterniond inv = rotation.conjugate();
    return {inv, inv * (-translation)};
  }

  /// this ∘ other: `other` is applied first. Rotation is renormalized.
  RigidTransform compose(const RigidTransform& other) const {
    Eigen::Quaterniond q = rotation * other.rotation;
    q.normalize();
    return {q, rotation * other.translation + translation};
  }
};

/// Timestamped world←sensor pose from the odometry stream.
struct StampedPose {
  double timestamp = 0.0;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();  ///< world frame, meters
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
};

}  // namespace radpipe

#include "radpipe/geometry.hpp"

#include <cmath>
#include <numbers>

#include "radpipe/errors.hpp"

namespace radpipe {

namespace {
constexpr double kDegPerRad = 180.0 / std::numbers::pi;
}

SphericalAngles spherical_angles(const RadarPoint& p) {
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
    throw DegeneratePoint("spherical_angles: point at sensor origin");
  }
  double azimuth = std::atan2(p.y, p.x) * kDegPerRad;
  if (azimuth <= -180.0) {
    azimuth += 360.0;  // atan2(-0.0, x<0) lands on -pi
  }
  const double horizontal = std::hypot(p.x, p.y);
  const double elevation = std::atan2(p.z, horizontal) * kDegPerRad;
  return {azimuth, elevation};
}

Eigen::Vector3d los_unit_vector(const RadarPoint& p) {
  const Eigen::Vector3d pos = p.position();
  const double norm = pos.norm();
  if (norm <= 1e-9) {
    throw DegeneratePoint("los_unit_vector: position norm below 1e-9 m");
  }
  return pos / norm;
}

RadarPoint apply_transform(const RigidTransform& t, const RadarPoint& p) {
  const Eigen::Vector3d moved = t.apply(p.position());
  RadarPoint out = p;
  out.x = moved.x();
  out.y = moved.y();
  out.z = moved.z();
  return out;
}

}  // namespace radpipe

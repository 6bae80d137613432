#pragma once

#include "radpipe/types.hpp"

namespace radpipe {

struct SphericalAngles {
  double azimuth_deg = 0.0;    ///< (-180, 180], positive toward +y
  double elevation_deg = 0.0;  ///< [-90, 90], positive toward +z
};

/// Line-of-sight angles of a point, in degrees.
/// Throws DegeneratePoint for a point exactly at the origin.
SphericalAngles spherical_angles(const RadarPoint& p);

/// Unit vector from the sensor to the point (r̂).
/// Throws DegeneratePoint when the position norm is below 1e-9 m.
Eigen::Vector3d los_unit_vector(const RadarPoint& p);

/// Rotates then translates the point position; doppler, rcs and the vendor
/// flag are copied unchanged.
RadarPoint apply_transform(const RigidTransform& t, const RadarPoint& p);

}  // namespace radpipe

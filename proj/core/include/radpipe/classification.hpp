#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "radpipe/clustering.hpp"

namespace radpipe {

enum class ObjectType : std::uint8_t { Pedestrian, LargeObject, Unknown };
enum class Motion : std::uint8_t { Static, Dynamic };
enum class Heading : std::uint8_t { Approaching, Receding, None };

std::string_view to_string(ObjectType t);
std::string_view to_string(Motion m);
std::string_view to_string(Heading h);

// Axis-aligned box in the sensor frame. Width spans y, length spans x,
// height spans z.
struct BoundingBox {
  double w = 0.0;
  double l = 0.0;
  double h = 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
};

struct ClassifierRules {
  double ped_w_min = 0.5;
  double ped_w_max = 1.0;
  double ped_h_max = 2.0;
  double ped_l_max = 1.0;
  double ped_rcs_abs_max = 10.0;
  double large_extent_min = 1.5;
  double large_rcs_min = 25.0;
  // Speed below which a cluster counts as static.
  double v_static = 0.25;
};

struct DetectedObject {
  ObjectType object_type = ObjectType::Unknown;
  Motion motion = Motion::Static;
  Heading heading = Heading::None;
  BoundingBox box;
  ClusterDescriptors descriptors;
  double frame_timestamp = 0.0;
};

// Extents and centroid of a cluster. Throws EmptyCluster.
BoundingBox bounding_box(const Cluster& c);

// Deterministic rule-based typing. Pedestrian when the box fits the
// pedestrian envelope and |modal_rcs| is moderate; otherwise large_object
// when the footprint or modal RCS is large; otherwise unknown. Motion is
// dynamic when |comp_mean_doppler| exceeds v_static; heading follows the
// sign of comp_mean_doppler (positive closes) and is none iff static.
DetectedObject classify(const BoundingBox& box, const ClusterDescriptors& descriptors,
                        const ClassifierRules& rules);

}  // namespace radpipe

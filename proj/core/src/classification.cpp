#include "radpipe/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radpipe/errors.hpp"

namespace radpipe {

std::string_view to_string(ObjectType t) {
  switch (t) {
    case ObjectType::Pedestrian:
      return "pedestrian";
    case ObjectType::LargeObject:
      return "large_object";
    case ObjectType::Unknown:
      break;
  }
  return "unknown";
}

std::string_view to_string(Motion m) {
  return m == Motion::Dynamic ? "dynamic" : "static";
}

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::Approaching:
      return "approaching";
    case Heading::Receding:
      return "receding";
    case Heading::None:
      break;
  }
  return "none";
}

BoundingBox bounding_box(const Cluster& c) {
  if (c.points.empty()) {
    throw EmptyCluster("bounding_box on empty cluster");
  }
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const RadarPoint& p : c.points) {
    const Eigen::Vector3d pos = p.position();
    lo = lo.cwiseMin(pos);
    hi = hi.cwiseMax(pos);
    sum += pos;
  }
  BoundingBox box;
  box.l = hi.x() - lo.x();
  box.w = hi.y() - lo.y();
  box.h = hi.z() - lo.z();
  box.centroid = sum / static_cast<double>(c.points.size());
  return box;
}

DetectedObject classify(const BoundingBox& box, const ClusterDescriptors& descriptors,
                        const ClassifierRules& rules) {
  DetectedObject obj;
  obj.box = box;
  obj.descriptors = descriptors;

  const bool pedestrian_fit = box.w >= rules.ped_w_min && box.w <= rules.ped_w_max &&
                              box.h <= rules.ped_h_max && box.l <= rules.ped_l_max &&
                              std::abs(descriptors.modal_rcs) <= rules.ped_rcs_abs_max;
  if (pedestrian_fit) {
    obj.object_type = ObjectType::Pedestrian;
  } else if (std::max(box.w, box.l) >= rules.large_extent_min ||
             descriptors.modal_rcs >= rules.large_rcs_min) {
    obj.object_type = ObjectType::LargeObject;
  } else {
    obj.object_type = ObjectType::Unknown;
  }

  if (std::abs(descriptors.comp_mean_doppler) > rules.v_static) {
    obj.motion = Motion::Dynamic;
    obj.heading = descriptors.comp_mean_doppler > 0.0 ? Heading::Approaching : Heading::Receding;
  } else {
    obj.motion = Motion::Static;
    obj.heading = Heading::None;
  }
  return obj;
}

}  // namespace radpipe

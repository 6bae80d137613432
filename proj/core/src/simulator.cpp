#include "radpipe/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "radpipe/errors.hpp"
#include "radpipe/filtering.hpp"
#include "radpipe/geometry.hpp"
#include "radpipe/random.hpp"

namespace radpipe {

namespace {

constexpr double kPoseRateHz = 100.0;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double path_length(const WaypointPath& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    total += (path.waypoints[i] - path.waypoints[i - 1]).norm();
  }
  return total;
}

// Direction of travel at `elapsed`; falls back to the last segment once the
// path is exhausted, and to zero for degenerate paths.
Eigen::Vector3d path_direction(const WaypointPath& path, double elapsed) {
  if (path.waypoints.size() < 2 || path.speed <= 0.0) {
    return Eigen::Vector3d::Zero();
  }
  double remaining = path.speed * std::max(0.0, elapsed);
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Eigen::Vector3d segment = path.waypoints[i] - path.waypoints[i - 1];
    const double length = segment.norm();
    if (length <= 0.0) {
      continue;
    }
    if (remaining <= length) {
      return segment / length;
    }
    remaining -= length;
  }
  for (std::size_t i = path.waypoints.size(); i-- > 1;) {
    const Eigen::Vector3d segment = path.waypoints[i] - path.waypoints[i - 1];
    if (segment.norm() > 0.0) {
      return segment.normalized();
    }
  }
  return Eigen::Vector3d::Zero();
}

Eigen::Quaterniond heading_rotation(const WaypointPath& path, double elapsed) {
  const Eigen::Vector3d dir = path_direction(path, elapsed);
  if (dir.head<2>().norm() <= 0.0) {
    return Eigen::Quaterniond::Identity();
  }
  const double yaw = std::atan2(dir.y(), dir.x());
  return Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));
}

struct EgoSample {
  Eigen::Vector3d position;
  Eigen::Quaterniond rotation;
  Eigen::Vector3d velocity;
};

EgoSample sample_ego(const WaypointPath& path, double t) {
  return {path_position(path, t), heading_rotation(path, t), path_velocity(path, t)};
}

// Sensor-frame point from a world position plus its measured quantities.
RadarPoint make_point(const Eigen::Vector3d& world_position, const Eigen::Vector3d& object_velocity,
                      const EgoSample& ego, double rcs, bool dyn_flag, double noise_sigma,
                      RandomSource& rng) {
  const Eigen::Vector3d sensor_position =
      ego.rotation.conjugate() * (world_position - ego.position);
  RadarPoint p{sensor_position.x(), sensor_position.y(), sensor_position.z(), 0.0, rcs, dyn_flag};
  const double range = sensor_position.norm();
  double doppler = 0.0;
  if (range > 1e-9) {
    const Eigen::Vector3d relative =
        ego.rotation.conjugate() * (ego.velocity - object_velocity);
    doppler = relative.dot(sensor_position / range);
  }
  p.doppler = doppler + rng.normal(0.0, noise_sigma);
  return p;
}

Eigen::Vector3d direction_from_angles(double azimuth_deg, double elevation_deg) {
  const double az = azimuth_deg / kDegPerRad;
  const double el = elevation_deg / kDegPerRad;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

bool inside_angular_bounds(const FilterProfile& profile, const Eigen::Vector3d& sensor_position) {
  if (sensor_position.norm() <= 1e-9) {
    return false;
  }
  const double az = std::atan2(sensor_position.y(), sensor_position.x()) * kDegPerRad;
  const double el =
      std::atan2(sensor_position.z(), sensor_position.head<2>().norm()) * kDegPerRad;
  return az >= profile.az_min && az <= profile.az_max && el >= profile.el_min &&
         el <= profile.el_max;
}

}  // namespace

Eigen::Vector3d path_position(const WaypointPath& path, double elapsed) {
  if (path.waypoints.empty()) {
    return Eigen::Vector3d::Zero();
  }
  if (path.waypoints.size() == 1 || path.speed <= 0.0 || elapsed <= 0.0) {
    return path.waypoints.front();
  }
  double remaining = path.speed * elapsed;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Eigen::Vector3d segment = path.waypoints[i] - path.waypoints[i - 1];
    const double length = segment.norm();
    if (remaining <= length) {
      return length > 0.0 ? Eigen::Vector3d(path.waypoints[i - 1] + segment * (remaining / length))
                          : path.waypoints[i];
    }
    remaining -= length;
  }
  return path.waypoints.back();
}

Eigen::Vector3d path_velocity(const WaypointPath& path, double elapsed) {
  if (path.speed <= 0.0 || elapsed < 0.0) {
    return Eigen::Vector3d::Zero();
  }
  if (path.speed * elapsed >= path_length(path)) {
    return Eigen::Vector3d::Zero();
  }
  return path_direction(path, elapsed) * path.speed;
}

void validate_scene(const SceneConfig& cfg) {
  if (!(cfg.duration >= 0.0)) {
    throw ConfigError("scene duration must be nonnegative");
  }
  if (!(cfg.frame_rate > 0.0)) {
    throw ConfigError("scene frame_rate must be positive");
  }
  if (!(cfg.doppler_noise >= 0.0)) {
    throw ConfigError("scene doppler_noise must be nonnegative");
  }
  if (!(cfg.clutter_rate >= 0.0) || !(cfg.ghost_rate >= 0.0)) {
    throw ConfigError("scene clutter_rate and ghost_rate must be nonnegative");
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (!(cfg.clutter_min[axis] < cfg.clutter_max[axis])) {
      throw ConfigError("scene clutter box must have min < max on every axis");
    }
  }
  try {
    builtin_profile(cfg.profile);
  } catch (const UnknownProfile&) {
    throw ConfigError("scene profile must name a builtin profile, got: " + cfg.profile);
  }
  for (const PedestrianConfig& ped : cfg.pedestrians) {
    if (ped.path.waypoints.empty()) {
      throw ConfigError("pedestrian path needs at least one waypoint");
    }
    if (!(ped.path.speed >= 0.0)) {
      throw ConfigError("pedestrian speed must be nonnegative");
    }
    if (ped.points_min < 0 || ped.points_max < ped.points_min) {
      throw ConfigError("pedestrian points_per_frame range is invalid");
    }
    if (!(ped.spread >= 0.0) || !(ped.height > 0.0)) {
      throw ConfigError("pedestrian spread/height out of range");
    }
  }
  for (const WallConfig& wall : cfg.walls) {
    if (!(wall.density >= 0.0)) {
      throw ConfigError("wall density must be nonnegative");
    }
    if (wall.edge_u.cross(wall.edge_v).norm() <= 0.0) {
      throw ConfigError("wall edges must span a nondegenerate patch");
    }
  }
  if (cfg.ego.waypoints.empty()) {
    throw ConfigError("ego path needs at least one waypoint");
  }
  if (!(cfg.ego.speed >= 0.0)) {
    throw ConfigError("ego speed must be nonnegative");
  }
}

SceneOutput generate_scene(const SceneConfig& cfg) {
  validate_scene(cfg);
  const FilterProfile profile = builtin_profile(cfg.profile);
  RandomSource rng(cfg.seed);
  SceneOutput out;

  const auto pose_count = static_cast<std::size_t>(cfg.duration * kPoseRateHz + 1e-9) + 1;
  out.poses.reserve(pose_count);
  for (std::size_t j = 0; j < pose_count; ++j) {
    const double t = static_cast<double>(j) / kPoseRateHz;
    const EgoSample ego = sample_ego(cfg.ego, t);
    out.poses.push_back({t, ego.position, ego.rotation});
  }

  const auto frame_count = static_cast<std::size_t>(cfg.duration * cfg.frame_rate + 1e-9);
  out.frames.reserve(frame_count);
  out.truth.reserve(frame_count);
  for (std::size_t k = 0; k < frame_count; ++k) {
    const double t = static_cast<double>(k) / cfg.frame_rate;
    const EgoSample ego = sample_ego(cfg.ego, t);
    RadarFrame frame;
    frame.timestamp = t;
    TruthFrame truth;
    truth.timestamp = t;
    int next_id = 0;

    for (const PedestrianConfig& ped : cfg.pedestrians) {
      const Eigen::Vector3d feet = path_position(ped.path, t);
      const Eigen::Vector3d velocity = path_velocity(ped.path, t);
      const bool moving = velocity.norm() > 0.0;
      const int count = rng.uniform_int(ped.points_min, ped.points_max);
      for (int i = 0; i < count; ++i) {
        Eigen::Vector3d world = feet;
        world.x() += rng.normal(0.0, ped.spread);
        world.y() += rng.normal(0.0, ped.spread);
        world.z() += rng.uniform() * ped.height;
        const double rcs = rng.normal(2.0, 2.0);
        frame.points.push_back(
            make_point(world, velocity, ego, rcs, moving, cfg.doppler_noise, rng));
      }
      const Eigen::Vector3d center_world = feet + Eigen::Vector3d(0, 0, ped.height / 2.0);
      TruthObject obj;
      obj.id = next_id++;
      obj.object_class = "pedestrian";
      obj.centroid = ego.rotation.conjugate() * (center_world - ego.position);
      obj.velocity = ego.rotation.conjugate() * velocity;
      obj.visible = inside_angular_bounds(profile, obj.centroid);
      truth.objects.push_back(std::move(obj));
    }

    for (const WallConfig& wall : cfg.walls) {
      const double area = wall.edge_u.cross(wall.edge_v).norm();
      const auto count = static_cast<long>(std::lround(wall.density * area));
      for (long i = 0; i < count; ++i) {
        const Eigen::Vector3d world =
            wall.corner + rng.uniform() * wall.edge_u + rng.uniform() * wall.edge_v;
        const double rcs = rng.normal(35.0, 5.0);
        frame.points.push_back(make_point(world, Eigen::Vector3d::Zero(), ego, rcs, false,
                                          cfg.doppler_noise, rng));
      }
      const Eigen::Vector3d center_world = wall.corner + 0.5 * wall.edge_u + 0.5 * wall.edge_v;
      TruthObject obj;
      obj.id = next_id++;
      obj.object_class = "wall";
      obj.centroid = ego.rotation.conjugate() * (center_world - ego.position);
      obj.velocity = Eigen::Vector3d::Zero();
      obj.visible = inside_angular_bounds(profile, obj.centroid);
      truth.objects.push_back(std::move(obj));
    }

    const int clutter_count = rng.poisson(cfg.clutter_rate);
    for (int i = 0; i < clutter_count; ++i) {
      Eigen::Vector3d sensor_position;
      for (int axis = 0; axis < 3; ++axis) {
        sensor_position[axis] =
            cfg.clutter_min[axis] + rng.uniform() * (cfg.clutter_max[axis] - cfg.clutter_min[axis]);
      }
      // Clutter is world-static at its instantaneous location.
      const Eigen::Vector3d world = ego.rotation * sensor_position + ego.position;
      const double rcs = rng.uniform(-5.0, 55.0);
      frame.points.push_back(
          make_point(world, Eigen::Vector3d::Zero(), ego, rcs, false, cfg.doppler_noise, rng));
    }

    const int ghost_count = rng.poisson(cfg.ghost_rate);
    for (int i = 0; i < ghost_count; ++i) {
      const bool violate_rcs = rng.uniform() <= 0.5;
      double azimuth;
      double rcs;
      if (violate_rcs) {
        azimuth = rng.uniform(profile.az_min, profile.az_max);
        rcs = profile.rcs_max + rng.uniform(0.5, 20.0);
      } else {
        const bool high_side = rng.uniform() <= 0.5;
        azimuth = high_side ? profile.az_max + rng.uniform(1.0, 10.0)
                            : profile.az_min - rng.uniform(1.0, 10.0);
        rcs = rng.uniform(profile.rcs_min + 0.5, profile.rcs_max - 0.5);
      }
      const double elevation = rng.uniform(profile.el_min, profile.el_max);
      const double range = rng.uniform(1.0, 30.0);
      const Eigen::Vector3d sensor_position = range * direction_from_angles(azimuth, elevation);
      const Eigen::Vector3d world = ego.rotation * sensor_position + ego.position;
      frame.points.push_back(
          make_point(world, Eigen::Vector3d::Zero(), ego, rcs, false, cfg.doppler_noise, rng));
    }

    out.frames.push_back(std::move(frame));
    out.truth.push_back(std::move(truth));
  }
  return out;
}

}  // namespace radpipe

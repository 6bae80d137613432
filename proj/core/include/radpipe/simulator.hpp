#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "radpipe/types.hpp"

namespace radpipe {

// Piecewise-linear path followed at constant speed, parameterized by arc
// length; the mover holds the final waypoint once the path is exhausted.
struct WaypointPath {
  std::vector<Eigen::Vector3d> waypoints;
  double speed = 0.0;
};

struct PedestrianConfig {
  // Waypoints give the feet position in the world frame.
  WaypointPath path;
  int points_min = 5;
  int points_max = 15;
  // Horizontal per-axis Gaussian spread of the returned points.
  double spread = 0.15;
  // Body height; point heights are uniform over [feet, feet + height].
  double height = 1.7;
};

// Planar parallelogram patch: corner + a*edge_u + b*edge_v, a,b in [0,1).
// Each frame resamples round(density * area) world-static points.
struct WallConfig {
  Eigen::Vector3d corner = Eigen::Vector3d::Zero();
  Eigen::Vector3d edge_u = Eigen::Vector3d::UnitY();
  Eigen::Vector3d edge_v = Eigen::Vector3d::UnitZ();
  // Points per square meter per frame.
  double density = 4.0;
};

struct SceneConfig {
  double duration = 10.0;
  double frame_rate = 15.0;
  std::uint64_t seed = 0;
  // Ghosts and visibility are generated against this builtin profile.
  std::string profile = "indoor";
  // Standard deviation of the additive Doppler noise, m/s.
  double doppler_noise = 0.05;
  // Expected uniform noise points per frame (Poisson).
  double clutter_rate = 0.0;
  // Expected out-of-profile multipath points per frame (Poisson).
  double ghost_rate = 0.0;
  // Sensor-frame box the clutter is drawn from.
  Eigen::Vector3d clutter_min{1.0, -6.0, -1.0};
  Eigen::Vector3d clutter_max{30.0, 6.0, 3.0};
  std::vector<PedestrianConfig> pedestrians;
  std::vector<WallConfig> walls;
  WaypointPath ego;
};

struct TruthObject {
  int id = 0;
  std::string object_class;
  // Sensor-frame position of the object center at the frame time.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  // World velocity expressed in sensor-frame axes.
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  // True when the centroid lies inside the profile's angular bounds.
  bool visible = false;
};

struct TruthFrame {
  double timestamp = 0.0;
  std::vector<TruthObject> objects;
};

struct SceneOutput {
  std::vector<RadarFrame> frames;
  std::vector<StampedPose> poses;
  std::vector<TruthFrame> truth;
};

// Position along the path after `elapsed` seconds, clamped to the ends.
Eigen::Vector3d path_position(const WaypointPath& path, double elapsed);

// Velocity along the path at `elapsed` seconds; zero when stationary,
// clamped, or degenerate.
Eigen::Vector3d path_velocity(const WaypointPath& path, double elapsed);

// Throws ConfigError when any field violates its documented range.
void validate_scene(const SceneConfig& cfg);

// Deterministic synthesis of frames (at frame_rate), 100 Hz poses, and
// per-frame ground truth from a seeded generator. Object Doppler follows
// the closing-positive convention: (v_ego - v_object) . r_hat plus Gaussian
// noise. Ghost points violate the profile's RCS or azimuth bounds by
// construction.
SceneOutput generate_scene(const SceneConfig& cfg);

}  // namespace radpipe

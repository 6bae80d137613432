#include "radpipe/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "radpipe/errors.hpp"
#include "radpipe/filtering.hpp"

namespace radpipe {

namespace {

using json = nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

void require_object(const json& value, const std::string& where) {
  if (!value.is_object()) {
    throw ConfigError(where + " must be an object");
  }
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

double number_at(const json& object, const char* key, double fallback, const std::string& where) {
  if (!object.contains(key)) {
    return fallback;
  }
  if (!object[key].is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  const double value = object[key].get<double>();
  if (!std::isfinite(value)) {
    throw ConfigError(where + "." + key + " must be finite");
  }
  return value;
}

FilterProfile parse_profile(const json& object, std::optional<FilterProfile> base,
                            const std::string& where) {
  require_object(object, where);
  reject_unknown_keys(
      object, {"rcs_min", "rcs_max", "az_min", "az_max", "el_min", "el_max", "v_min", "v_max"},
      where);
  if (!base.has_value()) {
    for (const char* key :
         {"rcs_min", "rcs_max", "az_min", "az_max", "el_min", "el_max", "v_min", "v_max"}) {
      if (!object.contains(key)) {
        throw ConfigError(where + " defines a new profile and must set " + key);
      }
    }
    base = FilterProfile{};
  }
  FilterProfile profile = *base;
  profile.rcs_min = number_at(object, "rcs_min", profile.rcs_min, where);
  profile.rcs_max = number_at(object, "rcs_max", profile.rcs_max, where);
  profile.az_min = number_at(object, "az_min", profile.az_min, where);
  profile.az_max = number_at(object, "az_max", profile.az_max, where);
  profile.el_min = number_at(object, "el_min", profile.el_min, where);
  profile.el_max = number_at(object, "el_max", profile.el_max, where);
  profile.v_min = number_at(object, "v_min", profile.v_min, where);
  profile.v_max = number_at(object, "v_max", profile.v_max, where);
  if (!(profile.rcs_min < profile.rcs_max) || !(profile.az_min < profile.az_max) ||
      !(profile.el_min < profile.el_max) || !(profile.v_min < profile.v_max)) {
    throw ConfigError(where + " must have min < max for every bound pair");
  }
  return profile;
}

Eigen::Vector3d parse_vector3(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 3) {
    throw ConfigError(where + " must be an array of 3 numbers");
  }
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!value[i].is_number()) {
      throw ConfigError(where + " must contain numbers");
    }
    out[i] = value[i].get<double>();
    if (!std::isfinite(out[i])) {
      throw ConfigError(where + " must be finite");
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> parse_waypoints(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError(where + " must be a non-empty array of [x,y,z] waypoints");
  }
  std::vector<Eigen::Vector3d> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(parse_vector3(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void apply_clustering(const json& object, ClusteringParams* params) {
  require_object(object, "clustering");
  reject_unknown_keys(object, {"d_th", "min_points", "rcs_bin_width"}, "clustering");
  params->d_th = number_at(object, "d_th", params->d_th, "clustering");
  params->rcs_bin_width = number_at(object, "rcs_bin_width", params->rcs_bin_width, "clustering");
  if (object.contains("min_points")) {
    if (!object["min_points"].is_number_unsigned() || object["min_points"].get<double>() < 1) {
      throw ConfigError("clustering.min_points must be a positive integer");
    }
    params->min_points = object["min_points"].get<std::size_t>();
  }
  if (!(params->d_th > 0.0)) {
    throw ConfigError("clustering.d_th must be positive");
  }
  if (!(params->rcs_bin_width > 0.0)) {
    throw ConfigError("clustering.rcs_bin_width must be positive");
  }
}

void apply_retention(const json& object, RetentionRules* rules, bool* rcs_explicit) {
  require_object(object, "retention");
  reject_unknown_keys(object, {"v_min_retain", "rcs_retain_min", "rcs_retain_max"}, "retention");
  rules->v_min_retain = number_at(object, "v_min_retain", rules->v_min_retain, "retention");
  if (object.contains("rcs_retain_min")) {
    rules->rcs_retain_min = number_at(object, "rcs_retain_min", 0.0, "retention");
    *rcs_explicit = true;
  }
  if (object.contains("rcs_retain_max")) {
    rules->rcs_retain_max = number_at(object, "rcs_retain_max", 0.0, "retention");
    *rcs_explicit = true;
  }
  if (!(rules->v_min_retain >= 0.0)) {
    throw ConfigError("retention.v_min_retain must be nonnegative");
  }
}

void apply_classifier(const json& object, ClassifierRules* rules) {
  require_object(object, "classifier");
  reject_unknown_keys(object,
                      {"ped_w_min", "ped_w_max", "ped_h_max", "ped_l_max", "ped_rcs_abs_max",
                       "large_extent_min", "large_rcs_min", "v_static"},
                      "classifier");
  rules->ped_w_min = number_at(object, "ped_w_min", rules->ped_w_min, "classifier");
  rules->ped_w_max = number_at(object, "ped_w_max", rules->ped_w_max, "classifier");
  rules->ped_h_max = number_at(object, "ped_h_max", rules->ped_h_max, "classifier");
  rules->ped_l_max = number_at(object, "ped_l_max", rules->ped_l_max, "classifier");
  rules->ped_rcs_abs_max = number_at(object, "ped_rcs_abs_max", rules->ped_rcs_abs_max, "classifier");
  rules->large_extent_min = number_at(object, "large_extent_min", rules->large_extent_min, "classifier");
  rules->large_rcs_min = number_at(object, "large_rcs_min", rules->large_rcs_min, "classifier");
  rules->v_static = number_at(object, "v_static", rules->v_static, "classifier");
  for (double value : {rules->ped_w_min, rules->ped_w_max, rules->ped_h_max, rules->ped_l_max,
                       rules->ped_rcs_abs_max, rules->large_extent_min, rules->large_rcs_min,
                       rules->v_static}) {
    if (!(value > 0.0)) {
      throw ConfigError("classifier thresholds must be positive");
    }
  }
  if (!(rules->ped_w_min < rules->ped_w_max)) {
    throw ConfigError("classifier.ped_w_min must be below ped_w_max");
  }
}

void apply_pipeline(const json& object, PipelineConfig* config) {
  require_object(object, "pipeline");
  reject_unknown_keys(object, {"doppler_sign"}, "pipeline");
  if (object.contains("doppler_sign")) {
    if (!object["doppler_sign"].is_string()) {
      throw ConfigError("pipeline.doppler_sign must be a string");
    }
    const std::string sign = object["doppler_sign"].get<std::string>();
    if (sign == "closing_positive") {
      config->doppler_sign = DopplerSign::ClosingPositive;
    } else if (sign == "receding_positive") {
      config->doppler_sign = DopplerSign::RecedingPositive;
    } else {
      throw ConfigError("pipeline.doppler_sign must be closing_positive or receding_positive");
    }
  }
}

void apply_ego(const json& object, PipelineConfig* config) {
  require_object(object, "ego");
  reject_unknown_keys(object, {"extrapolation_limit", "velocity_window"}, "ego");
  config->interpolation.extrapolation_limit = number_at(
      object, "extrapolation_limit", config->interpolation.extrapolation_limit, "ego");
  config->velocity.window = number_at(object, "velocity_window", config->velocity.window, "ego");
  if (!(config->interpolation.extrapolation_limit >= 0.0)) {
    throw ConfigError("ego.extrapolation_limit must be nonnegative");
  }
  if (!(config->velocity.window > 0.0)) {
    throw ConfigError("ego.velocity_window must be positive");
  }
}

}  // namespace

PipelineConfig default_pipeline_config(const std::string& profile_name) {
  PipelineConfig config;
  config.profile = builtin_profile(profile_name);
  config.retention.rcs_retain_min = config.profile.rcs_min;
  config.retention.rcs_retain_max = config.profile.rcs_max;
  return config;
}

PipelineConfig load_pipeline_config(const std::string& path, const std::string& profile_name) {
  const json root = load_json_file(path);
  require_object(root, "config root");
  reject_unknown_keys(root, {"profile", "clustering", "retention", "classifier", "pipeline", "ego"},
                      "config root");

  std::map<std::string, FilterProfile> profiles{{"indoor", builtin_profile("indoor")},
                                                {"outdoor", builtin_profile("outdoor")}};
  if (root.contains("profile")) {
    require_object(root["profile"], "profile");
    for (const auto& [name, overrides] : root["profile"].items()) {
      const auto existing = profiles.find(name);
      const std::optional<FilterProfile> base =
          existing != profiles.end() ? std::optional<FilterProfile>(existing->second)
                                     : std::nullopt;
      profiles[name] = parse_profile(overrides, base, "profile." + name);
    }
  }
  const auto active = profiles.find(profile_name);
  if (active == profiles.end()) {
    throw UnknownProfile("profile '" + profile_name + "' is neither builtin nor configured");
  }

  PipelineConfig config;
  config.profile = active->second;
  bool rcs_retention_explicit = false;
  if (root.contains("clustering")) {
    apply_clustering(root["clustering"], &config.clustering);
  }
  if (root.contains("retention")) {
    apply_retention(root["retention"], &config.retention, &rcs_retention_explicit);
  }
  if (root.contains("classifier")) {
    apply_classifier(root["classifier"], &config.classifier);
  }
  if (root.contains("pipeline")) {
    apply_pipeline(root["pipeline"], &config);
  }
  if (root.contains("ego")) {
    apply_ego(root["ego"], &config);
  }
  if (!rcs_retention_explicit) {
    config.retention.rcs_retain_min = config.profile.rcs_min;
    config.retention.rcs_retain_max = config.profile.rcs_max;
  }
  if (!(config.retention.rcs_retain_min < config.retention.rcs_retain_max)) {
    throw ConfigError("retention RCS window must have min < max");
  }
  return config;
}

SceneConfig load_scene_config(const std::string& path) {
  const json root = load_json_file(path);
  require_object(root, "scene root");
  reject_unknown_keys(root,
                      {"duration", "frame_rate", "seed", "profile", "doppler_noise",
                       "clutter_rate", "ghost_rate", "clutter_box", "pedestrians", "walls", "ego"},
                      "scene root");
  SceneConfig cfg;
  cfg.duration = number_at(root, "duration", cfg.duration, "scene");
  cfg.frame_rate = number_at(root, "frame_rate", cfg.frame_rate, "scene");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      throw ConfigError("scene.seed must be a nonnegative integer");
    }
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("profile")) {
    if (!root["profile"].is_string()) {
      throw ConfigError("scene.profile must be a string");
    }
    cfg.profile = root["profile"].get<std::string>();
  }
  cfg.doppler_noise = number_at(root, "doppler_noise", cfg.doppler_noise, "scene");
  cfg.clutter_rate = number_at(root, "clutter_rate", cfg.clutter_rate, "scene");
  cfg.ghost_rate = number_at(root, "ghost_rate", cfg.ghost_rate, "scene");
  if (root.contains("clutter_box")) {
    require_object(root["clutter_box"], "clutter_box");
    reject_unknown_keys(root["clutter_box"], {"min", "max"}, "clutter_box");
    if (!root["clutter_box"].contains("min") || !root["clutter_box"].contains("max")) {
      throw ConfigError("clutter_box must set min and max");
    }
    cfg.clutter_min = parse_vector3(root["clutter_box"]["min"], "clutter_box.min");
    cfg.clutter_max = parse_vector3(root["clutter_box"]["max"], "clutter_box.max");
  }
  if (root.contains("pedestrians")) {
    if (!root["pedestrians"].is_array()) {
      throw ConfigError("scene.pedestrians must be an array");
    }
    for (std::size_t i = 0; i < root["pedestrians"].size(); ++i) {
      const json& entry = root["pedestrians"][i];
      const std::string where = "pedestrians[" + std::to_string(i) + "]";
      require_object(entry, where);
      reject_unknown_keys(entry, {"waypoints", "speed", "points_min", "points_max", "spread", "height"},
                          where);
      if (!entry.contains("waypoints")) {
        throw ConfigError(where + " must set waypoints");
      }
      PedestrianConfig ped;
      ped.path.waypoints = parse_waypoints(entry["waypoints"], where + ".waypoints");
      ped.path.speed = number_at(entry, "speed", 0.0, where);
      ped.points_min = static_cast<int>(number_at(entry, "points_min", ped.points_min, where));
      ped.points_max = static_cast<int>(number_at(entry, "points_max", ped.points_max, where));
      ped.spread = number_at(entry, "spread", ped.spread, where);
      ped.height = number_at(entry, "height", ped.height, where);
      cfg.pedestrians.push_back(std::move(ped));
    }
  }
  if (root.contains("walls")) {
    if (!root["walls"].is_array()) {
      throw ConfigError("scene.walls must be an array");
    }
    for (std::size_t i = 0; i < root["walls"].size(); ++i) {
      const json& entry = root["walls"][i];
      const std::string where = "walls[" + std::to_string(i) + "]";
      require_object(entry, where);
      reject_unknown_keys(entry, {"corner", "edge_u", "edge_v", "density"}, where);
      for (const char* key : {"corner", "edge_u", "edge_v"}) {
        if (!entry.contains(key)) {
          throw ConfigError(where + " must set " + key);
        }
      }
      WallConfig wall;
      wall.corner = parse_vector3(entry["corner"], where + ".corner");
      wall.edge_u = parse_vector3(entry["edge_u"], where + ".edge_u");
      wall.edge_v = parse_vector3(entry["edge_v"], where + ".edge_v");
      wall.density = number_at(entry, "density", wall.density, where);
      cfg.walls.push_back(std::move(wall));
    }
  }
  if (root.contains("ego")) {
    require_object(root["ego"], "ego");
    reject_unknown_keys(root["ego"], {"waypoints", "speed"}, "ego");
    if (!root["ego"].contains("waypoints")) {
      throw ConfigError("ego must set waypoints");
    }
    cfg.ego.waypoints = parse_waypoints(root["ego"]["waypoints"], "ego.waypoints");
    cfg.ego.speed = number_at(root["ego"], "speed", 0.0, "ego");
  } else {
    cfg.ego.waypoints = {Eigen::Vector3d::Zero()};
    cfg.ego.speed = 0.0;
  }
  validate_scene(cfg);
  return cfg;
}

}  // namespace radpipe

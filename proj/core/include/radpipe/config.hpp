#pragma once

#include <string>

#include "radpipe/pipeline.hpp"
#include "radpipe/simulator.hpp"

namespace radpipe {

// Pipeline configuration with the named profile active and everything else
// at its documented default. `profile_name` must be builtin.
PipelineConfig default_pipeline_config(const std::string& profile_name = "indoor");

// Loads a JSON pipeline config. Recognized top-level keys: "profile" (a map
// of profile name to threshold overrides; builtin names may be partially
// overridden, new names must give every bound), "clustering", "retention",
// "classifier", "pipeline", "ego". Unknown keys at any level are
// ConfigError. `profile_name` selects the active profile among builtins and
// file-defined ones; unknown names throw UnknownProfile. Retention RCS
// bounds default to the active profile's RCS bounds unless set explicitly.
PipelineConfig load_pipeline_config(const std::string& path, const std::string& profile_name);

// Loads a JSON scene description for the simulator. Recognized keys:
// "duration", "frame_rate", "seed", "profile", "doppler_noise",
// "clutter_rate", "ghost_rate", "clutter_box" {"min","max"}, "pedestrians"
// (list of {"waypoints","speed","points_min","points_max","spread",
// "height"}), "walls" (list of {"corner","edge_u","edge_v","density"}),
// "ego" {"waypoints","speed"}. Unknown keys or invalid values are
// ConfigError.
SceneConfig load_scene_config(const std::string& path);

}  // namespace radpipe

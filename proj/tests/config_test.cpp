#include "radpipe/config.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "radpipe/errors.hpp"

namespace radpipe {
namespace {

class ConfigTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("radpipe_config_test_" + std::to_string(::getpid()) + "_" +
            testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write_json(const std::string& name, const std::string& text) {
    const std::string p = (dir_ / name).string();
    std::ofstream out(p);
    out << text;
    return p;
  }

  std::filesystem::path dir_;
};

TEST_F(ConfigTest, DefaultsFollowActiveProfile) {
  const PipelineConfig indoor = default_pipeline_config();
  EXPECT_DOUBLE_EQ(indoor.profile.az_max, 5.0);
  EXPECT_DOUBLE_EQ(indoor.retention.rcs_retain_min, 0.0);
  EXPECT_DOUBLE_EQ(indoor.retention.rcs_retain_max, 45.0);
  EXPECT_DOUBLE_EQ(indoor.clustering.d_th, 0.6);
  EXPECT_EQ(indoor.clustering.min_points, 3u);
  EXPECT_DOUBLE_EQ(indoor.retention.v_min_retain, 0.25);
  EXPECT_EQ(indoor.doppler_sign, DopplerSign::ClosingPositive);

  const PipelineConfig outdoor = default_pipeline_config("outdoor");
  EXPECT_DOUBLE_EQ(outdoor.retention.rcs_retain_min, -5.0);
  EXPECT_DOUBLE_EQ(outdoor.retention.rcs_retain_max, 55.0);

  EXPECT_THROW(default_pipeline_config("nope"), UnknownProfile);
}

TEST_F(ConfigTest, PartialOverrideOfBuiltinProfile) {
  const std::string p = write_json("cfg.json", R"({
    "profile": {"indoor": {"az_max": 7.5}}
  })");
  const PipelineConfig cfg = load_pipeline_config(p, "indoor");
  EXPECT_DOUBLE_EQ(cfg.profile.az_max, 7.5);
  EXPECT_DOUBLE_EQ(cfg.profile.az_min, -5.0);   // untouched builtin values
  EXPECT_DOUBLE_EQ(cfg.profile.rcs_max, 45.0);
  // Retention still follows the (overridden) profile RCS bounds.
  EXPECT_DOUBLE_EQ(cfg.retention.rcs_retain_max, 45.0);
}

TEST_F(ConfigTest, NewProfileNeedsEveryBound) {
  const std::string incomplete = write_json("bad.json", R"({
    "profile": {"tunnel": {"rcs_min": -2, "rcs_max": 30}}
  })");
  EXPECT_THROW(load_pipeline_config(incomplete, "tunnel"), ConfigError);

  const std::string complete = write_json("ok.json", R"({
    "profile": {"tunnel": {"rcs_min": -2, "rcs_max": 30, "az_min": -10, "az_max": 10,
                            "el_min": -4, "el_max": 9, "v_min": -8, "v_max": 8}}
  })");
  const PipelineConfig cfg = load_pipeline_config(complete, "tunnel");
  EXPECT_DOUBLE_EQ(cfg.profile.el_max, 9.0);
  EXPECT_DOUBLE_EQ(cfg.retention.rcs_retain_min, -2.0);

  // The file's profiles do not shadow builtins unless named so.
  const PipelineConfig indoor = load_pipeline_config(complete, "indoor");
  EXPECT_DOUBLE_EQ(indoor.profile.az_max, 5.0);
  EXPECT_THROW(load_pipeline_config(complete, "cave"), UnknownProfile);
}

TEST_F(ConfigTest, ExplicitRetentionWinsOverProfile) {
  const std::string p = write_json("cfg.json", R"({
    "retention": {"rcs_retain_min": 20.0, "rcs_retain_max": 40.0, "v_min_retain": 0.5}
  })");
  const PipelineConfig cfg = load_pipeline_config(p, "outdoor");
  EXPECT_DOUBLE_EQ(cfg.retention.rcs_retain_min, 20.0);
  EXPECT_DOUBLE_EQ(cfg.retention.rcs_retain_max, 40.0);
  EXPECT_DOUBLE_EQ(cfg.retention.v_min_retain, 0.5);
}

TEST_F(ConfigTest, SectionValuesApply) {
  const std::string p = write_json("cfg.json", R"({
    "clustering": {"d_th": 0.8, "min_points": 5, "rcs_bin_width": 2.0},
    "classifier": {"ped_h_max": 2.2, "v_static": 0.3},
    "pipeline": {"doppler_sign": "receding_positive"},
    "ego": {"extrapolation_limit": 0.08, "velocity_window": 0.3}
  })");
  const PipelineConfig cfg = load_pipeline_config(p, "indoor");
  EXPECT_DOUBLE_EQ(cfg.clustering.d_th, 0.8);
  EXPECT_EQ(cfg.clustering.min_points, 5u);
  EXPECT_DOUBLE_EQ(cfg.clustering.rcs_bin_width, 2.0);
  EXPECT_DOUBLE_EQ(cfg.classifier.ped_h_max, 2.2);
  EXPECT_DOUBLE_EQ(cfg.classifier.v_static, 0.3);
  EXPECT_DOUBLE_EQ(cfg.classifier.ped_w_max, 1.0);  // untouched default
  EXPECT_EQ(cfg.doppler_sign, DopplerSign::RecedingPositive);
  EXPECT_DOUBLE_EQ(cfg.interpolation.extrapolation_limit, 0.08);
  EXPECT_DOUBLE_EQ(cfg.velocity.window, 0.3);
}

TEST_F(ConfigTest, RejectsUnknownKeysAtEveryLevel) {
  EXPECT_THROW(load_pipeline_config(write_json("a.json", R"({"clusterin": {}})"), "indoor"),
               ConfigError);
  EXPECT_THROW(
      load_pipeline_config(write_json("b.json", R"({"clustering": {"dth": 0.5}})"), "indoor"),
      ConfigError);
  EXPECT_THROW(
      load_pipeline_config(write_json("c.json", R"({"profile": {"indoor": {"az": 1}}})"),
                           "indoor"),
      ConfigError);
  EXPECT_THROW(
      load_pipeline_config(write_json("d.json", R"({"ego": {"window": 0.2}})"), "indoor"),
      ConfigError);
}

TEST_F(ConfigTest, RejectsInvalidValues) {
  EXPECT_THROW(
      load_pipeline_config(write_json("a.json", R"({"clustering": {"d_th": 0.0}})"), "indoor"),
      ConfigError);
  EXPECT_THROW(
      load_pipeline_config(write_json("b.json", R"({"clustering": {"min_points": 0}})"), "indoor"),
      ConfigError);
  EXPECT_THROW(load_pipeline_config(
                   write_json("c.json", R"({"clustering": {"min_points": -3}})"), "indoor"),
               ConfigError);
  EXPECT_THROW(
      load_pipeline_config(
          write_json("d.json", R"({"retention": {"rcs_retain_min": 50, "rcs_retain_max": 40}})"),
          "indoor"),
      ConfigError);
  EXPECT_THROW(
      load_pipeline_config(
          write_json("e.json", R"({"profile": {"indoor": {"az_min": 5, "az_max": -5}}})"),
          "indoor"),
      ConfigError);
  EXPECT_THROW(
      load_pipeline_config(write_json("f.json", R"({"pipeline": {"doppler_sign": "up"}})"),
                           "indoor"),
      ConfigError);
  EXPECT_THROW(load_pipeline_config(write_json("g.json", "{invalid"), "indoor"), ConfigError);
  EXPECT_THROW(load_pipeline_config((dir_ / "missing.json").string(), "indoor"), ConfigError);
}

TEST_F(ConfigTest, SceneFullRoundTrip) {
  const std::string p = write_json("scene.json", R"({
    "duration": 2.0,
    "frame_rate": 15,
    "seed": 42,
    "profile": "indoor",
    "doppler_noise": 0.05,
    "clutter_rate": 50,
    "ghost_rate": 100,
    "clutter_box": {"min": [1, -6, -1], "max": [30, 6, 3]},
    "pedestrians": [
      {"waypoints": [[16, 0.5, -0.5], [13, 0.5, -0.5]], "speed": 0.25,
       "points_min": 8, "points_max": 16, "spread": 0.18, "height": 1.7}
    ],
    "walls": [
      {"corner": [30, -3, -1], "edge_u": [0, 6, 0], "edge_v": [0, 0, 4], "density": 6}
    ],
    "ego": {"waypoints": [[0, 0, 0], [3, 0, 0]], "speed": 0.3}
  })");
  const SceneConfig cfg = load_scene_config(p);
  EXPECT_DOUBLE_EQ(cfg.duration, 2.0);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_DOUBLE_EQ(cfg.clutter_rate, 50.0);
  ASSERT_EQ(cfg.pedestrians.size(), 1u);
  EXPECT_EQ(cfg.pedestrians[0].points_min, 8);
  EXPECT_EQ(cfg.pedestrians[0].points_max, 16);
  EXPECT_DOUBLE_EQ(cfg.pedestrians[0].spread, 0.18);
  ASSERT_EQ(cfg.pedestrians[0].path.waypoints.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.pedestrians[0].path.waypoints[1].x(), 13.0);
  ASSERT_EQ(cfg.walls.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.walls[0].density, 6.0);
  EXPECT_DOUBLE_EQ(cfg.ego.speed, 0.3);
  EXPECT_DOUBLE_EQ(cfg.clutter_min.y(), -6.0);
}

TEST_F(ConfigTest, SceneDefaultsAndValidation) {
  // Ego defaults to a stationary origin when absent.
  const SceneConfig minimal = load_scene_config(write_json("s.json", R"({"duration": 1.0})"));
  ASSERT_EQ(minimal.ego.waypoints.size(), 1u);
  EXPECT_TRUE(minimal.ego.waypoints[0].isZero());
  EXPECT_DOUBLE_EQ(minimal.frame_rate, 15.0);

  EXPECT_THROW(load_scene_config(write_json("a.json", R"({"duration": -1})")), ConfigError);
  EXPECT_THROW(load_scene_config(write_json("b.json", R"({"seed": -1})")), ConfigError);
  EXPECT_THROW(load_scene_config(write_json("c.json", R"({"profile": "desert"})")), ConfigError);
  EXPECT_THROW(load_scene_config(write_json("d.json", R"({"fps": 10})")), ConfigError);
  EXPECT_THROW(
      load_scene_config(write_json("e.json", R"({"clutter_box": {"min": [0,0,0]}})")),
      ConfigError);
  EXPECT_THROW(
      load_scene_config(write_json(
          "f.json", R"({"pedestrians": [{"waypoints": [[1,0,0]], "stride": 2}]})")),
      ConfigError);
  EXPECT_THROW(
      load_scene_config(write_json(
          "g.json",
          R"({"walls": [{"corner": [0,0,0], "edge_u": [1,0,0], "edge_v": [2,0,0]}]})")),
      ConfigError);
}

}  // namespace
}  // namespace radpipe

#include "radpipe/io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "radpipe/errors.hpp"

namespace radpipe {

namespace {

using json = nlohmann::ordered_json;

void require_keys(const json& object, std::initializer_list<const char*> keys,
                  std::size_t line) {
  for (const char* key : keys) {
    if (!object.contains(key)) {
      throw ParseError(std::string("missing key '") + key + "'", line);
    }
  }
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
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
}

double finite_number(const json& value, const char* what, std::size_t line) {
  if (!value.is_number()) {
    throw ParseError(std::string(what) + " must be a number", line);
  }
  const double d = value.get<double>();
  if (!std::isfinite(d)) {
    throw ParseError(std::string(what) + " must be finite", line);
  }
  return d;
}

std::int64_t int_field(const json& object, const char* key, std::size_t line) {
  if (!object[key].is_number_integer() && !object[key].is_number_unsigned()) {
    throw ParseError(std::string(key) + " must be an integer", line);
  }
  return object[key].get<std::int64_t>();
}

Eigen::Vector3d vector3(const json& value, const char* what, std::size_t line) {
  if (!value.is_array() || value.size() != 3) {
    throw ParseError(std::string(what) + " must be an array of 3 numbers", line);
  }
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    out[i] = finite_number(value[i], what, line);
  }
  return out;
}

json vector3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

template <typename Record>
std::vector<Record> read_lines(const std::string& path,
                               const std::function<Record(const json&, std::size_t)>& parse) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::vector<Record> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) {
      continue;
    }
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::exception& e) {
      // parse_error for malformed text, out_of_range for numeric overflow.
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
    }
    if (!parsed.is_object()) {
      throw ParseError("record must be a JSON object", line_number);
    }
    out.push_back(parse(parsed, line_number));
  }
  return out;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  for (const std::string& line : lines) {
    out << line << '\n';
  }
  if (!out) {
    throw Error("write failed for " + path);
  }
}

RadarFrame parse_frame(const json& record, std::size_t line) {
  require_keys(record, {"t", "points"}, line);
  RadarFrame frame;
  frame.timestamp = finite_number(record["t"], "t", line);
  const json& points = record["points"];
  if (!points.is_array()) {
    throw ParseError("points must be an array", line);
  }
  frame.points.reserve(points.size());
  for (const json& entry : points) {
    if (!entry.is_array() || entry.size() != 6) {
      throw ParseError("each point must be an array of 6 numbers", line);
    }
    RadarPoint p;
    p.x = finite_number(entry[0], "point x", line);
    p.y = finite_number(entry[1], "point y", line);
    p.z = finite_number(entry[2], "point z", line);
    p.doppler = finite_number(entry[3], "point doppler", line);
    p.rcs = finite_number(entry[4], "point rcs", line);
    const double flag = finite_number(entry[5], "point dyn_flag", line);
    if (flag != 0.0 && flag != 1.0) {
      throw ParseError("point dyn_flag must be 0 or 1", line);
    }
    p.dyn_flag = flag == 1.0;
    frame.points.push_back(p);
  }
  return frame;
}

StampedPose parse_pose(const json& record, std::size_t line, std::vector<std::string>* warnings) {
  require_keys(record, {"t", "p", "q"}, line);
  StampedPose pose;
  pose.timestamp = finite_number(record["t"], "t", line);
  pose.translation = vector3(record["p"], "p", line);
  const json& q = record["q"];
  if (!q.is_array() || q.size() != 4) {
    throw ParseError("q must be an array of 4 numbers [w,x,y,z]", line);
  }
  const double w = finite_number(q[0], "q w", line);
  const double x = finite_number(q[1], "q x", line);
  const double y = finite_number(q[2], "q y", line);
  const double z = finite_number(q[3], "q z", line);
  Eigen::Quaterniond rotation(w, x, y, z);
  const double error = std::abs(rotation.norm() - 1.0);
  if (error > 1e-3) {
    throw ParseError("quaternion norm off by more than 1e-3", line);
  }
  if (error > 1e-6) {
    if (warnings != nullptr) {
      std::ostringstream message;
      message << "line " << line << ": quaternion norm off by " << error << ", renormalized";
      warnings->push_back(message.str());
    }
    rotation.normalize();
  }
  pose.rotation = rotation;
  return pose;
}

ObjectType object_type_from(const std::string& s, std::size_t line) {
  if (s == "pedestrian") return ObjectType::Pedestrian;
  if (s == "large_object") return ObjectType::LargeObject;
  if (s == "unknown") return ObjectType::Unknown;
  throw ParseError("unknown object type '" + s + "'", line);
}

Motion motion_from(const std::string& s, std::size_t line) {
  if (s == "static") return Motion::Static;
  if (s == "dynamic") return Motion::Dynamic;
  throw ParseError("unknown motion state '" + s + "'", line);
}

Heading heading_from(const std::string& s, std::size_t line) {
  if (s == "approaching") return Heading::Approaching;
  if (s == "receding") return Heading::Receding;
  if (s == "none") return Heading::None;
  throw ParseError("unknown heading '" + s + "'", line);
}

std::string string_field(const json& object, const char* key, std::size_t line) {
  if (!object[key].is_string()) {
    throw ParseError(std::string(key) + " must be a string", line);
  }
  return object[key].get<std::string>();
}

DetectionFrame parse_detection(const json& record, std::size_t line) {
  require_keys(record, {"t", "detections", "degraded", "latency_us"}, line);
  DetectionFrame frame;
  frame.timestamp = finite_number(record["t"], "t", line);
  if (!record["degraded"].is_boolean()) {
    throw ParseError("degraded must be a boolean", line);
  }
  frame.degraded = record["degraded"].get<bool>();
  const json& detections = record["detections"];
  if (!detections.is_array()) {
    throw ParseError("detections must be an array", line);
  }
  for (const json& d : detections) {
    if (!d.is_object()) {
      throw ParseError("each detection must be an object", line);
    }
    require_keys(d,
                 {"type", "motion", "heading", "centroid", "extent", "mean_doppler",
                  "comp_mean_doppler", "modal_rcs", "points"},
                 line);
    DetectedObject obj;
    obj.object_type = object_type_from(string_field(d, "type", line), line);
    obj.motion = motion_from(string_field(d, "motion", line), line);
    obj.heading = heading_from(string_field(d, "heading", line), line);
    const Eigen::Vector3d centroid = vector3(d["centroid"], "centroid", line);
    const json& extent = d["extent"];
    if (!extent.is_array() || extent.size() != 3) {
      throw ParseError("extent must be [l,w,h]", line);
    }
    obj.box.l = finite_number(extent[0], "extent l", line);
    obj.box.w = finite_number(extent[1], "extent w", line);
    obj.box.h = finite_number(extent[2], "extent h", line);
    obj.box.centroid = centroid;
    obj.descriptors.centroid = centroid;
    obj.descriptors.mean_doppler = finite_number(d["mean_doppler"], "mean_doppler", line);
    obj.descriptors.comp_mean_doppler =
        finite_number(d["comp_mean_doppler"], "comp_mean_doppler", line);
    obj.descriptors.modal_rcs = finite_number(d["modal_rcs"], "modal_rcs", line);
    if (!d["points"].is_number_unsigned()) {
      throw ParseError("points must be a nonnegative integer", line);
    }
    obj.descriptors.point_count = d["points"].get<std::size_t>();
    obj.frame_timestamp = frame.timestamp;
    frame.detections.push_back(std::move(obj));
  }
  const json& latency = record["latency_us"];
  if (!latency.is_object()) {
    throw ParseError("latency_us must be an object", line);
  }
  require_keys(latency, {"filter", "accumulate", "cluster", "classify", "total"}, line);
  frame.latencies.filter_us = int_field(latency, "filter", line);
  frame.latencies.accumulate_us = int_field(latency, "accumulate", line);
  frame.latencies.cluster_us = int_field(latency, "cluster", line);
  frame.latencies.classify_us = int_field(latency, "classify", line);
  frame.latencies.total_us = int_field(latency, "total", line);
  return frame;
}

TruthFrame parse_truth(const json& record, std::size_t line) {
  require_keys(record, {"t", "objects"}, line);
  TruthFrame frame;
  frame.timestamp = finite_number(record["t"], "t", line);
  const json& objects = record["objects"];
  if (!objects.is_array()) {
    throw ParseError("objects must be an array", line);
  }
  for (const json& o : objects) {
    if (!o.is_object()) {
      throw ParseError("each truth object must be an object", line);
    }
    require_keys(o, {"id", "class", "centroid", "velocity", "visible"}, line);
    TruthObject obj;
    if (!o["id"].is_number_integer()) {
      throw ParseError("id must be an integer", line);
    }
    obj.id = o["id"].get<int>();
    obj.object_class = string_field(o, "class", line);
    obj.centroid = vector3(o["centroid"], "centroid", line);
    obj.velocity = vector3(o["velocity"], "velocity", line);
    if (!o["visible"].is_boolean()) {
      throw ParseError("visible must be a boolean", line);
    }
    obj.visible = o["visible"].get<bool>();
    frame.objects.push_back(std::move(obj));
  }
  return frame;
}

}  // namespace

std::string frame_line(const RadarFrame& frame) {
  json record;
  record["t"] = frame.timestamp;
  json points = json::array();
  for (const RadarPoint& p : frame.points) {
    points.push_back(json::array({p.x, p.y, p.z, p.doppler, p.rcs, p.dyn_flag ? 1 : 0}));
  }
  record["points"] = std::move(points);
  return record.dump();
}

std::string pose_line(const StampedPose& pose) {
  json record;
  record["t"] = pose.timestamp;
  record["p"] = vector3_json(pose.translation);
  record["q"] = json::array(
      {pose.rotation.w(), pose.rotation.x(), pose.rotation.y(), pose.rotation.z()});
  return record.dump();
}

std::string detection_line(const DetectionFrame& frame) {
  json record;
  record["t"] = frame.timestamp;
  json detections = json::array();
  for (const DetectedObject& obj : frame.detections) {
    json d;
    d["type"] = to_string(obj.object_type);
    d["motion"] = to_string(obj.motion);
    d["heading"] = to_string(obj.heading);
    d["centroid"] = vector3_json(obj.descriptors.centroid);
    d["extent"] = json::array({obj.box.l, obj.box.w, obj.box.h});
    d["mean_doppler"] = obj.descriptors.mean_doppler;
    d["comp_mean_doppler"] = obj.descriptors.comp_mean_doppler;
    d["modal_rcs"] = obj.descriptors.modal_rcs;
    d["points"] = obj.descriptors.point_count;
    detections.push_back(std::move(d));
  }
  record["detections"] = std::move(detections);
  record["degraded"] = frame.degraded;
  json latency;
  latency["filter"] = frame.latencies.filter_us;
  latency["accumulate"] = frame.latencies.accumulate_us;
  latency["cluster"] = frame.latencies.cluster_us;
  latency["classify"] = frame.latencies.classify_us;
  latency["total"] = frame.latencies.total_us;
  record["latency_us"] = std::move(latency);
  return record.dump();
}

std::string truth_line(const TruthFrame& frame) {
  json record;
  record["t"] = frame.timestamp;
  json objects = json::array();
  for (const TruthObject& obj : frame.objects) {
    json o;
    o["id"] = obj.id;
    o["class"] = obj.object_class;
    o["centroid"] = vector3_json(obj.centroid);
    o["velocity"] = vector3_json(obj.velocity);
    o["visible"] = obj.visible;
    objects.push_back(std::move(o));
  }
  record["objects"] = std::move(objects);
  return record.dump();
}

std::vector<RadarFrame> read_frames(const std::string& path) {
  return read_lines<RadarFrame>(path, parse_frame);
}

void write_frames(const std::string& path, const std::vector<RadarFrame>& frames) {
  std::vector<std::string> lines;
  lines.reserve(frames.size());
  for (const RadarFrame& frame : frames) {
    lines.push_back(frame_line(frame));
  }
  write_lines(path, lines);
}

std::vector<StampedPose> read_poses(const std::string& path, std::vector<std::string>* warnings) {
  return read_lines<StampedPose>(path, [warnings](const json& record, std::size_t line) {
    return parse_pose(record, line, warnings);
  });
}

void write_poses(const std::string& path, const std::vector<StampedPose>& poses) {
  std::vector<std::string> lines;
  lines.reserve(poses.size());
  for (const StampedPose& pose : poses) {
    lines.push_back(pose_line(pose));
  }
  write_lines(path, lines);
}

std::vector<DetectionFrame> read_detections(const std::string& path) {
  return read_lines<DetectionFrame>(path, parse_detection);
}

void write_detections(const std::string& path, const std::vector<DetectionFrame>& frames) {
  std::vector<std::string> lines;
  lines.reserve(frames.size());
  for (const DetectionFrame& frame : frames) {
    lines.push_back(detection_line(frame));
  }
  write_lines(path, lines);
}

std::vector<TruthFrame> read_truth(const std::string& path) {
  return read_lines<TruthFrame>(path, parse_truth);
}

void write_truth(const std::string& path, const std::vector<TruthFrame>& truth) {
  std::vector<std::string> lines;
  lines.reserve(truth.size());
  for (const TruthFrame& frame : truth) {
    lines.push_back(truth_line(frame));
  }
  write_lines(path, lines);
}

}  // namespace radpipe

// Copyright 2026 The Lastmile Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lastmile/harness/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <type_traits>
#include <variant>

#include <yaml-cpp/yaml.h>

#include "lastmile/core/errors.hpp"

namespace lastmile::harness {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

static_assert(std::is_same_v<std::size_t, std::uint64_t>);
using FieldPtr = std::variant<double*, int*, std::size_t*, bool*>;

struct Field {
  const char* name;
  FieldPtr ptr;
};

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Node& node, const std::string& what) const {
    const auto mark = node.Mark();
    throw ParseError(source_, mark.line >= 0 ? std::size_t(mark.line) + 1 : 0, what);
  }

  template <typename T>
  T As(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) Fail(node, "'" + key + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      Fail(node, "bad value for '" + key + "': " + node.Scalar());
    }
  }

  double Number(const YAML::Node& node, const std::string& key) const {
    const double v = As<double>(node, key);
    if (!std::isfinite(v)) Fail(node, "'" + key + "' must be finite");
    return v;
  }

  void RequireMap(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) Fail(node, what + " must be a mapping");
  }

  void RequireKeys(const YAML::Node& node, const std::string& what,
                   std::initializer_list<const char*> allowed) const {
    RequireMap(node, what);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) Fail(kv.first, "unknown key '" + key + "' in " + what);
    }
  }

  void Overrides(const YAML::Node& node, const std::string& what,
                 std::initializer_list<Field> fields) const {
    RequireMap(node, what);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      const Field* field = nullptr;
      for (const Field& f : fields) {
        if (key == f.name) field = &f;
      }
      if (field == nullptr) Fail(kv.first, "unknown key '" + key + "' in " + what);
      const YAML::Node& value = kv.second;
      std::visit(
          [&](auto* ptr) {
            using T = std::remove_pointer_t<decltype(ptr)>;
            if constexpr (std::is_same_v<T, double>) {
              *ptr = Number(value, key);
            } else if constexpr (std::is_same_v<T, bool>) {
              *ptr = As<bool>(value, key);
            } else {
              const double v = Number(value, key);
              if (v < 0 || v != std::floor(v)) {
                Fail(value, "'" + key + "' must be a non-negative integer");
              }
              *ptr = static_cast<T>(v);
            }
          },
          field->ptr);
    }
  }

  Vector2d Vec2(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence() || node.size() != 2) Fail(node, "'" + key + "' must be [x, y]");
    return {Number(node[0], key), Number(node[1], key)};
  }

  Vector3d Vec3(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence() || node.size() != 3) {
      Fail(node, "'" + key + "' must be [x, y, z]");
    }
    return {Number(node[0], key), Number(node[1], key), Number(node[2], key)};
  }

  DriveScript Script(const YAML::Node& node) const {
    RequireKeys(node, "drive_script", {"speed", "heading_deg", "sample_rate", "segments"});
    DriveScript script;
    if (node["speed"]) script.speed = Number(node["speed"], "speed");
    if (node["heading_deg"]) {
      script.heading = Number(node["heading_deg"], "heading_deg") * kDegToRad;
    }
    if (node["sample_rate"]) script.sample_rate = Number(node["sample_rate"], "sample_rate");
    if (script.speed <= 0) Fail(node, "drive_script speed must be positive");
    if (script.sample_rate <= 0) Fail(node, "drive_script sample_rate must be positive");
    const YAML::Node segs = node["segments"];
    if (!segs) return script;
    if (!segs.IsSequence()) Fail(segs, "segments must be a list");
    for (const auto& s : segs) {
      RequireKeys(s, "segment",
                  {"length", "angle_deg", "radius", "duration", "yaw_rate", "speed"});
      DriveSegment seg;
      if (s["speed"]) {
        seg.speed = Number(s["speed"], "speed");
        if (*seg.speed <= 0) Fail(s, "segment speed must be positive");
      }
      if (s["duration"]) {
        if (s["length"] || s["angle_deg"] || s["radius"]) {
          Fail(s, "timed segment cannot also set length, angle_deg or radius");
        }
        seg.timed = true;
        seg.duration = Number(s["duration"], "duration");
        if (s["yaw_rate"]) seg.yaw_rate = Number(s["yaw_rate"], "yaw_rate");
        if (seg.duration < 0) Fail(s, "duration must be non-negative");
      } else {
        if (s["yaw_rate"]) Fail(s, "yaw_rate needs duration");
        if (s["radius"]) seg.radius = Number(s["radius"], "radius");
        if (s["angle_deg"]) {
          if (s["length"]) Fail(s, "set either length or angle_deg");
          if (seg.radius == 0.0) Fail(s, "angle_deg needs a non-zero radius");
          seg.length = std::abs(seg.radius) *
                       std::abs(Number(s["angle_deg"], "angle_deg")) * kDegToRad;
        } else if (s["length"]) {
          seg.length = Number(s["length"], "length");
        } else {
          Fail(s, "segment needs length, angle_deg or duration");
        }
        if (seg.length < 0) Fail(s, "length must be non-negative");
      }
      script.segments.push_back(seg);
    }
    return script;
  }

  std::filesystem::path Path(const YAML::Node& node, const std::string& key,
                             const std::filesystem::path& base) const {
    std::filesystem::path p = As<std::string>(node, key);
    if (p.is_relative() && !base.empty()) p = base / p;
    return p;
  }

  void World(const YAML::Node& node, Scenario& sc) const {
    RequireKeys(node, "world", {"obstacles", "pedestrians", "signs"});
    if (const auto obs = node["obstacles"]) {
      if (!obs.IsSequence()) Fail(obs, "obstacles must be a list");
      for (const auto& o : obs) {
        RequireKeys(o, "obstacle", {"center", "size", "height"});
        sim::Box box;
        if (!o["center"]) Fail(o, "obstacle needs center");
        box.center = Vec2(o["center"], "center");
        if (o["size"]) box.size = Vec2(o["size"], "size");
        if (o["height"]) box.height = Number(o["height"], "height");
        sc.world.static_obstacles.push_back(box);
      }
    }
    if (const auto peds = node["pedestrians"]) {
      if (!peds.IsSequence()) Fail(peds, "pedestrians must be a list");
      for (const auto& p : peds) {
        RequireKeys(p, "pedestrian",
                    {"position", "velocity", "height", "radius", "trigger_distance"});
        PedestrianSpec spec;
        if (!p["position"]) Fail(p, "pedestrian needs position");
        spec.pedestrian.position = Vec2(p["position"], "position");
        if (p["velocity"]) spec.walk_velocity = Vec2(p["velocity"], "velocity");
        if (p["height"]) spec.pedestrian.height = Number(p["height"], "height");
        if (p["radius"]) spec.pedestrian.radius = Number(p["radius"], "radius");
        if (p["trigger_distance"]) {
          spec.trigger_distance = Number(p["trigger_distance"], "trigger_distance");
          if (*spec.trigger_distance <= 0) Fail(p, "trigger_distance must be positive");
        }
        sc.pedestrians.push_back(spec);
      }
    }
    if (const auto signs = node["signs"]) {
      if (!signs.IsSequence()) Fail(signs, "signs must be a list");
      for (const auto& s : signs) {
        RequireKeys(s, "sign", {"center", "normal", "width", "height", "intensity"});
        sim::SignSpec sign;
        if (!s["center"]) Fail(s, "sign needs center");
        sign.center = Vec3(s["center"], "center");
        if (s["normal"]) {
          sign.normal = Vec3(s["normal"], "normal");
          if (sign.normal.norm() == 0.0) Fail(s["normal"], "normal must be non-zero");
          sign.normal.normalize();
        }
        if (s["width"]) sign.width = Number(s["width"], "width");
        if (s["height"]) sign.height = Number(s["height"], "height");
        if (s["intensity"]) sign.intensity = Number(s["intensity"], "intensity");
        sc.world.signs.push_back(sign);
      }
    }
  }

  Scenario Parse(const YAML::Node& root, const std::filesystem::path& base) const {
    RequireKeys(root, "scenario",
                {"name", "tick_rate", "duration", "seed", "end_on_arrival", "origin",
                 "initial_state", "vehicle", "controller", "follower", "compile", "lidar",
                 "lidar_rate", "perception_latency_ticks", "grid", "corridor", "slowdown",
                 "sign_filter", "sign_stop", "world", "route", "drive_script"});
    Scenario sc;
    sc.base_dir = base;
    if (root["name"]) sc.name = As<std::string>(root["name"], "name");
    if (root["tick_rate"]) sc.tick_rate = Number(root["tick_rate"], "tick_rate");
    if (root["duration"]) sc.duration = Number(root["duration"], "duration");
    if (root["seed"]) sc.seed = As<std::uint64_t>(root["seed"], "seed");
    if (root["end_on_arrival"]) {
      sc.end_on_arrival = As<bool>(root["end_on_arrival"], "end_on_arrival");
    }
    if (root["lidar_rate"]) sc.lidar_rate = Number(root["lidar_rate"], "lidar_rate");
    if (const auto n = root["perception_latency_ticks"]) {
      sc.perception_latency_ticks = As<int>(n, "perception_latency_ticks");
    }
    if (const auto n = root["origin"]) {
      RequireKeys(n, "origin", {"lat", "lon"});
      if (!n["lat"] || !n["lon"]) Fail(n, "origin needs lat and lon");
      sc.origin = waypoint::GeoPoint{Number(n["lat"], "lat"), Number(n["lon"], "lon")};
    }
    if (const auto n = root["initial_state"]) {
      RequireKeys(n, "initial_state", {"x", "y", "heading_deg", "speed"});
      sim::VehicleState s;
      if (n["x"]) s.x = Number(n["x"], "x");
      if (n["y"]) s.y = Number(n["y"], "y");
      if (n["heading_deg"]) s.heading = Number(n["heading_deg"], "heading_deg") * kDegToRad;
      if (n["speed"]) s.speed = Number(n["speed"], "speed");
      sc.initial_state = s;
    }

    if (const auto n = root["vehicle"]) {
      auto& v = sc.vehicle;
      Overrides(n, "vehicle",
                {{"wheelbase", &v.wheelbase},
                 {"steering_ratio", &v.steering_ratio},
                 {"max_steer", &v.max_steer},
                 {"max_decel", &v.max_decel},
                 {"brake_time_constant", &v.brake_time_constant},
                 {"brake_knee", &v.brake_knee},
                 {"throttle_gain", &v.throttle_gain},
                 {"lidar_mount_height", &v.lidar_mount_height},
                 {"lidar_offset_x", &v.lidar_offset_x},
                 {"front_bumper_x", &v.front_bumper_x},
                 {"rear_bumper_x", &v.rear_bumper_x},
                 {"half_width", &v.half_width},
                 {"roof_height", &v.roof_height}});
    }
    SyncDerivedParams(sc);

    if (const auto n = root["controller"]) {
      auto& c = sc.controller;
      Overrides(n, "controller",
                {{"speed_gain", &c.speed_gain},
                 {"throttle_kp", &c.throttle_kp},
                 {"throttle_ki", &c.throttle_ki},
                 {"integrator_limit", &c.integrator_limit},
                 {"throttle_filter_tau", &c.throttle_filter_tau},
                 {"accel_filter_tau", &c.accel_filter_tau},
                 {"min_steer_speed", &c.min_steer_speed},
                 {"stop_speed", &c.stop_speed},
                 {"hold_brake", &c.hold_brake}});
    }
    if (const auto n = root["follower"]) {
      auto& f = sc.follower;
      Overrides(n, "follower",
                {{"heading_gain", &f.heading_gain},
                 {"switch_radius", &f.switch_radius},
                 {"heading_bias", &f.heading_bias},
                 {"accel_limit", &f.accel_limit},
                 {"decel_limit", &f.decel_limit},
                 {"arrival_slack", &f.arrival_slack}});
    }
    if (const auto n = root["compile"]) {
      auto& c = sc.compile;
      Overrides(n, "compile",
                {{"spacing", &c.spacing},
                 {"max_lateral_accel", &c.max_lateral_accel},
                 {"min_yaw_rate", &c.min_yaw_rate}});
    }
    if (const auto n = root["lidar"]) {
      auto& l = sc.lidar;
      Overrides(n, "lidar",
                {{"rings", &l.rings},
                 {"lowest_elevation_deg", &l.lowest_elevation_deg},
                 {"ring_spacing_deg", &l.ring_spacing_deg},
                 {"azimuth_resolution_deg", &l.azimuth_resolution_deg},
                 {"azimuth_offset_deg", &l.azimuth_offset_deg},
                 {"min_range", &l.min_range},
                 {"max_range", &l.max_range},
                 {"background_intensity", &l.background_intensity},
                 {"range_noise_stddev", &l.range_noise_stddev}});
    }
    if (const auto n = root["grid"]) {
      auto& g = sc.grid;
      Overrides(n, "grid",
                {{"cell_size", &g.cell_size},
                 {"half_extent", &g.half_extent},
                 {"height_threshold", &g.height_threshold},
                 {"max_z", &g.max_z}});
    }
    if (const auto n = root["corridor"]) {
      auto& c = sc.corridor;
      Overrides(n, "corridor",
                {{"length", &c.length},
                 {"half_width", &c.half_width},
                 {"straight_threshold", &c.straight_threshold}});
    }
    if (const auto n = root["slowdown"]) {
      auto& s = sc.slowdown;
      Overrides(n, "slowdown",
                {{"stop_distance", &s.stop_distance},
                 {"distance_per_mps", &s.distance_per_mps},
                 {"max_decel", &s.max_decel}});
    }
    if (const auto n = root["sign_filter"]) {
      auto& f = sc.sign_filter;
      Overrides(n, "sign_filter",
                {{"fov_side", &f.fov_side},
                 {"min_intensity", &f.min_intensity},
                 {"ror_radius", &f.ror_radius},
                 {"ror_min_neighbors", &f.ror_min_neighbors},
                 {"sor_k", &f.sor_k},
                 {"sor_stddev_mult", &f.sor_stddev_mult},
                 {"plane_dist_tol", &f.plane_dist_tol},
                 {"normal_min_a", &f.normal_min_a},
                 {"min_sign_points", &f.min_sign_points},
                 {"ransac_iterations", &f.ransac_iterations},
                 {"ransac_seed", &f.ransac_seed},
                 {"max_planes", &f.max_planes},
                 {"min_plane_spread", &f.min_plane_spread}});
    }
    if (const auto n = root["sign_stop"]) {
      auto& s = sc.sign_stop;
      Overrides(n, "sign_stop",
                {{"trigger_distance", &s.trigger_distance},
                 {"latch_distance", &s.latch_distance},
                 {"hold_time", &s.hold_time},
                 {"cooldown_distance", &s.cooldown_distance},
                 {"stopped_speed", &s.stopped_speed}});
    }
    if (const auto n = root["world"]) World(n, sc);
    if (const auto n = root["drive_script"]) sc.drive_script = Script(n);
    if (const auto n = root["route"]) {
      RequireKeys(n, "route", {"waypoints", "trace", "drive_script", "speed"});
      RouteSpec route;
      if (n["speed"]) route.speed = Number(n["speed"], "speed");
      if (route.speed <= 0) Fail(n, "route speed must be positive");
      const int sources = int(bool(n["waypoints"])) + int(bool(n["trace"])) +
                          int(bool(n["drive_script"]));
      if (sources > 1) Fail(n, "route takes one of waypoints, trace or drive_script");
      if (n["waypoints"]) route.waypoint_file = Path(n["waypoints"], "waypoints", base);
      if (n["trace"]) route.trace_file = Path(n["trace"], "trace", base);
      if (n["drive_script"]) route.drive_script = Script(n["drive_script"]);
      if (sources == 0) {
        if (!sc.drive_script) Fail(n, "route needs waypoints, trace or drive_script");
        route.drive_script = sc.drive_script;
      }
      sc.route = route;
    }
    return sc;
  }

 private:
  std::string source_;
};

}  // namespace

void SyncDerivedParams(Scenario& sc) {
  sc.controller.wheelbase = sc.vehicle.wheelbase;
  sc.controller.steering_ratio = sc.vehicle.steering_ratio;
  sc.controller.max_steer = sc.vehicle.max_steer;
  sc.corridor.wheelbase = sc.vehicle.wheelbase;
  sc.corridor.start_offset = sc.vehicle.front_bumper_x;
  sc.grid.max_z = sc.vehicle.roof_height;
  sc.slowdown.max_decel = sc.vehicle.max_decel;
}

Scenario ParseScenario(const std::string& text, const std::string& source,
                       const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, std::size_t(e.mark.line) + 1, e.msg);
  }
  if (!root.IsMap()) throw ParseError(source, 1, "scenario must be a mapping");
  Scenario sc = Parser(source).Parse(root, base_dir);
  Validate(sc);
  return sc;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseScenario(text.str(), path.string(), path.parent_path());
}

void Validate(const Scenario& sc) {
  const auto fail = [&](const std::string& what) {
    throw ParseError(sc.name, 0, what);
  };
  if (!(sc.tick_rate >= 10.0 && sc.tick_rate <= 200.0)) {
    fail("tick_rate must be in [10, 200] Hz");
  }
  if (!(sc.duration > 0.0)) fail("duration must be positive");
  if (!(sc.lidar_rate > 0.0 && sc.lidar_rate <= sc.tick_rate)) {
    fail("lidar_rate must be in (0, tick_rate]");
  }
  if (sc.perception_latency_ticks < 0) fail("perception_latency_ticks must be >= 0");
  if (sc.origin && (std::abs(sc.origin->lat) > 90.0 || std::abs(sc.origin->lon) > 180.0)) {
    fail("origin out of range");
  }
  if (sc.initial_state && sc.initial_state->speed < 0.0) {
    fail("initial speed must be non-negative");
  }
  if (sc.lidar.rings < 1) fail("lidar rings must be positive");
  if (!(sc.lidar.azimuth_resolution_deg > 0.0)) fail("lidar azimuth resolution must be positive");
  if (!(sc.grid.cell_size > 0.0 && sc.grid.half_extent > sc.grid.cell_size)) {
    fail("grid cell_size and half_extent must be positive");
  }
  if (!(sc.corridor.length > 0.0 && sc.corridor.half_width > 0.0)) {
    fail("corridor length and half_width must be positive");
  }
  if (!(sc.follower.switch_radius > 0.0 && sc.follower.accel_limit > 0.0 &&
        sc.follower.decel_limit > 0.0)) {
    fail("follower switch radius and limits must be positive");
  }
  try {
    sim::Validate(sc.vehicle);
    sim::Validate(sc.world);
    for (const auto& p : sc.pedestrians) {
      if (!(p.pedestrian.height > 0.0 && p.pedestrian.radius > 0.0)) {
        throw InvalidStateError("pedestrian height and radius must be positive");
      }
    }
  } catch (const InvalidStateError& e) {
    fail(e.what());
  }
}

}  // namespace lastmile::harness

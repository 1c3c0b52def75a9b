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

#include "lastmile/harness/runner.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <random>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "lastmile/arbiter/arbiter.hpp"
#include "lastmile/control/twist_controller.hpp"
#include "lastmile/core/errors.hpp"
#include "lastmile/core/geometry.hpp"
#include "lastmile/harness/drive_script.hpp"
#include "lastmile/obstacle/corridor.hpp"
#include "lastmile/obstacle/obstacle_detector.hpp"
#include "lastmile/obstacle/occupancy_grid.hpp"
#include "lastmile/sign/sign_detector.hpp"
#include "lastmile/sim/lidar.hpp"
#include "lastmile/sim/plant.hpp"
#include "lastmile/waypoint/follower.hpp"
#include "lastmile/waypoint/path_compiler.hpp"
#include "lastmile/waypoint/waypoint_io.hpp"

namespace lastmile::harness {
namespace {

using Quad = std::array<Vector2d, 4>;

Eigen::Matrix2d Rotation(double heading) {
  return Eigen::Rotation2Dd(heading).toRotationMatrix();
}

Quad Footprint(const sim::VehicleState& s, const sim::VehicleParams& p) {
  const Eigen::Matrix2d rot = Rotation(s.heading);
  const Vector2d origin(s.x, s.y);
  const double xs[2] = {p.rear_bumper_x, p.front_bumper_x};
  return {origin + rot * Vector2d(xs[0], -p.half_width),
          origin + rot * Vector2d(xs[1], -p.half_width),
          origin + rot * Vector2d(xs[1], p.half_width),
          origin + rot * Vector2d(xs[0], p.half_width)};
}

bool Separated(const Quad& a, const Quad& b, const Vector2d& axis) {
  double amin = std::numeric_limits<double>::infinity(), amax = -amin;
  double bmin = amin, bmax = -amin;
  for (const auto& p : a) {
    amin = std::min(amin, axis.dot(p));
    amax = std::max(amax, axis.dot(p));
  }
  for (const auto& p : b) {
    bmin = std::min(bmin, axis.dot(p));
    bmax = std::max(bmax, axis.dot(p));
  }
  return amax < bmin || bmax < amin;
}

double QuadGap(const Quad& a, const Quad& b) {
  bool overlap = true;
  for (const Quad* q : {&a, &b}) {
    for (int i = 0; i < 2; ++i) {
      const Vector2d edge = (*q)[i + 1] - (*q)[i];
      if (Separated(a, b, Vector2d(-edge.y(), edge.x()))) overlap = false;
    }
  }
  if (overlap) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      best = std::min(best, PointSegmentDistance(a[i], b[j], b[(j + 1) % 4]));
      best = std::min(best, PointSegmentDistance(b[i], a[j], a[(j + 1) % 4]));
    }
  }
  return best;
}

struct Perception {
  long ready_tick = 0;
  double timestamp = 0.0;
  obstacle::ObstacleReport report;
  std::optional<sign::SignDetection> detection;
};

}  // namespace

double FootprintGap(const sim::VehicleState& state, const sim::VehicleParams& vehicle,
                    const sim::WorldModel& world) {
  double best = std::numeric_limits<double>::quiet_NaN();
  const auto take = [&](double d) { best = std::isnan(best) ? d : std::min(best, d); };
  const Quad car = Footprint(state, vehicle);
  for (const auto& box : world.static_obstacles) {
    const Vector2d h = box.size / 2.0;
    const Vector2d c = box.center;
    take(QuadGap(car, {c + Vector2d(-h.x(), -h.y()), c + Vector2d(h.x(), -h.y()),
                       c + Vector2d(h.x(), h.y()), c + Vector2d(-h.x(), h.y())}));
  }
  const Eigen::Matrix2d rot = Rotation(state.heading);
  for (const auto& ped : world.pedestrians) {
    const Vector2d local = rot.transpose() * (ped.position - Vector2d(state.x, state.y));
    const Vector2d nearest(std::clamp(local.x(), vehicle.rear_bumper_x, vehicle.front_bumper_x),
                           std::clamp(local.y(), -vehicle.half_width, vehicle.half_width));
    take(std::max(0.0, (local - nearest).norm() - ped.radius));
  }
  return best;
}

waypoint::WaypointList ResolveRoute(const Scenario& sc) {
  if (!sc.route) throw ParseError(sc.name, 0, "scenario has no route");
  const RouteSpec& route = *sc.route;
  waypoint::WaypointList list;
  if (!route.waypoint_file.empty()) {
    list = waypoint::ReadWaypoints(route.waypoint_file);
  } else if (!route.trace_file.empty()) {
    list = waypoint::CompilePath(waypoint::ReadTrace(route.trace_file), route.speed, sc.compile);
  } else {
    const waypoint::GeoPoint origin = sc.origin.value_or(waypoint::GeoPoint{});
    list = waypoint::CompilePath(RecordTrace(*route.drive_script, origin), route.speed,
                                 sc.compile);
  }
  if (list.size() < 2) throw NoPathError("route needs at least two waypoints");
  if (sc.origin) list.origin = *sc.origin;
  list.target_index = 0;
  return list;
}

RunResult Run(const Scenario& sc, const RunOptions& options) {
  Validate(sc);
  RunResult result;
  result.route = ResolveRoute(sc);
  waypoint::WaypointList list = result.route;
  const Points2d path = waypoint::LocalPath(list);

  sim::VehicleState state;
  if (sc.initial_state) {
    state = *sc.initial_state;
  } else {
    state.x = path(0, 0);
    state.y = path(1, 0);
    state.heading = std::atan2(path(1, 1) - path(1, 0), path(0, 1) - path(0, 0));
  }
  state.heading = NormalizeAngle(state.heading);

  sim::WorldModel world = sc.world;
  world.pedestrians.clear();
  std::vector<bool> walking;
  for (const auto& spec : sc.pedestrians) {
    sim::Pedestrian p = spec.pedestrian;
    const bool now = !spec.trigger_distance.has_value();
    p.velocity = now ? spec.walk_velocity : Vector2d::Zero();
    world.pedestrians.push_back(p);
    walking.push_back(now);
  }

  std::mt19937_64 rng(options.seed.value_or(sc.seed));
  control::TwistController controller(sc.controller);
  sign::SignStopLatch latch(sc.sign_stop);
  arbiter::DisplayTracker display;
  display.Update(state.speed, 0.0);

  const double dt = 1.0 / sc.tick_rate;
  const long ticks = std::lround(std::floor(sc.duration * sc.tick_rate + 1e-9));
  const long lidar_every = std::max(1L, std::lround(sc.tick_rate / sc.lidar_rate));
  const Vector3d sensor(sc.vehicle.lidar_offset_x, 0.0, sc.vehicle.lidar_mount_height);

  std::deque<Perception> pending;
  obstacle::ObstacleReport report;
  double odometer = 0.0;

  for (long k = 0; k < ticks; ++k) {
    const double t = double(k) / sc.tick_rate;

    const Eigen::Matrix2d rot = Rotation(state.heading);
    const Vector2d bumper = Vector2d(state.x, state.y) +
                            rot * Vector2d(sc.vehicle.front_bumper_x, 0.0);
    for (std::size_t i = 0; i < sc.pedestrians.size(); ++i) {
      if (walking[i]) continue;
      if ((world.pedestrians[i].position - bumper).norm() <= *sc.pedestrians[i].trigger_distance) {
        world.pedestrians[i].velocity = sc.pedestrians[i].walk_velocity;
        walking[i] = true;
      }
    }

    const waypoint::FollowResult follow = waypoint::FollowStep(list, state, sc.follower);
    list = follow.list;

    if (k % lidar_every == 0) {
      const sim::LidarFrame frame = sim::Scan(world, state, sc.vehicle, sc.lidar, &rng, t);
      const obstacle::OccupancyGrid grid = obstacle::BuildGrid(frame, sc.grid);
      const obstacle::Corridor corridor =
          obstacle::CorridorFromSteering(state.steer_angle, sc.corridor);
      Perception p;
      p.ready_tick = k + sc.perception_latency_ticks;
      p.timestamp = t;
      p.report = obstacle::FindClosestObstacle(grid, corridor);
      p.detection = sign::DetectSign(frame, sensor, sc.sign_filter);
      if (options.grid_dump != nullptr) {
        *options.grid_dump << fmt::format("# t={}\n", t);
        obstacle::WriteGridDump(*options.grid_dump, grid);
      }
      pending.push_back(std::move(p));
    }
    std::optional<sign::SignDetection> fresh;
    double fresh_time = 0.0;
    while (!pending.empty() && pending.front().ready_tick <= k) {
      report = pending.front().report;
      fresh = pending.front().detection;
      fresh_time = pending.front().timestamp;
      pending.pop_front();
    }
    if (fresh && options.detection_log != nullptr) {
      *options.detection_log << sign::DetectionLogLine(fresh_time, *fresh) << '\n';
    }

    std::vector<arbiter::SpeedCommand> commands{{follow.command, arbiter::Source::kWaypoint}};
    if (report.present) {
      commands.push_back(
          {obstacle::ModifySpeed(follow.command, report, sc.slowdown), arbiter::Source::kObstacle});
    }
    if (auto cmd = latch.Update(fresh, state.speed, odometer, dt, follow.command)) {
      commands.push_back({*cmd, arbiter::Source::kSign});
    }
    const arbiter::SpeedCommand selected = arbiter::Select(commands);

    const control::ActuatorCommand act = controller.Step(selected.twist, state, dt);
    const sim::VehicleState next =
        sim::StepPlant(state, act.throttle, act.brake, act.steer, dt, sc.vehicle);
    odometer += std::hypot(next.x - state.x, next.y - state.y);
    state = next;
    world = sim::StepPedestrians(world, dt);

    LogRecord r;
    r.t = double(k + 1) / sc.tick_rate;
    r.x = state.x;
    r.y = state.y;
    r.heading = state.heading;
    r.v = state.speed;
    r.omega = state.yaw_rate;
    r.throttle = act.throttle;
    r.brake = act.brake;
    r.steer = act.steer;
    r.cte = waypoint::CrossTrackError(result.route, state);
    r.obstacle_d =
        report.present ? report.closest_distance : std::numeric_limits<double>::quiet_NaN();
    r.sign_d = fresh ? fresh->distance : std::numeric_limits<double>::quiet_NaN();
    r.sign_n = fresh ? static_cast<int>(fresh->point_count) : 0;
    r.display = display.Update(state.speed, r.t);
    r.source = selected.source;
    r.cmd_v = selected.twist.linear_v;
    r.gap = FootprintGap(state, sc.vehicle, world);
    result.log.push_back(r);

    if (sc.end_on_arrival && follow.finished && state.speed == 0.0) break;
  }
  result.metrics = ComputeMetrics(result.log);
  return result;
}

}  // namespace lastmile::harness

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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "lastmile/harness/drive_script.hpp"
#include "lastmile/harness/runner.hpp"
#include "lastmile/harness/scenario.hpp"
#include "lastmile/obstacle/obstacle_detector.hpp"
#include "lastmile/sign/cloud_filters.hpp"
#include "lastmile/sign/sign_detector.hpp"
#include "lastmile/sim/lidar.hpp"
#include "lastmile/sim/plant.hpp"
#include "lastmile/waypoint/follower.hpp"
#include "lastmile/waypoint/path_compiler.hpp"
#include "oracles.hpp"

namespace lastmile {
namespace {

using Clock = std::chrono::steady_clock;
const std::filesystem::path kScenarios = LASTMILE_SCENARIO_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string LogText(const harness::RunResult& r) {
  std::ostringstream out;
  harness::WriteLog(out, r.log);
  return out.str();
}

Outcome BrakingCalibration() {
  const auto start = Clock::now();
  const sim::StopProfile p = sim::SimulateFullBrakeStop(3.0);
  const double runtime = Seconds(start);
  const bool pass = std::abs(p.distance - 1.6) <= 0.15 && std::abs(p.time - 0.8) <= 0.1 &&
                    runtime < 1.0;
  return {pass, fmt::format("stop {:.3f} m in {:.3f} s, runtime {:.4f} s", p.distance,
                            p.time, runtime)};
}

Outcome FigureEightTracking() {
  const auto start = Clock::now();
  const auto r = harness::Run(harness::LoadScenario(kScenarios / "figure8.yaml"));
  const double runtime = Seconds(start);
  const bool pass = r.metrics.peak_cte <= 0.25 && r.metrics.mean_cte <= 0.12 && runtime < 10.0;
  return {pass, fmt::format("peak {:.3f} m, mean {:.3f} m, runtime {:.2f} s",
                            r.metrics.peak_cte, r.metrics.mean_cte, runtime)};
}

// Random drives built from straights and arcs. A straight always separates
// two arcs so the recorded yaw rate never flips sign between samples.
waypoint::RecordedTrace RandomTrace(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> speed(0.8, 4.0), radius(2.0, 40.0),
      angle(20.0, 300.0), length(1.0, 15.0), coin(0.0, 1.0);
  harness::DriveScript script;
  script.speed = speed(rng);
  script.heading = coin(rng) * 2.0 * M_PI;
  script.sample_rate = 10.0 + 40.0 * coin(rng);
  const int arcs = 1 + int(coin(rng) * 4);
  for (int i = 0; i < arcs; ++i) {
    harness::DriveSegment straight;
    straight.length = length(rng);
    script.segments.push_back(straight);
    harness::DriveSegment arc;
    const double r = radius(rng);
    arc.radius = coin(rng) < 0.5 ? r : -r;
    arc.length = r * angle(rng) * M_PI / 180.0;
    if (coin(rng) < 0.5) arc.speed = speed(rng);
    script.segments.push_back(arc);
  }
  return harness::RecordTrace(script, {30.0 + coin(rng), -96.0 + coin(rng)});
}

Outcome CurvatureLimit() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> target(1.0, 5.0);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto trace = RandomTrace(rng);
    const auto compiled = waypoint::CompilePathDetailed(trace, target(rng));
    const waypoint::GeoPoint origin = compiled.list.origin;

    std::vector<oracle::P2> xy;
    for (const auto& s : trace.samples) {
      const Vector2d p = waypoint::ToLocal(origin, s.lat, s.lon);
      xy.push_back({p.x(), p.y()});
    }
    for (std::size_t i = 0; i < compiled.list.size(); ++i) {
      const auto& wp = compiled.list.waypoints[i];
      const double v = wp.speed;
      worst = std::max(worst, v * v / compiled.radius[i]);
      // Independent check: curvature recorded at the samples bracketing the
      // waypoint, taking the gentler of the two.
      const Vector2d p = waypoint::ToLocal(origin, wp.lat, wp.lon);
      std::size_t seg = 1;
      double best = INFINITY;
      for (std::size_t j = 1; j < xy.size(); ++j) {
        const double d = oracle::CrossTrack({xy[j - 1], xy[j]}, {p.x(), p.y()});
        if (d < best) best = d, seg = j;
      }
      const auto& a = trace.samples[seg - 1];
      const auto& b = trace.samples[seg];
      const double kappa = std::min(std::abs(a.omega) / a.v, std::abs(b.omega) / b.v);
      worst = std::max(worst, v * v * kappa);
      ++checked;
    }
  }
  return {worst <= 0.5 + 1e-6,
          fmt::format("worst v^2/r {:.9f} over {} waypoints", worst, checked)};
}

Outcome SlowdownLaw() {
  using obstacle::SlowdownSpeed;
  bool pass = SlowdownSpeed(10.0) == 1.0 && SlowdownSpeed(7.5) == 0.5 &&
              SlowdownSpeed(5.0) == 0.0;
  // An occupied cell just past the corridor end leaves the command alone.
  obstacle::OccupancyGrid grid;
  sim::LidarFrame frame;
  frame.xyz = Points3d(3, 2);
  frame.xyz.col(0) = Vector3d(3.1 + 15.2, 0.1, 0.0);
  frame.xyz.col(1) = Vector3d(3.1 + 15.2, 0.1, 1.0);
  frame.intensity = Eigen::VectorXf::Constant(2, 10.f);
  grid = obstacle::BuildGrid(frame);
  control::TwistCommand cmd;
  cmd.linear_v = 3.0;
  const auto out = obstacle::ModifySpeed(cmd, grid, obstacle::CorridorFromSteering(0.0));
  pass = pass && out.linear_v == 3.0 && grid.OccupiedCount() > 0;
  return {pass, fmt::format("v(10)={} v(7.5)={} v(5)={} beyond 15 m: {}", SlowdownSpeed(10.0),
                            SlowdownSpeed(7.5), SlowdownSpeed(5.0), out.linear_v)};
}

Outcome PedestrianStops() {
  const harness::Scenario base = harness::LoadScenario(kScenarios / "pedestrian.yaml");
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ahead(6.0, 9.0), side(1.5, 2.5);
  int stopped = 0;
  double worst_gap = INFINITY;
  for (int i = 0; i < 20; ++i) {
    harness::Scenario sc = base;
    const double lateral = side(rng);
    auto& ped = sc.pedestrians.at(0);
    ped.pedestrian.position = Vector2d(25.0, -lateral);
    ped.walk_velocity = Vector2d(0.0, 1.4);
    ped.trigger_distance = std::hypot(ahead(rng), lateral);
    harness::RunOptions options;
    options.seed = std::uint64_t(100 + i);
    const auto r = harness::Run(sc, options);
    bool obstacle_stop = false;
    for (const auto& e : r.metrics.stops) {
      obstacle_stop = obstacle_stop || e.source == arbiter::Source::kObstacle;
    }
    worst_gap = std::min(worst_gap, r.metrics.min_gap);
    if (obstacle_stop && r.metrics.min_gap >= 0.5) ++stopped;
  }
  return {stopped == 20, fmt::format("{}/20 runs stopped, smallest gap {:.3f} m", stopped,
                                     worst_gap)};
}

Outcome SideClearance() {
  const double c3 = obstacle::RequiredSideClearance(3.0);
  const double c5 = obstacle::RequiredSideClearance(5.0);
  const bool pass = c3 >= 1.05 && c3 <= 1.25 && c5 >= 1.55 && c5 <= 1.85;
  return {pass, fmt::format("3 m/s: {:.3f} m, 5 m/s: {:.3f} m", c3, c5)};
}

struct SignStats {
  int detected = 0;
  double mean_points = 0.0;
};

SignStats ScanSign(double range, int frames, std::uint64_t seed) {
  const sim::VehicleParams vehicle;
  sim::WorldModel world;
  sim::SignSpec sign;
  sign.center = Vector3d(vehicle.lidar_offset_x + range, 0.0, 2.1);
  sign.normal = -Vector3d::UnitX();
  world.signs.push_back(sign);
  const Vector3d sensor(vehicle.lidar_offset_x, 0.0, vehicle.lidar_mount_height);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(0.0, 0.2);
  SignStats s;
  for (int i = 0; i < frames; ++i) {
    sim::LidarConfig config;
    config.azimuth_offset_deg = offset(rng);
    config.range_noise_stddev = 0.01;
    const auto det = sign::DetectSign(sim::Scan(world, {}, vehicle, config, &rng), sensor);
    if (!det) continue;
    ++s.detected;
    s.mean_points += double(det->point_count);
  }
  if (s.detected > 0) s.mean_points /= s.detected;
  return s;
}

Outcome SignDetectionDistance() {
  const SignStats at10 = ScanSign(10.0, 100, 11);
  const SignStats at7 = ScanSign(7.0, 100, 12);
  const bool pass = at10.detected >= 95 && at10.mean_points >= 25.0 &&
                    at10.mean_points <= 60.0 && at7.mean_points > at10.mean_points;
  return {pass, fmt::format("10 m: {}/100 frames, N={:.1f}; 7 m: N={:.1f}", at10.detected,
                            at10.mean_points, at7.mean_points)};
}

Outcome SignStopProfile() {
  const auto r = harness::Run(harness::LoadScenario(kScenarios / "sign.yaml"));
  if (r.metrics.stops.empty()) return {false, "no stop event"};
  const auto& e = r.metrics.stops.front();
  double trigger_d = NAN;
  for (const auto& rec : r.log) {
    if (rec.t >= e.trigger_time - 1e-9 && !std::isnan(rec.sign_d)) {
      trigger_d = rec.sign_d;
      break;
    }
  }
  const bool pass = e.source == arbiter::Source::kSign && e.mean_decel >= 0.35 &&
                    e.mean_decel <= 0.55;
  return {pass, fmt::format("source {}, from {:.2f} m/s at d={:.2f} m, mean decel {:.3f} m/s^2",
                            arbiter::ToString(e.source), e.initial_speed, trigger_d,
                            e.mean_decel)};
}

Outcome StageOracles() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(0, 60), path_len(2, 12);
  std::uniform_real_distribution<double> extent(0.3, 3.0), u(-20.0, 20.0);
  int ror_bad = 0, sor_bad = 0;
  double cte_worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto cloud = oracle::RandomCloud(rng, std::size_t(size(rng)), extent(rng));
    Points3d pts(3, Eigen::Index(cloud.size()));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      pts.col(Eigen::Index(i)) = Vector3d(cloud[i].x, cloud[i].y, cloud[i].z);
    }
    const auto ror = sign::RadiusOutlierRemoval(pts, 0.5, 3);
    const auto sor = sign::StatisticalOutlierRemoval(pts, 8, 1.0);
    if (std::vector<long>(ror.begin(), ror.end()) != oracle::RadiusOutliers(cloud, 0.5, 3)) {
      ++ror_bad;
    }
    if (std::vector<long>(sor.begin(), sor.end()) !=
        oracle::StatisticalOutliers(cloud, 8, 1.0)) {
      ++sor_bad;
    }

    const int n = path_len(rng);
    Points2d path(2, n);
    std::vector<oracle::P2> ref;
    for (int i = 0; i < n; ++i) {
      path.col(i) = Vector2d(u(rng), u(rng));
      ref.push_back({path(0, i), path(1, i)});
    }
    const Vector2d p(u(rng), u(rng));
    cte_worst = std::max(cte_worst, std::abs(waypoint::CrossTrackError(path, p) -
                                             oracle::CrossTrack(ref, {p.x(), p.y()})));
  }
  return {ror_bad == 0 && sor_bad == 0 && cte_worst <= 1e-9,
          fmt::format("radius mismatches {}, statistical mismatches {}, worst cte diff {:.3g}",
                      ror_bad, sor_bad, cte_worst)};
}

Outcome Determinism() {
  int identical = 0, total = 0;
  for (const char* name : {"figure8.yaml", "pedestrian.yaml", "sign.yaml"}) {
    const auto sc = harness::LoadScenario(kScenarios / name);
    for (std::uint64_t seed : {1u, 7u}) {
      harness::RunOptions options;
      options.seed = seed;
      ++total;
      if (LogText(harness::Run(sc, options)) == LogText(harness::Run(sc, options))) ++identical;
    }
  }
  return {identical == total, fmt::format("{}/{} repeated runs byte-identical", identical, total)};
}

}  // namespace
}  // namespace lastmile

int main() {
  using namespace lastmile;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"braking calibration", BrakingCalibration},
      {"figure-8 tracking", FigureEightTracking},
      {"curvature speed limiting", CurvatureLimit},
      {"obstacle slowdown law", SlowdownLaw},
      {"pedestrian stop", PedestrianStops},
      {"side clearance", SideClearance},
      {"sign detection distance", SignDetectionDistance},
      {"sign stop profile", SignStopProfile},
      {"pipeline stage oracles", StageOracles},
      {"determinism", Determinism},
  };
  int failed = 0;
  int number = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", number++, name,
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}

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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lastmile/core/errors.hpp"
#include "lastmile/waypoint/follower.hpp"
#include "lastmile/waypoint/path_compiler.hpp"
#include "lastmile/waypoint/waypoint_io.hpp"
#include "oracles.hpp"

namespace lastmile::waypoint {
namespace {

constexpr GeoPoint kOrigin{30.6187, -96.3365};

WaypointList MakeList(const std::vector<Vector2d>& xy, double speed,
                      GeoPoint origin = kOrigin) {
  WaypointList list;
  list.origin = origin;
  for (const auto& p : xy) {
    const GeoPoint g = FromLocal(origin, p);
    list.waypoints.push_back({g.lat, g.lon, speed});
  }
  return list;
}

std::vector<Vector2d> StraightLine(int n, double spacing = 1.0) {
  std::vector<Vector2d> xy;
  for (int i = 0; i < n; ++i) xy.emplace_back(i * spacing, 0.0);
  return xy;
}

TEST(Geodesy, Examples) {
  EXPECT_EQ(ToLocal(kOrigin, kOrigin.lat, kOrigin.lon), Vector2d::Zero());
  const Vector2d p = ToLocal(GeoPoint{0.0, 0.0}, 1e-5, 0.0);
  EXPECT_NEAR(p.y(), 1.113, 1e-3);
  EXPECT_NEAR(p.y(), kEarthRadius * 1e-5 * std::numbers::pi / 180.0, 1e-12);
}

TEST(Geodesy, RoundTripWithinMillimetreOverTenKilometres) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lat0(-70.0, 70.0), lon0(-179.0, 179.0),
      off(-10000.0, 10000.0);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint origin{lat0(rng), lon0(rng)};
    const Vector2d xy(off(rng), off(rng));
    const GeoPoint g = FromLocal(origin, xy);
    EXPECT_LT((ToLocal(origin, g.lat, g.lon) - xy).norm(), 1e-3);
  }
}

TEST(Follower, HeadingAtTargetGivesZeroYawRate) {
  const auto list = MakeList(StraightLine(30), 2.0);
  sim::VehicleState s;
  const FollowResult r = FollowStep(list, s);
  EXPECT_NEAR(r.command.angular_v, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.command.linear_v, 2.0);
  EXPECT_FALSE(r.finished);
}

TEST(Follower, AdvancesPastTargetsInsideSwitchRadius) {
  auto list = MakeList({{1.9, 0.0}, {3.0, 0.0}, {10.0, 0.0}, {20.0, 0.0}}, 2.0);
  sim::VehicleState s;
  const FollowResult r = FollowStep(list, s);
  EXPECT_EQ(r.list.target_index, 1u);
  s.x = 1.5;
  EXPECT_EQ(FollowStep(r.list, s).list.target_index, 2u);
}

TEST(Follower, ProportionalHeadingLaw) {
  const auto list = MakeList(StraightLine(40), 2.0);
  sim::VehicleState s;
  s.x = 0.0;
  // Bearing to (2, 0) seen from (0, 0) is 0; heading -0.2 gives error 0.2.
  s.heading = -0.2;
  auto shifted = list;
  shifted.target_index = 2;
  const FollowResult r = FollowStep(shifted, s);
  EXPECT_NEAR(r.command.angular_v, 0.3, 1e-9);
}

TEST(Follower, YawRateSignAndBound) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-50.0, 50.0), h(-3.14, 3.14);
  const auto list = MakeList(StraightLine(100), 2.0);
  const FollowerParams params;
  for (int i = 0; i < 2000; ++i) {
    sim::VehicleState s;
    s.x = u(rng) + 50.0;
    s.y = u(rng);
    s.heading = h(rng);
    const FollowResult r = FollowStep(list, s, params);
    if (r.finished) continue;
    const Vector2d target =
        ToLocal(list.origin, r.list.waypoints[r.list.target_index].lat,
                r.list.waypoints[r.list.target_index].lon);
    const double err = std::remainder(
        std::atan2(target.y() - s.y, target.x() - s.x) - s.heading, 2.0 * std::numbers::pi);
    if (std::abs(err) > 1e-9) {
      EXPECT_EQ(std::signbit(r.command.angular_v), std::signbit(err));
    }
    EXPECT_LE(std::abs(r.command.angular_v), params.heading_gain * std::numbers::pi + 1e-12);
  }
}

TEST(Follower, TargetIndexNeverDecreases) {
  auto list = MakeList(StraightLine(50), 2.0);
  sim::VehicleState s;
  std::size_t last = 0;
  for (double x = 0.0; x < 60.0; x += 0.1) {
    s.x = x;
    const FollowResult r = FollowStep(list, s);
    EXPECT_GE(r.list.target_index, last);
    EXPECT_LT(r.list.target_index, list.size());
    last = r.list.target_index;
    list = r.list;
  }
}

TEST(Follower, StopsAtEndOfList) {
  auto list = MakeList(StraightLine(10), 2.0);
  list.target_index = 8;
  sim::VehicleState s;
  s.x = 8.5;
  FollowResult r = FollowStep(list, s);
  EXPECT_TRUE(r.finished);
  EXPECT_EQ(r.command.linear_v, 0.0);
  EXPECT_EQ(r.command.angular_v, 0.0);
  // Coasting past the end keeps the route finished.
  s.x = 14.0;
  r = FollowStep(r.list, s);
  EXPECT_TRUE(r.finished);
  EXPECT_EQ(r.command.linear_v, 0.0);
}

TEST(Follower, TapersSpeedNearEnd) {
  auto list = MakeList(StraightLine(30), 3.0);
  list.target_index = 25;
  const FollowerParams params;
  sim::VehicleState s;
  s.x = 24.2;
  const FollowResult r = FollowStep(list, s, params);
  EXPECT_EQ(r.list.target_index, 27u);
  const double remaining = 29.0 - 24.2;
  EXPECT_NEAR(r.command.linear_v,
              std::sqrt(2.0 * params.decel_limit *
                        (remaining - params.switch_radius + params.arrival_slack)),
              1e-6);
  s.x = 5.0;
  list.target_index = 6;
  EXPECT_DOUBLE_EQ(FollowStep(list, s, params).command.linear_v, 3.0);
}

TEST(Follower, EmptyListThrows) {
  EXPECT_THROW(FollowStep(WaypointList{}, sim::VehicleState{}), NoPathError);
}

TEST(CrossTrack, Examples) {
  const auto list = MakeList(StraightLine(10), 2.0);
  sim::VehicleState s;
  s.x = 3.3;
  EXPECT_NEAR(CrossTrackError(list, s), 0.0, 1e-9);
  s.y = 0.12;
  EXPECT_NEAR(CrossTrackError(list, s), 0.12, 1e-9);
  s.y = -0.12;
  EXPECT_NEAR(CrossTrackError(list, s), 0.12, 1e-9);
  EXPECT_THROW(CrossTrackError(MakeList({{0, 0}}, 1.0), s), NoPathError);
}

TEST(CrossTrack, MatchesBruteForceOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_int_distribution<int> len(2, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    Points2d path(2, n);
    std::vector<oracle::P2> ref;
    for (int i = 0; i < n; ++i) {
      path.col(i) = Vector2d(u(rng), u(rng));
      ref.push_back({path(0, i), path(1, i)});
    }
    const Vector2d p(u(rng), u(rng));
    EXPECT_NEAR(CrossTrackError(path, p), oracle::CrossTrack(ref, {p.x(), p.y()}), 1e-9);
  }
}

RecordedTrace ArcTrace(double radius, double v, double angle, double rate = 20.0,
                       GeoPoint origin = kOrigin) {
  RecordedTrace trace;
  const double omega = radius > 0 ? v / radius : 0.0;
  const double dt = 1.0 / rate;
  const double duration = radius > 0 ? angle / omega : angle / v;
  for (double t = 0.0; t <= duration + 1e-9; t += dt) {
    Vector2d xy;
    if (radius > 0) {
      xy = {radius * std::sin(omega * t), radius * (1.0 - std::cos(omega * t))};
    } else {
      xy = {v * t, 0.0};
    }
    const GeoPoint g = FromLocal(origin, xy);
    trace.samples.push_back({g.lat, g.lon, v, omega, t});
  }
  return trace;
}

TEST(CompilePath, StraightKeepsTargetSpeed) {
  const auto list = CompilePath(ArcTrace(0.0, 2.0, 30.0), 3.0);
  for (const auto& wp : list.waypoints) EXPECT_DOUBLE_EQ(wp.speed, 3.0);
}

TEST(CompilePath, CurvatureLimits) {
  // r = 4.5 gives 1.5 m/s; r = 18 sits exactly at 3 m/s.
  auto list = CompilePath(ArcTrace(4.5, 1.5, 1.0), 3.0);
  for (const auto& wp : list.waypoints) EXPECT_NEAR(wp.speed, 1.5, 1e-9);
  list = CompilePath(ArcTrace(18.0, 3.0, 1.0), 3.0);
  for (const auto& wp : list.waypoints) EXPECT_NEAR(wp.speed, 3.0, 1e-9);
}

TEST(CompilePath, SpacingIsOneMetre) {
  const auto list = CompilePath(ArcTrace(10.0, 2.0, 3.0), 3.0);
  const Points2d path = LocalPath(list);
  for (Eigen::Index i = 1; i + 1 < path.cols(); ++i) {
    // Chords of a 10 m circle: 1 m of arc is 0.99958 m of chord.
    EXPECT_NEAR((path.col(i) - path.col(i - 1)).norm(), 1.0, 0.05);
  }
  EXPECT_LE((path.col(path.cols() - 1) - path.col(path.cols() - 2)).norm(), 1.0 + 1e-9);
}

TEST(CompilePath, OneListPerSpeed) {
  const auto lists = CompilePaths(ArcTrace(10.0, 2.0, 3.0), {1.0, 2.0, 3.0});
  ASSERT_EQ(lists.size(), 3u);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (const auto& wp : lists[i].waypoints) EXPECT_LE(wp.speed, 1.0 + double(i));
  }
}

TEST(CompilePath, DegenerateTraces) {
  RecordedTrace trace;
  EXPECT_THROW(CompilePath(trace, 3.0), DegenerateInputError);
  trace.samples = {{kOrigin.lat, kOrigin.lon, 0, 0, 0}, {kOrigin.lat, kOrigin.lon, 0, 0, 1}};
  EXPECT_THROW(CompilePath(trace, 3.0), DegenerateInputError);
}

TEST(WaypointIo, RoundTripKeepsSevenDecimals) {
  const auto list = CompilePath(ArcTrace(10.0, 2.0, 2.0), 2.5);
  std::stringstream buf;
  WriteWaypoints(buf, list);
  std::string line;
  std::getline(buf, line);
  const auto dot = line.find('.');
  const auto comma = line.find(',');
  EXPECT_GE(comma - dot - 1, 7u);
  buf.seekg(0);
  const auto back = ReadWaypoints(buf);
  ASSERT_EQ(back.size(), list.size());
  const Points2d a = LocalPath(list);
  Points2d b = a;
  for (std::size_t i = 0; i < back.size(); ++i) {
    b.col(Eigen::Index(i)) = ToLocal(list.origin, back.waypoints[i].lat, back.waypoints[i].lon);
    EXPECT_NEAR(back.waypoints[i].speed, list.waypoints[i].speed, 1e-3);
  }
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(WaypointIo, ParseErrorNamesLine) {
  std::stringstream buf("30.1,-96.2,1.0\n# comment\n30.2,oops,1.0\n");
  try {
    ReadWaypoints(buf, "route.waypoints");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("route.waypoints:3"), std::string::npos);
  }
  std::stringstream bad("30.1,-96.2,-1.0\n");
  EXPECT_THROW(ReadWaypoints(bad), ParseError);
}

TEST(WaypointIo, FileName) {
  EXPECT_EQ(WaypointFileName("figure8", 2.5), "figure8_2.5mps.waypoints");
  EXPECT_EQ(WaypointFileName("loop", 3.0), "loop_3mps.waypoints");
}

TEST(WaypointIo, TraceRoundTrip) {
  const auto trace = ArcTrace(10.0, 2.0, 1.0);
  std::stringstream buf;
  WriteTrace(buf, trace);
  const auto back = ReadTrace(buf);
  ASSERT_EQ(back.samples.size(), trace.samples.size());
  for (std::size_t i = 0; i < back.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].lat, trace.samples[i].lat);
    EXPECT_EQ(back.samples[i].omega, trace.samples[i].omega);
    EXPECT_EQ(back.samples[i].t, trace.samples[i].t);
  }
}

}  // namespace
}  // namespace lastmile::waypoint

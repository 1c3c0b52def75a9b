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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lastmile/arbiter/arbiter.hpp"

namespace lastmile::arbiter {
namespace {

SpeedCommand Cmd(double v, Source source, double decel = 1.0, double w = 0.0) {
  SpeedCommand c;
  c.twist.linear_v = v;
  c.twist.decel_limit = decel;
  c.twist.angular_v = w;
  c.source = source;
  return c;
}

TEST(Select, LowestSpeedWins) {
  const std::vector<SpeedCommand> cmds{Cmd(3.0, Source::kWaypoint, 1.0, 0.2),
                                       Cmd(1.5, Source::kObstacle),
                                       Cmd(2.0, Source::kSign)};
  const SpeedCommand out = Select(cmds);
  EXPECT_EQ(out.source, Source::kObstacle);
  EXPECT_EQ(out.twist.linear_v, 1.5);
  EXPECT_EQ(out.twist.angular_v, 0.2);
}

TEST(Select, TieGoesToLargerDecel) {
  const std::vector<SpeedCommand> cmds{Cmd(0.0, Source::kSign, 0.45),
                                       Cmd(0.0, Source::kObstacle, 6.4)};
  EXPECT_EQ(Select(cmds).source, Source::kObstacle);
  EXPECT_EQ(Select(cmds).twist.decel_limit, 6.4);
}

TEST(Select, FullTieUsesSourcePriority) {
  const std::vector<SpeedCommand> cmds{Cmd(0.0, Source::kWaypoint), Cmd(0.0, Source::kSign),
                                       Cmd(0.0, Source::kManualStop),
                                       Cmd(0.0, Source::kObstacle)};
  EXPECT_EQ(Select(cmds).source, Source::kManualStop);
  const std::vector<SpeedCommand> two{Cmd(1.0, Source::kWaypoint), Cmd(1.0, Source::kSign)};
  EXPECT_EQ(Select(two).source, Source::kSign);
}

TEST(Select, SingleCommandUnchanged) {
  const std::vector<SpeedCommand> one{Cmd(2.0, Source::kWaypoint, 1.0, -0.3)};
  const SpeedCommand out = Select(one);
  EXPECT_EQ(out.twist.linear_v, 2.0);
  EXPECT_EQ(out.twist.angular_v, -0.3);
  EXPECT_EQ(out.source, Source::kWaypoint);
}

TEST(Select, EmptyThrows) {
  EXPECT_THROW(Select(std::vector<SpeedCommand>{}), std::invalid_argument);
}

TEST(Select, MinimumAndWaypointYawRateProperty) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> v(0.0, 5.0), w(-1.0, 1.0);
  std::uniform_int_distribution<int> n(0, 3), src(1, 3);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<SpeedCommand> cmds{Cmd(v(rng), Source::kWaypoint, 1.0, w(rng))};
    for (int i = n(rng); i > 0; --i) {
      cmds.push_back(Cmd(v(rng), static_cast<Source>(src(rng)), 1.0, w(rng)));
    }
    double lowest = cmds[0].twist.linear_v;
    for (const auto& c : cmds) lowest = std::min(lowest, c.twist.linear_v);
    const SpeedCommand out = Select(cmds);
    ASSERT_EQ(out.twist.linear_v, lowest);
    ASSERT_EQ(out.twist.angular_v, cmds[0].twist.angular_v);
  }
}

TEST(SourceNames, RoundTrip) {
  for (Source s : {Source::kWaypoint, Source::kObstacle, Source::kSign, Source::kManualStop}) {
    EXPECT_EQ(SourceFromString(ToString(s)), s);
  }
  EXPECT_THROW(SourceFromString("radar"), std::invalid_argument);
}

TEST(Display, Examples) {
  EXPECT_EQ(DisplayMessage(0.0), Display::kStopped);
  EXPECT_EQ(DisplayMessage(3.0), Display::kMoving);
  EXPECT_EQ(ToString(Display::kStopped), "STOPPED");
}

TEST(Display, NoChatterNearThreshold) {
  DisplayTracker tracker;
  tracker.Update(3.0, 0.0);
  int transitions = 0;
  Display last = tracker.message();
  for (int i = 0; i < 100; ++i) {
    const Display d = tracker.Update(i % 2 == 0 ? 0.12 : 0.08, 0.1 * i);
    if (d != last) ++transitions;
    last = d;
  }
  EXPECT_EQ(transitions, 1);
  EXPECT_EQ(last, Display::kStopped);
}

TEST(Display, TransitionsExactlyAtThresholds) {
  DisplayTracker tracker;
  // Rising ramp from rest.
  double moved_at = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double v = i * 0.001;
    if (tracker.Update(v, v) == Display::kMoving && moved_at < 0) moved_at = v;
  }
  EXPECT_NEAR(moved_at, 0.2, 1e-9);
  EXPECT_NEAR(tracker.since(), 0.2, 1e-9);
  double stopped_at = -1.0;
  for (int i = 300; i >= 0; --i) {
    const double v = i * 0.001;
    if (tracker.Update(v, v) == Display::kStopped && stopped_at < 0) stopped_at = v;
  }
  EXPECT_LT(stopped_at, 0.1);
  EXPECT_GT(stopped_at, 0.1 - 0.0011);
}

}  // namespace
}  // namespace lastmile::arbiter

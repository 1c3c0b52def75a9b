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

#include "lastmile/arbiter/arbiter.hpp"

#include <stdexcept>
#include <string>

namespace lastmile::arbiter {
namespace {

int Priority(Source source) {
  switch (source) {
    case Source::kManualStop: return 3;
    case Source::kObstacle: return 2;
    case Source::kSign: return 1;
    case Source::kWaypoint: return 0;
  }
  return 0;
}

// True when `a` should win over `b`.
bool Beats(const SpeedCommand& a, const SpeedCommand& b) {
  if (a.twist.linear_v != b.twist.linear_v) {
    return a.twist.linear_v < b.twist.linear_v;
  }
  if (a.twist.decel_limit != b.twist.decel_limit) {
    return a.twist.decel_limit > b.twist.decel_limit;
  }
  return Priority(a.source) > Priority(b.source);
}

}  // namespace

std::string_view ToString(Source source) {
  switch (source) {
    case Source::kWaypoint: return "waypoint";
    case Source::kObstacle: return "obstacle";
    case Source::kSign: return "sign";
    case Source::kManualStop: return "manual-stop";
  }
  return "unknown";
}

Source SourceFromString(std::string_view name) {
  for (Source s : {Source::kWaypoint, Source::kObstacle, Source::kSign,
                   Source::kManualStop}) {
    if (ToString(s) == name) return s;
  }
  throw std::invalid_argument("unknown command source: " + std::string(name));
}

SpeedCommand Select(std::span<const SpeedCommand> commands) {
  if (commands.empty()) {
    throw std::invalid_argument("speed arbiter needs at least one command");
  }
  const SpeedCommand* best = &commands.front();
  const SpeedCommand* waypoint = nullptr;
  for (const SpeedCommand& cmd : commands) {
    if (Beats(cmd, *best)) best = &cmd;
    if (cmd.source == Source::kWaypoint && waypoint == nullptr) waypoint = &cmd;
  }
  SpeedCommand out = *best;
  if (waypoint != nullptr) out.twist.angular_v = waypoint->twist.angular_v;
  return out;
}

std::string_view ToString(Display display) {
  return display == Display::kMoving ? "MOVING" : "STOPPED";
}

Display DisplayTracker::Update(double speed, double t) {
  Display next = message_;
  if (message_ == Display::kMoving && speed < thresholds_.stop_below) {
    next = Display::kStopped;
  } else if (message_ == Display::kStopped && speed >= thresholds_.move_at) {
    next = Display::kMoving;
  }
  if (next != message_) {
    message_ = next;
    since_ = t;
  }
  return message_;
}

Display DisplayMessage(double speed) {
  return speed < 0.1 ? Display::kStopped : Display::kMoving;
}

}  // namespace lastmile::arbiter

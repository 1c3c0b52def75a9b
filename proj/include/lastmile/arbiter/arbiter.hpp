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

#pragma once

#include <span>
#include <string_view>

#include "lastmile/control/twist.hpp"

namespace lastmile::arbiter {

enum class Source { kWaypoint, kObstacle, kSign, kManualStop };

std::string_view ToString(Source source);
/// Inverse of ToString; throws std::invalid_argument on unknown names.
Source SourceFromString(std::string_view name);

struct SpeedCommand {
  control::TwistCommand twist;
  Source source = Source::kWaypoint;
};

/// Lowest linear velocity wins. Ties go to the larger decel limit, then
/// manual-stop > obstacle > sign > waypoint. The angular velocity always
/// comes from the waypoint command when one is present, since perception
/// only modifies speed. Throws std::invalid_argument on an empty input.
SpeedCommand Select(std::span<const SpeedCommand> commands);

enum class Display { kMoving, kStopped };

std::string_view ToString(Display display);

/// Pedestrian-facing message with hysteresis: STOPPED below 0.1 m/s, back
/// to MOVING only at 0.2 m/s.
class DisplayTracker {
 public:
  struct Thresholds {
    double stop_below = 0.1;
    double move_at = 0.2;
  };

  DisplayTracker() = default;
  explicit DisplayTracker(Thresholds thresholds) : thresholds_(thresholds) {}

  /// Updates with the measured speed at time `t` and returns the message.
  Display Update(double speed, double t = 0.0);

  Display message() const { return message_; }
  double since() const { return since_; }

 private:
  Thresholds thresholds_;
  Display message_ = Display::kStopped;
  double since_ = 0.0;
};

/// Stateless form for a vehicle with no display history.
Display DisplayMessage(double speed);

}  // namespace lastmile::arbiter

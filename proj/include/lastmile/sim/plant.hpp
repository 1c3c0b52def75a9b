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

#include "lastmile/sim/vehicle.hpp"

namespace lastmile::sim {

/// Static brake map: deceleration delivered once the brake actuator settles.
/// Exact inverse of the controller's brake lookup up to the knee.
double BrakeDecel(double brake, const VehicleParams& params = {});

/// Advances the kinematic bicycle plant by one step.
///
/// `steer_cmd` is the steering-wheel angle; the road-wheel angle is
/// steer_cmd / steering_ratio, clamped to max_steer. Drive acceleration
/// is immediate; brake deceleration follows a first-order lag. Speed never
/// goes negative. Throws InvalidStateError on non-finite input or
/// dt outside (0, 0.1].
VehicleState StepPlant(const VehicleState& state, double throttle,
                       double brake, double steer_cmd, double dt,
                       const VehicleParams& params = {});

/// Simulates a sustained full-brake stop from `speed` and returns the
/// (time, distance) it takes to reach standstill.
struct StopProfile {
  double time = 0.0;
  double distance = 0.0;
};
StopProfile SimulateFullBrakeStop(double speed, const VehicleParams& params = {},
                                  double dt = 0.02);

}  // namespace lastmile::sim

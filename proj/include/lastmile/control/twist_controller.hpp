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

#include "lastmile/control/twist.hpp"
#include "lastmile/sim/vehicle.hpp"

namespace lastmile::control {

/// Gains for the speed and steering loops. The speed loop structure is:
/// speed error -> limited accel command -> accel error against low-passed
/// measured accel -> PI throttle (filtered) or open-loop brake lookup.
struct ControllerParams {
  double speed_gain = 1.5;        // accel command per m/s of speed error
  double throttle_kp = 0.8;
  double throttle_ki = 0.4;
  double integrator_limit = 1.0;  // anti-windup clamp, throttle units
  double throttle_filter_tau = 0.3;
  double accel_filter_tau = 2.0;
  double min_steer_speed = 0.5;   // velocity floor for the bicycle inverse
  double stop_speed = 0.1;        // below this a stop command holds the brake
  double hold_brake = 0.9;
  double wheelbase = 2.57;
  double steering_ratio = 16.0;
  double max_steer = 0.55;

  /// Copies wheelbase, steering ratio and steering limit from the plant.
  static ControllerParams ForVehicle(const sim::VehicleParams& vehicle);
};

struct ControllerState {
  double filtered_accel = 0.0;
  double throttle_integrator = 0.0;
  double throttle_filter_state = 0.0;
  double previous_error = 0.0;
};

/// throttle * brake == 0 always.
struct ActuatorCommand {
  double throttle = 0.0;
  double brake = 0.0;
  double steer = 0.0;  // steering-wheel angle, rad
};

/// First-order low-pass y += dt / (tau + dt) * (u - y).
double Lowpass(double state, double raw, double dt, double tau = 2.0);

/// Open-loop brake lookup b = 0.28 ln|a| + 0.90, limited to [0, 1].
double BrakeLookup(double accel_cmd);

struct SpeedStepResult {
  ActuatorCommand command;  // steer left at zero
  ControllerState state;
};

/// One tick of the longitudinal loop.
SpeedStepResult SpeedStep(const TwistCommand& cmd, double v_meas,
                          double a_meas, const ControllerState& state,
                          double dt, const ControllerParams& params = {});

/// Road-wheel angle from the bicycle model, delta = atan(w L / max(v, floor)),
/// clamped to the steering limit.
double WheelAngleFromTwist(double angular_v, double v,
                           const ControllerParams& params = {});

/// Steering-wheel command: WheelAngleFromTwist * steering_ratio.
double SteerFromTwist(double angular_v, double v,
                      const ControllerParams& params = {});

/// Convenience wrapper owning the controller state.
class TwistController {
 public:
  explicit TwistController(ControllerParams params = {}) : params_(params) {}

  ActuatorCommand Step(const TwistCommand& cmd, const sim::VehicleState& state,
                       double dt);

  const ControllerState& state() const { return state_; }
  const ControllerParams& params() const { return params_; }

 private:
  ControllerParams params_;
  ControllerState state_;
};

}  // namespace lastmile::control

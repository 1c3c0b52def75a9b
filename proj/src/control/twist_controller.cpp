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

#include "lastmile/control/twist_controller.hpp"

#include <algorithm>
#include <cmath>

#include "lastmile/core/errors.hpp"

namespace lastmile::control {

void Validate(const TwistCommand& cmd) {
  if (!std::isfinite(cmd.linear_v) || !std::isfinite(cmd.angular_v) ||
      !std::isfinite(cmd.accel_limit) || !std::isfinite(cmd.decel_limit)) {
    throw InvalidStateError("non-finite twist command");
  }
  if (cmd.linear_v < 0.0) throw InvalidStateError("reverse is not supported");
  // A zero decel limit is legal only as "already stopped" (v_i = 0 sign stop).
  if (cmd.accel_limit <= 0.0 || cmd.decel_limit < 0.0) {
    throw InvalidStateError("twist acceleration limits must be positive");
  }
}

ControllerParams ControllerParams::ForVehicle(
    const sim::VehicleParams& vehicle) {
  ControllerParams params;
  params.wheelbase = vehicle.wheelbase;
  params.steering_ratio = vehicle.steering_ratio;
  params.max_steer = vehicle.max_steer;
  return params;
}

double Lowpass(double state, double raw, double dt, double tau) {
  return state + dt / (tau + dt) * (raw - state);
}

double BrakeLookup(double accel_cmd) {
  const double magnitude = std::abs(accel_cmd);
  if (magnitude <= 0.0) return 0.0;
  return std::clamp(0.28 * std::log(magnitude) + 0.90, 0.0, 1.0);
}

SpeedStepResult SpeedStep(const TwistCommand& cmd, double v_meas,
                          double a_meas, const ControllerState& state,
                          double dt, const ControllerParams& params) {
  SpeedStepResult out;
  ControllerState& next = out.state;
  next = state;
  next.filtered_accel =
      Lowpass(state.filtered_accel, a_meas, dt, params.accel_filter_tau);

  const auto release_throttle = [&next] {
    next.throttle_integrator = 0.0;
    next.throttle_filter_state = 0.0;
    next.previous_error = 0.0;
  };

  // Stop commands brake open-loop at the requested rate, then hold.
  if (cmd.linear_v <= 0.0) {
    release_throttle();
    out.command.brake = BrakeLookup(cmd.decel_limit);
    if (v_meas < params.stop_speed) {
      out.command.brake = std::max(out.command.brake, params.hold_brake);
    }
    return out;
  }

  const double a_cmd = std::clamp(params.speed_gain * (cmd.linear_v - v_meas),
                                  -cmd.decel_limit, cmd.accel_limit);
  const double error = a_cmd - next.filtered_accel;

  if (error >= 0.0) {
    // Trapezoidal PI, then the output filter that trades tracking for
    // smoothness.
    next.throttle_integrator = std::clamp(
        state.throttle_integrator +
            params.throttle_ki * dt * 0.5 * (error + state.previous_error),
        -params.integrator_limit, params.integrator_limit);
    next.previous_error = error;
    const double raw = std::clamp(
        params.throttle_kp * error + next.throttle_integrator, 0.0, 1.0);
    next.throttle_filter_state =
        Lowpass(state.throttle_filter_state, raw, dt, params.throttle_filter_tau);
    out.command.throttle = std::clamp(next.throttle_filter_state, 0.0, 1.0);
    return out;
  }

  release_throttle();
  // Coast when the command still asks for positive acceleration.
  out.command.brake = a_cmd < 0.0 ? BrakeLookup(a_cmd) : 0.0;
  return out;
}

double WheelAngleFromTwist(double angular_v, double v,
                           const ControllerParams& params) {
  const double speed = std::max(v, params.min_steer_speed);
  return std::clamp(std::atan(angular_v * params.wheelbase / speed),
                    -params.max_steer, params.max_steer);
}

double SteerFromTwist(double angular_v, double v,
                      const ControllerParams& params) {
  return WheelAngleFromTwist(angular_v, v, params) * params.steering_ratio;
}

ActuatorCommand TwistController::Step(const TwistCommand& cmd,
                                      const sim::VehicleState& vehicle,
                                      double dt) {
  Validate(cmd);
  SpeedStepResult result =
      SpeedStep(cmd, vehicle.speed, vehicle.accel, state_, dt, params_);
  state_ = result.state;
  result.command.steer = SteerFromTwist(cmd.angular_v, vehicle.speed, params_);
  return result.command;
}

}  // namespace lastmile::control

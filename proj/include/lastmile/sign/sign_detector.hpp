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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lastmile/control/twist.hpp"
#include "lastmile/core/types.hpp"
#include "lastmile/sim/lidar.hpp"

namespace lastmile::sign {

struct FilterParams {
  double fov_side = 10.0;
  double min_intensity = 85.0;
  double ror_radius = 0.5;
  std::size_t ror_min_neighbors = 3;
  std::size_t sor_k = 8;
  double sor_stddev_mult = 1.0;
  double plane_dist_tol = 0.05;
  double normal_min_a = 0.9;
  std::size_t min_sign_points = 10;
  int ransac_iterations = 200;
  std::uint64_t ransac_seed = 0x5157;
  int max_planes = 4;
  // Minimum in-plane spread (m, std-dev) along the plane's narrower axis.
  // A single LiDAR ring is a line and leaves the plane undetermined.
  double min_plane_spread = 0.05;
};

struct SignDetection {
  Eigen::Vector4d plane = Eigen::Vector4d::Zero();  // a, b, c, d; a >= 0
  Points3d inliers;
  double distance = 0.0;  // range from the sensor to the nearest inlier
  std::size_t point_count = 0;
};

/// Point counts surviving each stage, for diagnostics and plots.
struct StageCounts {
  std::size_t input = 0;
  std::size_t fov = 0;
  std::size_t intensity = 0;
  std::size_t radius = 0;
  std::size_t statistical = 0;
  std::size_t plane = 0;
};

/// Extracts up to max_planes planes from `points` (sensor frame) and returns
/// the nearest one facing the sensor (|a| >= normal_min_a, normal flipped
/// so a >= 0) with at least min_sign_points inliers.
std::optional<SignDetection> PlaneSegment(const Points3d& points,
                                          const FilterParams& params = {});

/// Runs the five stages on a vehicle-frame frame. `sensor_origin` is the
/// LiDAR position in the vehicle frame; points are shifted into the sensor
/// frame before filtering.
std::optional<SignDetection> DetectSign(const sim::LidarFrame& frame,
                                        const Vector3d& sensor_origin,
                                        const FilterParams& params = {},
                                        StageCounts* counts = nullptr);

struct SignStopParams {
  double trigger_distance = 10.0;  // m; farther detections are only logged
  double latch_distance = 1.5;  // m; closer detections hold zero at once
  double hold_time = 3.0;       // s stopped before the harness resumes
  double cooldown_distance = 6.0;  // m driven after resuming with signs ignored
  double stopped_speed = 0.05;
};

/// Zero-speed command decelerating at v_i^2 / (2 d). Throws
/// InvalidDetectionError when d <= 0.
control::TwistCommand SignSpeedCommand(const SignDetection& detection, double v_i,
                                       const control::TwistCommand& base = {});

/// Per-run stop state for sign events: latches speed and distance at first
/// detection, holds the stop, then ignores signs for a cooldown distance.
class SignStopLatch {
 public:
  enum class Phase { kIdle, kStopping, kHolding, kCooldown };

  explicit SignStopLatch(SignStopParams params = {}) : params_(params) {}

  /// Returns the sign command for this tick, if any. `odometer` is the
  /// total distance driven.
  std::optional<control::TwistCommand> Update(
      const std::optional<SignDetection>& detection, double speed,
      double odometer, double dt, const control::TwistCommand& base);

  Phase phase() const { return phase_; }
  double latched_speed() const { return latched_speed_; }
  double latched_distance() const { return latched_distance_; }

 private:
  SignStopParams params_;
  Phase phase_ = Phase::kIdle;
  control::TwistCommand command_;
  double latched_speed_ = 0.0;
  double latched_distance_ = 0.0;
  double held_for_ = 0.0;
  double resume_odometer_ = 0.0;
};

/// "t,d,N,a,b,c" detection log line (no trailing newline).
std::string DetectionLogLine(double t, const SignDetection& detection);

}  // namespace lastmile::sign

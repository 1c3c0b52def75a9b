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
#include <random>
#include <vector>

#include <Eigen/Core>

#include "lastmile/core/types.hpp"
#include "lastmile/sim/vehicle.hpp"
#include "lastmile/sim/world.hpp"

namespace lastmile::sim {

/// One sweep of returns in the vehicle frame (origin at the rear axle on
/// the ground, x forward, y left, z up).
struct LidarFrame {
  Points3d xyz;
  Eigen::VectorXf intensity;
  std::vector<std::uint8_t> ring;
  double timestamp = 0.0;

  Eigen::Index size() const { return xyz.cols(); }
  bool empty() const { return xyz.cols() == 0; }
};

/// Keeps the listed points, preserving order.
LidarFrame Select(const LidarFrame& frame, const IndexList& indices);

struct LidarConfig {
  int rings = 16;
  double lowest_elevation_deg = -15.0;
  double ring_spacing_deg = 2.0;
  double azimuth_resolution_deg = 0.2;
  double azimuth_offset_deg = 0.0;
  double min_range = 0.4;
  double max_range = 100.0;
  double background_intensity = 20.0;
  double range_noise_stddev = 0.0;  // m, Gaussian
};

/// Elevation of `ring` in radians.
double RingElevation(int ring, const LidarConfig& config);

/// Sensor origin in the world frame.
Vector3d LidarOrigin(const VehicleState& state, const VehicleParams& params);

/// Ray-casts one full revolution against ground, boxes, pedestrians and
/// signs. `rng` is only drawn from when range noise is enabled.
LidarFrame Scan(const WorldModel& world, const VehicleState& state,
                const VehicleParams& params, const LidarConfig& config,
                std::mt19937_64* rng = nullptr, double timestamp = 0.0);

}  // namespace lastmile::sim

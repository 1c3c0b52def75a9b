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

#include <vector>

#include "lastmile/core/types.hpp"

namespace lastmile::sim {

/// Axis-aligned box standing on the ground.
struct Box {
  Vector2d center = Vector2d::Zero();
  Vector2d size = Vector2d::Ones();  // extent along x and y
  double height = 1.0;
};

/// Vertical cylinder moving in a straight line.
struct Pedestrian {
  Vector2d position = Vector2d::Zero();
  Vector2d velocity = Vector2d::Zero();
  double height = 1.7;
  double radius = 0.25;
};

/// Flat rectangular retroreflective sign, world frame.
struct SignSpec {
  Vector3d center = Vector3d(0.0, 0.0, 2.1);
  Vector3d normal = Vector3d::UnitX();
  double width = 0.75;
  double height = 0.75;
  double intensity = 200.0;  // nominal return, 0-255
};

struct WorldModel {
  std::vector<Box> static_obstacles;
  std::vector<Pedestrian> pedestrians;
  std::vector<SignSpec> signs;
};

/// Throws InvalidStateError on non-positive sizes/heights, non-unit sign
/// normals, or intensities outside [0, 255].
void Validate(const WorldModel& world);

/// Advances every pedestrian along its velocity.
WorldModel StepPedestrians(const WorldModel& world, double dt);

}  // namespace lastmile::sim

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

#include "lastmile/sim/world.hpp"

#include <cmath>

#include "lastmile/core/errors.hpp"

namespace lastmile::sim {

void Validate(const WorldModel& world) {
  for (const Box& box : world.static_obstacles) {
    if (!(box.height > 0.0) || !(box.size.array() > 0.0).all() ||
        !box.center.allFinite()) {
      throw InvalidStateError("obstacle boxes need positive size and height");
    }
  }
  for (const Pedestrian& ped : world.pedestrians) {
    if (!(ped.height > 0.0) || !(ped.radius > 0.0) ||
        !ped.position.allFinite() || !ped.velocity.allFinite()) {
      throw InvalidStateError("pedestrians need positive height and radius");
    }
  }
  for (const SignSpec& sign : world.signs) {
    if (std::abs(sign.normal.norm() - 1.0) > 1e-6) {
      throw InvalidStateError("sign normal must be a unit vector");
    }
    if (!(sign.width > 0.0) || !(sign.height > 0.0)) {
      throw InvalidStateError("sign width and height must be positive");
    }
    if (!(sign.intensity >= 0.0 && sign.intensity <= 255.0)) {
      throw InvalidStateError("sign intensity must lie in [0, 255]");
    }
  }
}

WorldModel StepPedestrians(const WorldModel& world, double dt) {
  if (!(dt > 0.0)) throw InvalidStateError("pedestrian step needs dt > 0");
  WorldModel next = world;
  for (Pedestrian& ped : next.pedestrians) {
    ped.position += ped.velocity * dt;
  }
  return next;
}

}  // namespace lastmile::sim

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

#include "lastmile/obstacle/corridor.hpp"

#include <cmath>
#include <numbers>

namespace lastmile::obstacle {

Corridor CorridorFromSteering(double steer_angle, const CorridorParams& params) {
  Corridor corridor;
  corridor.length = params.length;
  corridor.half_width = params.half_width;
  corridor.start_offset = params.start_offset;
  corridor.straight = std::abs(steer_angle) < params.straight_threshold;
  if (!corridor.straight) {
    corridor.radius = params.wheelbase / std::tan(steer_angle);
  }
  return corridor;
}

std::optional<CorridorCoord> Corridor::ProjectRaw(const Vector2d& p) const {
  if (straight) return CorridorCoord{p.x(), std::abs(p.y())};
  const Vector2d center(0.0, radius);
  const Vector2d rel = p - center;
  const double rho = rel.norm();
  if (rho == 0.0) return std::nullopt;
  const double r = std::abs(radius);
  // Swept angle from the start radius (centre -> origin) in the direction
  // of travel: counter-clockwise for left turns.
  const double start = std::atan2(-center.y(), -center.x());
  double swept = std::atan2(rel.y(), rel.x()) - start;
  if (radius < 0.0) swept = -swept;
  swept = std::fmod(swept, 2.0 * std::numbers::pi);
  if (swept < 0.0) swept += 2.0 * std::numbers::pi;
  return CorridorCoord{r * swept, std::abs(rho - r)};
}

std::optional<CorridorCoord> Corridor::Project(const Vector2d& p) const {
  auto coord = ProjectRaw(p);
  if (!coord) return std::nullopt;
  const double ahead = coord->distance - start_offset;
  if (ahead < 0.0 || ahead > length || coord->lateral > half_width) {
    return std::nullopt;
  }
  coord->distance = ahead;
  return coord;
}

Vector2d Corridor::CenterlinePoint(double s) const {
  if (straight) return {s, 0.0};
  const double phi = s / radius;  // signed
  return {radius * std::sin(phi), radius * (1.0 - std::cos(phi))};
}

}  // namespace lastmile::obstacle

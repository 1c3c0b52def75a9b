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

#include <cmath>
#include <numbers>

#include "lastmile/core/types.hpp"

namespace lastmile::waypoint {

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

inline constexpr double kEarthRadius = 6378137.0;

// Equirectangular tangent-plane projection about `origin`. Adequate for the
// sub-2 km paths a campus shuttle drives.

template <typename Scalar = double>
Vector2<Scalar> ToLocal(const GeoPoint& origin, Scalar lat, Scalar lon) {
  constexpr Scalar kDeg = std::numbers::pi_v<Scalar> / Scalar(180);
  const Scalar cos_lat0 = std::cos(Scalar(origin.lat) * kDeg);
  return {Scalar(kEarthRadius) * (lon - Scalar(origin.lon)) * kDeg * cos_lat0,
          Scalar(kEarthRadius) * (lat - Scalar(origin.lat)) * kDeg};
}

template <typename Scalar = double>
GeoPoint FromLocal(const GeoPoint& origin, const Vector2<Scalar>& xy) {
  constexpr Scalar kDeg = std::numbers::pi_v<Scalar> / Scalar(180);
  const Scalar cos_lat0 = std::cos(Scalar(origin.lat) * kDeg);
  return {origin.lat + double(xy.y() / (Scalar(kEarthRadius) * kDeg)),
          origin.lon +
              double(xy.x() / (Scalar(kEarthRadius) * kDeg * cos_lat0))};
}

}  // namespace lastmile::waypoint

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

#include "lastmile/harness/drive_script.hpp"

#include <algorithm>
#include <cmath>

#include "lastmile/core/errors.hpp"
#include "lastmile/core/geometry.hpp"

namespace lastmile::harness {

waypoint::RecordedTrace RecordTrace(const DriveScript& script,
                                    const waypoint::GeoPoint& origin,
                                    const Vector2d& start) {
  if (!(script.sample_rate > 0.0 && script.speed > 0.0)) {
    throw DegenerateInputError("drive script needs positive speed and sample rate");
  }
  double total = 0.0;
  for (const auto& seg : script.segments) {
    const double v = seg.speed.value_or(script.speed);
    total += seg.timed ? v * seg.duration : seg.length;
  }
  if (!(total > 0.0)) throw DegenerateInputError("drive script covers no distance");

  const double dt = 1.0 / script.sample_rate;
  Vector2d p = start;
  double heading = script.heading;
  double t = 0.0;
  waypoint::RecordedTrace trace;
  const auto emit = [&](double v, double omega) {
    const waypoint::GeoPoint geo = waypoint::FromLocal<double>(origin, p);
    trace.samples.push_back({geo.lat, geo.lon, v, omega, t});
  };

  bool first = true;
  for (const auto& seg : script.segments) {
    const double v = seg.speed.value_or(script.speed);
    double omega = 0.0;
    double duration = seg.duration;
    if (!seg.timed) {
      omega = seg.radius == 0.0 ? 0.0 : v / seg.radius;
      duration = seg.length / v;
    } else {
      omega = seg.yaw_rate;
    }
    if (duration <= 0.0) continue;
    if (first) {
      emit(v, omega);
      first = false;
    }
    const auto steps = static_cast<long>(std::ceil(duration / dt - 1e-9));
    for (long i = 0; i < steps; ++i) {
      const double h = std::min(dt, duration - double(i) * dt);
      if (std::abs(omega) > 1e-12) {
        p.x() += v / omega * (std::sin(heading + omega * h) - std::sin(heading));
        p.y() -= v / omega * (std::cos(heading + omega * h) - std::cos(heading));
      } else {
        p.x() += v * std::cos(heading) * h;
        p.y() += v * std::sin(heading) * h;
      }
      heading = NormalizeAngle(heading + omega * h);
      t += h;
      emit(v, omega);
    }
  }
  return trace;
}

}  // namespace lastmile::harness

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

#include "lastmile/waypoint/path_compiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lastmile/core/errors.hpp"

namespace lastmile::waypoint {
namespace {

struct Resampled {
  Vector2d xy;
  double v;
  double omega;
};

}  // namespace

CompiledPath CompilePathDetailed(const RecordedTrace& trace,
                                 double target_speed,
                                 const CompileParams& params) {
  if (trace.samples.size() < 2) {
    throw DegenerateInputError("trace needs at least two samples");
  }
  if (!(target_speed > 0.0) || !(params.spacing > 0.0)) {
    throw DegenerateInputError("target speed and spacing must be positive");
  }
  Validate(trace);

  const GeoPoint origin{trace.samples.front().lat, trace.samples.front().lon};
  const std::size_t n = trace.samples.size();
  std::vector<Vector2d> xy(n);
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    xy[i] = ToLocal(origin, trace.samples[i].lat, trace.samples[i].lon);
    if (i > 0) cumulative[i] = cumulative[i - 1] + (xy[i] - xy[i - 1]).norm();
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) throw DegenerateInputError("trace has zero length");

  std::vector<Resampled> points;
  std::size_t seg = 0;
  const auto sample_at = [&](double s) {
    while (seg + 2 < n && cumulative[seg + 1] < s) ++seg;
    // Skip zero-length segments (vehicle standing still).
    while (seg + 2 < n && cumulative[seg + 1] <= cumulative[seg]) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double f =
        len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
    const TraceSample& a = trace.samples[seg];
    const TraceSample& b = trace.samples[seg + 1];
    return Resampled{xy[seg] + f * (xy[seg + 1] - xy[seg]),
                     a.v + f * (b.v - a.v), a.omega + f * (b.omega - a.omega)};
  };

  const auto steps = static_cast<std::size_t>(std::floor(total / params.spacing));
  for (std::size_t k = 0; k <= steps; ++k) {
    points.push_back(sample_at(static_cast<double>(k) * params.spacing));
  }
  if (total - static_cast<double>(steps) * params.spacing > 1e-3) {
    const TraceSample& last = trace.samples.back();
    points.push_back({xy.back(), last.v, last.omega});
  }

  CompiledPath out;
  out.list.origin = origin;
  out.list.waypoints.reserve(points.size());
  out.radius.reserve(points.size());
  for (const Resampled& p : points) {
    const double radius = std::abs(p.omega) < params.min_yaw_rate
                              ? std::numeric_limits<double>::infinity()
                              : std::abs(p.v) / std::abs(p.omega);
    const double v_max = std::sqrt(params.max_lateral_accel * radius);
    const GeoPoint geo = FromLocal(origin, p.xy);
    out.list.waypoints.push_back({geo.lat, geo.lon, std::min(target_speed, v_max)});
    out.radius.push_back(radius);
  }
  return out;
}

WaypointList CompilePath(const RecordedTrace& trace, double target_speed,
                         const CompileParams& params) {
  return CompilePathDetailed(trace, target_speed, params).list;
}

std::vector<WaypointList> CompilePaths(const RecordedTrace& trace,
                                       const std::vector<double>& target_speeds,
                                       const CompileParams& params) {
  std::vector<WaypointList> lists;
  lists.reserve(target_speeds.size());
  for (double speed : target_speeds) {
    lists.push_back(CompilePath(trace, speed, params));
  }
  return lists;
}

}  // namespace lastmile::waypoint

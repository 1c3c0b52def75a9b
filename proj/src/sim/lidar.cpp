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

#include "lastmile/sim/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "lastmile/core/errors.hpp"

namespace lastmile::sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Hit {
  double range = kInf;
  double intensity = 0.0;
};

double RayGround(const Vector3d& o, const Vector3d& d) {
  if (d.z() >= 0.0) return kInf;
  return -o.z() / d.z();
}

// Slab test against an axis-aligned box resting on z = 0.
double RayBox(const Vector3d& o, const Vector3d& d, const Box& box) {
  const Vector3d lo(box.center.x() - 0.5 * box.size.x(),
                    box.center.y() - 0.5 * box.size.y(), 0.0);
  const Vector3d hi(box.center.x() + 0.5 * box.size.x(),
                    box.center.y() + 0.5 * box.size.y(), box.height);
  double t_near = -kInf;
  double t_far = kInf;
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(d[axis]) < 1e-12) {
      if (o[axis] < lo[axis] || o[axis] > hi[axis]) return kInf;
      continue;
    }
    double t0 = (lo[axis] - o[axis]) / d[axis];
    double t1 = (hi[axis] - o[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return kInf;
  }
  return t_near > 0.0 ? t_near : kInf;
}

double RayCylinder(const Vector3d& o, const Vector3d& d, const Pedestrian& p) {
  double best = kInf;
  const double dx = o.x() - p.position.x();
  const double dy = o.y() - p.position.y();
  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > 1e-12) {
    const double b = 2.0 * (dx * d.x() + dy * d.y());
    const double c = dx * dx + dy * dy - p.radius * p.radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double t = (-b - std::sqrt(disc)) / (2.0 * a);
      const double z = o.z() + t * d.z();
      if (t > 0.0 && z >= 0.0 && z <= p.height) best = t;
    }
  }
  // Top cap.
  if (d.z() < 0.0 && o.z() > p.height) {
    const double t = (p.height - o.z()) / d.z();
    const double hx = dx + t * d.x();
    const double hy = dy + t * d.y();
    if (hx * hx + hy * hy <= p.radius * p.radius) best = std::min(best, t);
  }
  return best;
}

double RaySign(const Vector3d& o, const Vector3d& d, const SignSpec& sign) {
  const double denom = d.dot(sign.normal);
  if (std::abs(denom) < 1e-9) return kInf;
  const double t = (sign.center - o).dot(sign.normal) / denom;
  if (t <= 0.0) return kInf;
  const Vector3d offset = o + t * d - sign.center;
  // In-plane axes: horizontal across the face, then the face's vertical.
  Vector3d across = Vector3d::UnitZ().cross(sign.normal);
  if (across.norm() < 1e-9) across = Vector3d::UnitX();
  across.normalize();
  const Vector3d up = sign.normal.cross(across);
  if (std::abs(offset.dot(across)) > 0.5 * sign.width) return kInf;
  if (std::abs(offset.dot(up)) > 0.5 * sign.height) return kInf;
  return t;
}

}  // namespace

LidarFrame Select(const LidarFrame& frame, const IndexList& indices) {
  LidarFrame out;
  out.timestamp = frame.timestamp;
  out.xyz.resize(3, static_cast<Eigen::Index>(indices.size()));
  out.intensity.resize(static_cast<Eigen::Index>(indices.size()));
  out.ring.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto j = indices[i];
    out.xyz.col(static_cast<Eigen::Index>(i)) = frame.xyz.col(j);
    out.intensity[static_cast<Eigen::Index>(i)] = frame.intensity[j];
    out.ring.push_back(frame.ring[static_cast<std::size_t>(j)]);
  }
  return out;
}

double RingElevation(int ring, const LidarConfig& config) {
  return (config.lowest_elevation_deg + ring * config.ring_spacing_deg) *
         kDegToRad;
}

Vector3d LidarOrigin(const VehicleState& state, const VehicleParams& params) {
  return {state.x + params.lidar_offset_x * std::cos(state.heading),
          state.y + params.lidar_offset_x * std::sin(state.heading),
          params.lidar_mount_height};
}

LidarFrame Scan(const WorldModel& world, const VehicleState& state,
                const VehicleParams& params, const LidarConfig& config,
                std::mt19937_64* rng, double timestamp) {
  if (config.rings < 1 || config.rings > 255 ||
      !(config.azimuth_resolution_deg > 0.0)) {
    throw InvalidStateError("invalid LiDAR configuration");
  }
  const int columns =
      static_cast<int>(std::lround(360.0 / config.azimuth_resolution_deg));
  const Vector3d origin = LidarOrigin(state, params);
  const double ch = std::cos(state.heading);
  const double sh = std::sin(state.heading);

  std::vector<double> cos_el(config.rings), sin_el(config.rings);
  for (int r = 0; r < config.rings; ++r) {
    cos_el[r] = std::cos(RingElevation(r, config));
    sin_el[r] = std::sin(RingElevation(r, config));
  }
  std::normal_distribution<double> noise(0.0, config.range_noise_stddev);
  const bool jitter = config.range_noise_stddev > 0.0 && rng != nullptr;

  std::vector<Vector3d> points;
  std::vector<float> intensities;
  std::vector<std::uint8_t> rings;
  points.reserve(static_cast<std::size_t>(columns) * config.rings / 2);

  for (int c = 0; c < columns; ++c) {
    const double azimuth =
        (config.azimuth_offset_deg + c * config.azimuth_resolution_deg) *
        kDegToRad;
    const double ca = std::cos(state.heading + azimuth);
    const double sa = std::sin(state.heading + azimuth);
    for (int r = 0; r < config.rings; ++r) {
      const Vector3d dir(cos_el[r] * ca, cos_el[r] * sa, sin_el[r]);
      Hit hit;
      const auto consider = [&](double t, double intensity) {
        if (t >= config.min_range && t <= config.max_range && t < hit.range) {
          hit.range = t;
          hit.intensity = intensity;
        }
      };
      consider(RayGround(origin, dir), config.background_intensity);
      for (const Box& box : world.static_obstacles) {
        consider(RayBox(origin, dir, box), config.background_intensity);
      }
      for (const Pedestrian& ped : world.pedestrians) {
        consider(RayCylinder(origin, dir, ped), config.background_intensity);
      }
      for (const SignSpec& sign : world.signs) {
        consider(RaySign(origin, dir, sign), sign.intensity);
      }
      if (!std::isfinite(hit.range)) continue;

      double range = hit.range;
      if (jitter) range = std::max(config.min_range, range + noise(*rng));
      const Vector3d world_pt = origin + range * dir;
      // World -> vehicle frame.
      const double dx = world_pt.x() - state.x;
      const double dy = world_pt.y() - state.y;
      points.emplace_back(ch * dx + sh * dy, -sh * dx + ch * dy, world_pt.z());
      intensities.push_back(static_cast<float>(hit.intensity));
      rings.push_back(static_cast<std::uint8_t>(r));
    }
  }

  LidarFrame frame;
  frame.timestamp = timestamp;
  frame.xyz.resize(3, static_cast<Eigen::Index>(points.size()));
  frame.intensity.resize(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    frame.xyz.col(static_cast<Eigen::Index>(i)) = points[i];
    frame.intensity[static_cast<Eigen::Index>(i)] = intensities[i];
  }
  frame.ring = std::move(rings);
  return frame;
}

}  // namespace lastmile::sim

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

#include "lastmile/sign/sign_detector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "lastmile/core/errors.hpp"
#include "lastmile/sign/cloud_filters.hpp"
#include "lastmile/sign/plane_ransac.hpp"

namespace lastmile::sign {
namespace {

IndexList Compose(const IndexList& outer, const IndexList& inner) {
  IndexList out;
  out.reserve(inner.size());
  for (Eigen::Index i : inner) out.push_back(outer[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

std::optional<SignDetection> PlaneSegment(const Points3d& points,
                                          const FilterParams& params) {
  if (points.cols() < static_cast<Eigen::Index>(params.min_sign_points)) {
    return std::nullopt;
  }
  std::mt19937_64 rng(params.ransac_seed);
  RansacParams ransac;
  ransac.iterations = params.ransac_iterations;
  ransac.distance_tolerance = params.plane_dist_tol;
  ransac.min_inliers = params.min_sign_points;

  // Remaining candidates, as indices into `points`.
  IndexList remaining(static_cast<std::size_t>(points.cols()));
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    remaining[i] = static_cast<Eigen::Index>(i);
  }

  std::optional<SignDetection> nearest;
  for (int plane_no = 0; plane_no < params.max_planes; ++plane_no) {
    if (remaining.size() < params.min_sign_points) break;
    const Points3d subset = Gather(points, remaining);
    const auto fit = FitPlaneRansac(subset, ransac, rng);
    if (!fit) break;

    Eigen::Vector4d coeffs = fit->plane.Coefficients();
    if (coeffs.x() < 0.0) coeffs = -coeffs;
    const bool facing = coeffs.x() >= params.normal_min_a;
    const bool spread = fit->spread(1) >= params.min_plane_spread;
    if (facing && spread && fit->inliers.size() >= params.min_sign_points) {
      SignDetection det;
      det.plane = coeffs;
      det.inliers = Gather(subset, fit->inliers);
      det.point_count = fit->inliers.size();
      det.distance = det.inliers.colwise().norm().minCoeff();
      if (!nearest || det.distance < nearest->distance) nearest = std::move(det);
    }

    // Drop this plane's inliers and look for the next one.
    IndexList rest;
    std::size_t next_inlier = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const auto local = static_cast<Eigen::Index>(i);
      if (next_inlier < fit->inliers.size() && fit->inliers[next_inlier] == local) {
        ++next_inlier;
        continue;
      }
      rest.push_back(remaining[i]);
    }
    remaining = std::move(rest);
  }
  return nearest;
}

std::optional<SignDetection> DetectSign(const sim::LidarFrame& frame,
                                        const Vector3d& sensor_origin,
                                        const FilterParams& params,
                                        StageCounts* counts) {
  const Points3d sensor = frame.xyz.colwise() - sensor_origin;

  const IndexList fov = FovFilter(sensor, params.fov_side);
  Eigen::VectorXf fov_intensity(static_cast<Eigen::Index>(fov.size()));
  for (std::size_t i = 0; i < fov.size(); ++i) {
    fov_intensity[static_cast<Eigen::Index>(i)] = frame.intensity[fov[i]];
  }
  const IndexList bright =
      Compose(fov, IntensityFilter(fov_intensity,
                                   static_cast<float>(params.min_intensity)));
  const Points3d bright_pts = Gather(sensor, bright);
  const IndexList ror =
      RadiusOutlierRemoval(bright_pts, params.ror_radius, params.ror_min_neighbors);
  const Points3d ror_pts = Gather(bright_pts, ror);
  const IndexList sor =
      StatisticalOutlierRemoval(ror_pts, params.sor_k, params.sor_stddev_mult);
  const Points3d sor_pts = Gather(ror_pts, sor);

  auto detection = PlaneSegment(sor_pts, params);
  if (counts != nullptr) {
    *counts = {static_cast<std::size_t>(frame.size()), fov.size(), bright.size(),
               ror.size(), sor.size(), detection ? detection->point_count : 0};
  }
  return detection;
}

control::TwistCommand SignSpeedCommand(const SignDetection& detection, double v_i,
                                       const control::TwistCommand& base) {
  if (!(detection.distance > 0.0)) {
    throw InvalidDetectionError("sign distance must be positive");
  }
  control::TwistCommand cmd = base;
  cmd.linear_v = 0.0;
  cmd.decel_limit = v_i * v_i / (2.0 * detection.distance);
  return cmd;
}

std::optional<control::TwistCommand> SignStopLatch::Update(
    const std::optional<SignDetection>& detection, double speed,
    double odometer, double dt, const control::TwistCommand& base) {
  switch (phase_) {
    case Phase::kCooldown:
      if (odometer - resume_odometer_ < params_.cooldown_distance) {
        return std::nullopt;
      }
      phase_ = Phase::kIdle;
      [[fallthrough]];
    case Phase::kIdle:
      if (!detection || detection->distance > params_.trigger_distance) {
        return std::nullopt;
      }
      latched_speed_ = speed;
      latched_distance_ = detection->distance;
      command_ = SignSpeedCommand(*detection, speed, base);
      phase_ = detection->distance < params_.latch_distance ? Phase::kHolding
                                                            : Phase::kStopping;
      held_for_ = 0.0;
      return command_;
    case Phase::kStopping:
      if (detection && detection->distance < params_.latch_distance) {
        phase_ = Phase::kHolding;
      }
      if (speed <= params_.stopped_speed) phase_ = Phase::kHolding;
      return command_;
    case Phase::kHolding:
      if (speed <= params_.stopped_speed) held_for_ += dt;
      if (held_for_ >= params_.hold_time) {
        phase_ = Phase::kCooldown;
        resume_odometer_ = odometer;
        return std::nullopt;
      }
      return command_;
  }
  return std::nullopt;
}

std::string DetectionLogLine(double t, const SignDetection& detection) {
  return fmt::format("{},{},{},{},{},{}", t, detection.distance,
                     detection.point_count, detection.plane.x(),
                     detection.plane.y(), detection.plane.z());
}

}  // namespace lastmile::sign

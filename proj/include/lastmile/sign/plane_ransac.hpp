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
#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "lastmile/core/types.hpp"

namespace lastmile::sign {

/// Plane n . p + offset = 0 with |n| = 1.
template <typename Scalar>
struct Plane {
  Vector3<Scalar> normal = Vector3<Scalar>::UnitX();
  Scalar offset = 0;

  Scalar SignedDistance(const Vector3<Scalar>& p) const { return normal.dot(p) + offset; }
  Eigen::Matrix<Scalar, 4, 1> Coefficients() const {
    return {normal.x(), normal.y(), normal.z(), offset};
  }
};

template <typename Scalar>
struct PlaneFit {
  Plane<Scalar> plane;
  IndexList inliers;
  /// Square roots of the covariance eigenvalues of the inliers, ascending:
  /// thickness, then the two in-plane spreads.
  Vector3<Scalar> spread = Vector3<Scalar>::Zero();
};

struct RansacParams {
  int iterations = 200;
  double distance_tolerance = 0.05;
  std::size_t min_inliers = 3;
};

/// Total least-squares plane through the selected points. The normal is
/// the eigenvector of the smallest covariance eigenvalue.
template <typename Scalar>
PlaneFit<Scalar> FitPlaneLeastSquares(const Points3<Scalar>& points,
                                      const IndexList& indices) {
  PlaneFit<Scalar> fit;
  fit.inliers = indices;
  if (indices.empty()) return fit;
  Vector3<Scalar> centroid = Vector3<Scalar>::Zero();
  for (Eigen::Index i : indices) centroid += points.col(i);
  centroid /= static_cast<Scalar>(indices.size());
  Eigen::Matrix<Scalar, 3, 3> cov = Eigen::Matrix<Scalar, 3, 3>::Zero();
  for (Eigen::Index i : indices) {
    const Vector3<Scalar> d = points.col(i) - centroid;
    cov.noalias() += d * d.transpose();
  }
  cov /= static_cast<Scalar>(indices.size());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> solver(cov);
  fit.plane.normal = solver.eigenvectors().col(0).normalized();
  fit.plane.offset = -fit.plane.normal.dot(centroid);
  fit.spread = solver.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
  return fit;
}

/// RANSAC over random point triples followed by a least-squares refit on
/// the consensus set. Deterministic for a given generator state.
template <typename Scalar>
std::optional<PlaneFit<Scalar>> FitPlaneRansac(const Points3<Scalar>& points,
                                               const RansacParams& params,
                                               std::mt19937_64& rng) {
  const Eigen::Index n = points.cols();
  if (n < 3 || n < static_cast<Eigen::Index>(params.min_inliers)) return std::nullopt;
  const auto tol = static_cast<Scalar>(params.distance_tolerance);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);

  const auto consensus = [&](const Plane<Scalar>& plane) {
    IndexList inliers;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(plane.SignedDistance(points.col(i))) <= tol) inliers.push_back(i);
    }
    return inliers;
  };

  IndexList best;
  for (int it = 0; it < params.iterations; ++it) {
    const Eigen::Index a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    const Vector3<Scalar> cross =
        (points.col(b) - points.col(a)).cross(points.col(c) - points.col(a));
    if (cross.norm() < Scalar(1e-9)) continue;  // collinear sample
    Plane<Scalar> candidate;
    candidate.normal = cross.normalized();
    candidate.offset = -candidate.normal.dot(points.col(a));
    IndexList inliers = consensus(candidate);
    if (inliers.size() > best.size()) best = std::move(inliers);
  }
  if (best.size() < std::max<std::size_t>(3, params.min_inliers)) return std::nullopt;

  PlaneFit<Scalar> fit = FitPlaneLeastSquares(points, best);
  fit.inliers = consensus(fit.plane);
  if (fit.inliers.size() < std::max<std::size_t>(3, params.min_inliers)) {
    return std::nullopt;
  }
  fit = FitPlaneLeastSquares(points, fit.inliers);
  return fit;
}

}  // namespace lastmile::sign

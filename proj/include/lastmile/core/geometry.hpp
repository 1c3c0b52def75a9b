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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lastmile/core/types.hpp"

namespace lastmile {

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar NormalizeAngle(Scalar angle) {
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  constexpr Scalar kTwoPi = 2 * kPi;
  Scalar wrapped = std::fmod(angle + kPi, kTwoPi);
  if (wrapped <= 0) wrapped += kTwoPi;
  return wrapped - kPi;
}

/// Distance from `p` to the closed segment [a, b].
template <typename Derived>
typename Derived::Scalar PointSegmentDistance(
    const Eigen::MatrixBase<Derived>& p, const Eigen::MatrixBase<Derived>& a,
    const Eigen::MatrixBase<Derived>& b) {
  using Scalar = typename Derived::Scalar;
  const auto ab = (b - a).eval();
  const Scalar len2 = ab.squaredNorm();
  if (len2 <= Scalar(0)) return (p - a).norm();
  const Scalar u = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return (p - a - u * ab).norm();
}

/// Polyline arc length, one vertex per column.
template <typename Derived>
typename Derived::Scalar PolylineLength(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  Scalar total = 0;
  for (Eigen::Index i = 1; i < pts.cols(); ++i) {
    total += (pts.col(i) - pts.col(i - 1)).norm();
  }
  return total;
}

}  // namespace lastmile

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
#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "lastmile/core/types.hpp"

namespace lastmile::sign {

// Point-cloud filter stages. Each returns the indices of the points it keeps,
// in input order, so every stage's output is a subset of its input.

/// Keeps points ahead of the sensor (x > 0) within +-side of its axis.
template <typename Scalar>
IndexList FovFilter(const Points3<Scalar>& points, Scalar side = Scalar(10)) {
  IndexList kept;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    if (points(0, i) > Scalar(0) && std::abs(points(1, i)) <= side) {
      kept.push_back(i);
    }
  }
  return kept;
}

template <typename Derived>
IndexList IntensityFilter(const Eigen::DenseBase<Derived>& intensity,
                          typename Derived::Scalar min_intensity) {
  IndexList kept;
  for (Eigen::Index i = 0; i < intensity.size(); ++i) {
    if (intensity(i) >= min_intensity) kept.push_back(i);
  }
  return kept;
}

namespace detail {

// Uniform hash grid with cells as large as the query radius, so every
// neighbour within the radius sits in one of the 27 surrounding cells.
template <typename Scalar>
class HashGrid {
 public:
  HashGrid(const Points3<Scalar>& points, Scalar cell) : points_(points), cell_(cell) {
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
      buckets_[Key(Cell(points.col(i)))].push_back(i);
    }
  }

  /// Number of points other than `i` within `radius` of point i.
  std::size_t CountNeighbours(Eigen::Index i, Scalar radius) const {
    const Scalar r2 = radius * radius;
    const auto p = points_.col(i);
    const Eigen::Vector3<std::int64_t> c = Cell(p);
    std::size_t count = 0;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = buckets_.find(Key({c.x() + dx, c.y() + dy, c.z() + dz}));
          if (it == buckets_.end()) continue;
          for (Eigen::Index j : it->second) {
            if (j != i && (points_.col(j) - p).squaredNorm() <= r2) ++count;
          }
        }
      }
    }
    return count;
  }

 private:
  template <typename Col>
  Eigen::Vector3<std::int64_t> Cell(const Col& p) const {
    return (p.array() / cell_).floor().template cast<std::int64_t>();
  }

  static std::uint64_t Key(const Eigen::Vector3<std::int64_t>& c) {
    // 21 bits per axis is ample for a LiDAR frame at sub-metre cells.
    const auto pack = [](std::int64_t v) {
      return static_cast<std::uint64_t>(v + (1 << 20)) & 0x1FFFFFu;
    };
    return pack(c.x()) | (pack(c.y()) << 21) | (pack(c.z()) << 42);
  }

  const Points3<Scalar>& points_;
  Scalar cell_;
  std::unordered_map<std::uint64_t, std::vector<Eigen::Index>> buckets_;
};

}  // namespace detail

/// Keeps a point iff at least `min_neighbors` other points lie within
/// `radius` (inclusive).
template <typename Scalar>
IndexList RadiusOutlierRemoval(const Points3<Scalar>& points,
                               Scalar radius = Scalar(0.5),
                               std::size_t min_neighbors = 3) {
  IndexList kept;
  if (points.cols() == 0) return kept;
  const detail::HashGrid<Scalar> grid(points, radius);
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    if (grid.CountNeighbours(i, radius) >= min_neighbors) kept.push_back(i);
  }
  return kept;
}

/// Mean distance from each point to its k nearest neighbours (self excluded).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> MeanKnnDistance(
    const Points3<Scalar>& points, std::size_t k) {
  const Eigen::Index n = points.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mean(n);
  std::vector<Scalar> d2;
  d2.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    d2.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) d2.push_back((points.col(j) - points.col(i)).squaredNorm());
    }
    const std::size_t kk = std::min(k, d2.size());
    std::partial_sort(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(kk), d2.end());
    Scalar sum = 0;
    for (std::size_t m = 0; m < kk; ++m) sum += std::sqrt(d2[m]);
    mean(i) = kk > 0 ? sum / static_cast<Scalar>(kk) : Scalar(0);
  }
  return mean;
}

/// Drops points whose mean k-NN distance exceeds mu + stddev_mult * sigma
/// of that statistic over the cloud (sample standard deviation). Clouds
/// with k or fewer points pass through unchanged.
template <typename Scalar>
IndexList StatisticalOutlierRemoval(const Points3<Scalar>& points,
                                    std::size_t k = 8,
                                    Scalar stddev_mult = Scalar(1)) {
  const Eigen::Index n = points.cols();
  IndexList kept;
  if (n < static_cast<Eigen::Index>(k) + 1 || k == 0) {
    for (Eigen::Index i = 0; i < n; ++i) kept.push_back(i);
    return kept;
  }
  const auto mean = MeanKnnDistance(points, k);
  const Scalar mu = mean.mean();
  const Scalar var = (mean.array() - mu).square().sum() / static_cast<Scalar>(n - 1);
  const Scalar threshold = mu + stddev_mult * std::sqrt(var);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mean(i) <= threshold) kept.push_back(i);
  }
  return kept;
}

/// Gathers columns by index.
template <typename Scalar>
Points3<Scalar> Gather(const Points3<Scalar>& points, const IndexList& indices) {
  Points3<Scalar> out(3, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = points.col(indices[i]);
  }
  return out;
}

}  // namespace lastmile::sign

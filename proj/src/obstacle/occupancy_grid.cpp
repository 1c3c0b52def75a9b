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

#include "lastmile/obstacle/occupancy_grid.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "lastmile/core/errors.hpp"

namespace lastmile::obstacle {

std::optional<CellIndex> OccupancyGrid::IndexOf(const Vector2d& xy) const {
  const double fx = std::floor((xy.x() + half_extent) / cell_size);
  const double fy = std::floor((xy.y() + half_extent) / cell_size);
  const auto n = static_cast<double>(cells_per_side());
  if (!(fx >= 0.0 && fx < n && fy >= 0.0 && fy < n)) return std::nullopt;
  return CellIndex{static_cast<Eigen::Index>(fx), static_cast<Eigen::Index>(fy)};
}

Vector2d OccupancyGrid::CellCenter(const CellIndex& cell) const {
  return {-half_extent + (static_cast<double>(cell.row) + 0.5) * cell_size,
          -half_extent + (static_cast<double>(cell.col) + 0.5) * cell_size};
}

OccupancyGrid BuildGrid(const sim::LidarFrame& frame, const GridParams& params) {
  if (!(params.cell_size > 0.0) || !(params.half_extent > 0.0)) {
    throw InvalidStateError("grid cell size and extent must be positive");
  }
  OccupancyGrid grid;
  grid.cell_size = params.cell_size;
  grid.half_extent = params.half_extent;
  grid.height_threshold = params.height_threshold;
  const auto n = static_cast<Eigen::Index>(
      std::ceil(2.0 * params.half_extent / params.cell_size));
  grid.min_z.setConstant(n, n, std::numeric_limits<float>::infinity());
  grid.max_z.setConstant(n, n, -std::numeric_limits<float>::infinity());
  grid.point_count.setZero(n, n);

  for (Eigen::Index i = 0; i < frame.size(); ++i) {
    const auto p = frame.xyz.col(i);
    if (p.z() > params.max_z) continue;
    const auto cell = grid.IndexOf(p.head<2>());
    if (!cell) continue;
    const auto z = static_cast<float>(p.z());
    float& lo = grid.min_z(cell->row, cell->col);
    float& hi = grid.max_z(cell->row, cell->col);
    lo = std::min(lo, z);
    hi = std::max(hi, z);
    ++grid.point_count(cell->row, cell->col);
  }
  grid.occupied = (grid.point_count >= 2) &&
                  ((grid.max_z - grid.min_z) >
                   static_cast<float>(params.height_threshold));
  return grid;
}

void WriteGridDump(std::ostream& out, const OccupancyGrid& grid) {
  for (Eigen::Index r = 0; r < grid.cells_per_side(); ++r) {
    for (Eigen::Index c = 0; c < grid.cells_per_side(); ++c) {
      if (!grid.occupied(r, c)) continue;
      const Vector2d center = grid.CellCenter({r, c});
      out << fmt::format("{:.3f},{:.3f},{:.3f},{:.3f}\n", center.x(),
                         center.y(), grid.min_z(r, c), grid.max_z(r, c));
    }
  }
}

}  // namespace lastmile::obstacle

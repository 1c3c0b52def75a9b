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

#include <iosfwd>
#include <optional>

#include <Eigen/Core>

#include "lastmile/core/types.hpp"
#include "lastmile/sim/lidar.hpp"

namespace lastmile::obstacle {

struct GridParams {
  double cell_size = 0.25;
  double half_extent = 20.0;  // grid covers [-half_extent, half_extent)^2
  double height_threshold = 0.07;
  double max_z = 2.1;  // points above the roof are dropped
};

struct CellIndex {
  Eigen::Index row = 0;  // along x
  Eigen::Index col = 0;  // along y
};

/// Height map centred on the vehicle. A cell is occupied when the vertical
/// spread of its points exceeds the height threshold; a single point has no
/// spread and never occupies a cell.
struct OccupancyGrid {
  double cell_size = 0.25;
  double half_extent = 20.0;
  double height_threshold = 0.07;
  Eigen::ArrayXXf min_z;
  Eigen::ArrayXXf max_z;
  Eigen::ArrayXXi point_count;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> occupied;

  Eigen::Index cells_per_side() const { return point_count.rows(); }
  std::optional<CellIndex> IndexOf(const Vector2d& xy) const;
  Vector2d CellCenter(const CellIndex& cell) const;
  Eigen::Index OccupiedCount() const { return occupied.count(); }
};

OccupancyGrid BuildGrid(const sim::LidarFrame& frame, const GridParams& params = {});

/// One "x,y,min_z,max_z" line per occupied cell, row-major.
void WriteGridDump(std::ostream& out, const OccupancyGrid& grid);

}  // namespace lastmile::obstacle

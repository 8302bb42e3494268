/*
 * Copyright 2026 The noc-pareto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "nocpareto/topology.hpp"

namespace nocpareto {

inline constexpr double kDefaultChipMm = 21.0;
/// One inter-router hop on a 4x4 grid over 21 mm (5.25 mm) costs 1 cycle.
inline constexpr double kDefaultCyclesPerMm = 0.19;

struct GridPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

/// Routers placed row-major on tile centers of a uniform grid over the die.
/// When n has no exact factorization the trailing tiles stay empty.
class TiledLayout {
 public:
  TiledLayout(int n_routers, int grid_rows, int grid_cols,
              double chip_width_mm = kDefaultChipMm,
              double chip_height_mm = kDefaultChipMm,
              double cycles_per_mm = kDefaultCyclesPerMm);

  /// grid_cols = ceil(sqrt(n)), grid_rows = ceil(n / grid_cols).
  static TiledLayout for_routers(int n_routers,
                                 double chip_width_mm = kDefaultChipMm,
                                 double chip_height_mm = kDefaultChipMm,
                                 double cycles_per_mm = kDefaultCyclesPerMm);

  int n_routers() const noexcept { return n_; }
  int grid_rows() const noexcept { return rows_; }
  int grid_cols() const noexcept { return cols_; }
  double chip_width_mm() const noexcept { return width_; }
  double chip_height_mm() const noexcept { return height_; }
  double cycles_per_mm() const noexcept { return cycles_per_mm_; }
  double spacing_x_mm() const noexcept { return width_ / cols_; }
  double spacing_y_mm() const noexcept { return height_ / rows_; }

 private:
  int n_;
  int rows_;
  int cols_;
  double width_;
  double height_;
  double cycles_per_mm_;
};

GridPos router_position(RouterId r, const TiledLayout& layout);

/// Rectilinear distance between tile centers.
double link_length_mm(RouterId i, RouterId j, const TiledLayout& layout);

/// Grid (Manhattan) distance in tiles, independent of physical spacing.
int grid_distance(RouterId i, RouterId j, const TiledLayout& layout);

/// max(1, ceil(length * cycles_per_mm)).
int link_latency_cycles(double length_mm, const TiledLayout& layout);

/// Links between horizontally or vertically adjacent occupied tiles.
LinkAllocation grid_mesh_allocation(const TiledLayout& layout);

}  // namespace nocpareto

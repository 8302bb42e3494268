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

#include "nocpareto/layout.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

TiledLayout::TiledLayout(int n_routers, int grid_rows, int grid_cols,
                         double chip_width_mm, double chip_height_mm,
                         double cycles_per_mm)
    : n_(n_routers),
      rows_(grid_rows),
      cols_(grid_cols),
      width_(chip_width_mm),
      height_(chip_height_mm),
      cycles_per_mm_(cycles_per_mm) {
  if (n_ < 2) {
    throw Error(ErrorKind::kDomain, fmt::format("router count {} < 2", n_));
  }
  if (rows_ < 1 || cols_ < 1 || rows_ * cols_ < n_) {
    throw Error(ErrorKind::kDomain,
                fmt::format("grid {}x{} cannot hold {} routers", rows_, cols_, n_));
  }
  // A grid with a whole empty trailing row is a different grid shape.
  if ((rows_ - 1) * cols_ >= n_) {
    throw Error(ErrorKind::kDomain,
                fmt::format("grid {}x{} leaves an empty row for {} routers",
                            rows_, cols_, n_));
  }
  if (!(width_ > 0.0) || !(height_ > 0.0)) {
    throw Error(ErrorKind::kDomain, "chip dimensions must be positive");
  }
  if (!(cycles_per_mm_ > 0.0)) {
    throw Error(ErrorKind::kDomain, "cycles_per_mm must be positive");
  }
}

TiledLayout TiledLayout::for_routers(int n_routers, double chip_width_mm,
                                     double chip_height_mm,
                                     double cycles_per_mm) {
  if (n_routers < 2) {
    throw Error(ErrorKind::kDomain,
                fmt::format("router count {} < 2", n_routers));
  }
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_routers))));
  while (cols * cols < n_routers) ++cols;
  while ((cols - 1) * (cols - 1) >= n_routers) --cols;
  const int rows = (n_routers + cols - 1) / cols;
  return TiledLayout(n_routers, rows, cols, chip_width_mm, chip_height_mm,
                     cycles_per_mm);
}

GridPos router_position(RouterId r, const TiledLayout& layout) {
  if (r < 0 || r >= layout.n_routers()) {
    throw Error(ErrorKind::kIndex,
                fmt::format("router {} out of range [0, {})", r,
                            layout.n_routers()));
  }
  return {r / layout.grid_cols(), r % layout.grid_cols()};
}

double link_length_mm(RouterId i, RouterId j, const TiledLayout& layout) {
  if (i == j) {
    throw Error(ErrorKind::kInvalidPair,
                fmt::format("link length of router {} to itself", i));
  }
  const GridPos a = router_position(i, layout);
  const GridPos b = router_position(j, layout);
  return std::abs(a.col - b.col) * layout.spacing_x_mm() +
         std::abs(a.row - b.row) * layout.spacing_y_mm();
}

int grid_distance(RouterId i, RouterId j, const TiledLayout& layout) {
  const GridPos a = router_position(i, layout);
  const GridPos b = router_position(j, layout);
  return std::abs(a.col - b.col) + std::abs(a.row - b.row);
}

int link_latency_cycles(double length_mm, const TiledLayout& layout) {
  if (!(length_mm > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("link length must be positive, got {}", length_mm));
  }
  const double cycles = std::ceil(length_mm * layout.cycles_per_mm());
  return cycles < 1.0 ? 1 : static_cast<int>(cycles);
}

LinkAllocation grid_mesh_allocation(const TiledLayout& layout) {
  const int n = layout.n_routers();
  const int cols = layout.grid_cols();
  LinkAllocation a(n);
  for (RouterId id = 0; id < n; ++id) {
    if ((id % cols) + 1 < cols && id + 1 < n) a.set(link_index(id, id + 1, n), true);
    if (id + cols < n) a.set(link_index(id, id + cols, n), true);
  }
  return a;
}

}  // namespace nocpareto

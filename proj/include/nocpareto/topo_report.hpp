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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nocpareto/layout.hpp"
#include "nocpareto/routing.hpp"
#include "nocpareto/topology.hpp"

namespace nocpareto {

/// Classification of an allocation's links against the grid mesh.
struct MeshDiff {
  std::vector<LinkIndex> common;   // present in both
  std::vector<LinkIndex> extra;    // present, not a mesh link
  std::vector<LinkIndex> missing;  // mesh link that is absent
};

MeshDiff mesh_diff(const LinkAllocation& a, const TiledLayout& layout);

/// Link count per length in inter-router distances (grid Manhattan distance).
std::map<int, int> link_length_histogram(const LinkAllocation& a,
                                         const TiledLayout& layout);

/// `link,a,b,grid_distance,length_mm,latency_cycles,mesh` rows.
void write_link_table(std::ostream& os, const LinkAllocation& a,
                      const TiledLayout& layout);

/// `src,dst,hops,next_hop` rows over all ordered pairs s != d.
void write_routing_csv(std::ostream& os, const RoutingTable& t);

/// Routers on their tiles; mesh links black, other links blue and curved.
std::string topology_svg(const LinkAllocation& a, const TiledLayout& layout);

}  // namespace nocpareto

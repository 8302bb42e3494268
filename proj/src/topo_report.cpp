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

#include "nocpareto/topo_report.hpp"

#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace nocpareto {

MeshDiff mesh_diff(const LinkAllocation& a, const TiledLayout& layout) {
  const LinkAllocation mesh = grid_mesh_allocation(layout);
  MeshDiff diff;
  for (LinkIndex k = 0; k < a.size(); ++k) {
    const bool here = a.test(k);
    const bool in_mesh = mesh.test(k);
    if (here && in_mesh) diff.common.push_back(k);
    else if (here) diff.extra.push_back(k);
    else if (in_mesh) diff.missing.push_back(k);
  }
  return diff;
}

std::map<int, int> link_length_histogram(const LinkAllocation& a,
                                         const TiledLayout& layout) {
  std::map<int, int> hist;
  for (LinkIndex k = 0; k < a.size(); ++k) {
    if (!a.test(k)) continue;
    const auto [i, j] = link_endpoints(k, a.n_routers());
    ++hist[grid_distance(i, j, layout)];
  }
  return hist;
}

void write_link_table(std::ostream& os, const LinkAllocation& a,
                      const TiledLayout& layout) {
  const LinkAllocation mesh = grid_mesh_allocation(layout);
  os << "link,a,b,grid_distance,length_mm,latency_cycles,mesh\n";
  for (LinkIndex k = 0; k < a.size(); ++k) {
    if (!a.test(k)) continue;
    const auto [i, j] = link_endpoints(k, a.n_routers());
    const double len = link_length_mm(i, j, layout);
    os << fmt::format("{},{},{},{},{:.4f},{},{}\n", k, i, j, grid_distance(i, j, layout),
                      len, link_latency_cycles(len, layout), mesh.test(k) ? 1 : 0);
  }
}

void write_routing_csv(std::ostream& os, const RoutingTable& t) {
  os << "src,dst,hops,next_hop\n";
  for (RouterId s = 0; s < t.n_routers(); ++s) {
    for (RouterId d = 0; d < t.n_routers(); ++d) {
      if (s == d) continue;
      os << fmt::format("{},{},{},{}\n", s, d, t.hop_count(s, d), t.next_hop(s, d));
    }
  }
}

std::string topology_svg(const LinkAllocation& a, const TiledLayout& layout) {
  constexpr double kTile = 80.0, kMargin = 40.0;
  const double w = 2 * kMargin + kTile * layout.grid_cols();
  const double h = 2 * kMargin + kTile * layout.grid_rows();
  auto cx = [&](RouterId r) { return kMargin + kTile * (router_position(r, layout).col + 0.5); };
  auto cy = [&](RouterId r) { return kMargin + kTile * (router_position(r, layout).row + 0.5); };
  const LinkAllocation mesh = grid_mesh_allocation(layout);

  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w, h);
  for (LinkIndex k = 0; k < a.size(); ++k) {
    if (!a.test(k)) continue;
    const auto [i, j] = link_endpoints(k, a.n_routers());
    if (mesh.test(k)) {
      svg << fmt::format(
          "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\" stroke-width=\"2\"/>\n",
          cx(i), cy(i), cx(j), cy(j));
    } else {
      // Bow non-mesh links so collinear ones stay distinguishable.
      const double mx = (cx(i) + cx(j)) / 2 + (cy(j) - cy(i)) * 0.15;
      const double my = (cy(i) + cy(j)) / 2 - (cx(j) - cx(i)) * 0.15;
      svg << fmt::format(
          "<path d=\"M {:.1f} {:.1f} Q {:.1f} {:.1f} {:.1f} {:.1f}\" fill=\"none\" stroke=\"royalblue\" stroke-width=\"1.5\"/>\n",
          cx(i), cy(i), mx, my, cx(j), cy(j));
    }
  }
  for (RouterId r = 0; r < a.n_routers(); ++r) {
    svg << fmt::format(
        "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"14\" fill=\"lightgray\" stroke=\"black\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        cx(r), cy(r), cx(r), cy(r) + 4, r);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nocpareto

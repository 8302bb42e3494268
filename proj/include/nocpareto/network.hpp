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

#include <vector>

#include "nocpareto/layout.hpp"
#include "nocpareto/routing.hpp"
#include "nocpareto/topology.hpp"

namespace nocpareto {

struct Link {
  LinkIndex index = 0;
  RouterId a = 0;
  RouterId b = 0;
  double length_mm = 0.0;
  int latency_cycles = 1;
};

/// An allocation placed on a layout with its routes: everything the
/// simulator and the power model need. Construction fails with
/// ErrorKind::kUnroutable when the allocation is disconnected.
class NetworkInstance {
 public:
  NetworkInstance(LinkAllocation allocation, TiledLayout layout);

  const LinkAllocation& allocation() const noexcept { return allocation_; }
  const TiledLayout& layout() const noexcept { return layout_; }
  const RoutingTable& routing() const noexcept { return routing_; }
  int n_routers() const noexcept { return allocation_.n_routers(); }

  /// Present links in canonical index order.
  const std::vector<Link>& links() const noexcept { return links_; }
  const std::vector<std::vector<RouterId>>& adjacency() const noexcept {
    return adjacency_;
  }

  /// Latency of the link between adjacent routers i and j.
  int link_latency(RouterId i, RouterId j) const;
  double link_length(RouterId i, RouterId j) const;

  /// Network ports plus the local injection/ejection port.
  int port_count(RouterId r) const {
    return static_cast<int>(adjacency_[static_cast<std::size_t>(r)].size()) + 1;
  }

  double total_link_length_mm() const noexcept;

 private:
  const Link& link_between(RouterId i, RouterId j) const;

  LinkAllocation allocation_;
  TiledLayout layout_;
  std::vector<std::vector<RouterId>> adjacency_;
  RoutingTable routing_;
  std::vector<Link> links_;
  std::vector<int> link_slot_;  // canonical index -> position in links_, or -1
};

}  // namespace nocpareto

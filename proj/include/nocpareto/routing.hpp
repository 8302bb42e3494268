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

#include "nocpareto/topology.hpp"

namespace nocpareto {

/// All-pairs minimal-hop routes. next_hop(s, d) is the lowest-id neighbor of
/// s that is one hop closer to d, so every path strictly decreases the
/// remaining hop count and cannot loop.
class RoutingTable {
 public:
  RoutingTable(int n, std::vector<RouterId> next_hop, std::vector<int> hop_count);

  int n_routers() const noexcept { return n_; }
  /// -1 on the diagonal.
  RouterId next_hop(RouterId s, RouterId d) const {
    return next_hop_[index(s, d)];
  }
  int hop_count(RouterId s, RouterId d) const { return hop_count_[index(s, d)]; }

  friend bool operator==(const RoutingTable&, const RoutingTable&) = default;

 private:
  std::size_t index(RouterId s, RouterId d) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(d);
  }

  int n_;
  std::vector<RouterId> next_hop_;
  std::vector<int> hop_count_;
};

/// Throws ErrorKind::kUnroutable for a disconnected allocation.
RoutingTable build_routing(const LinkAllocation& a);

/// Mean hop count over ordered pairs s != d.
double average_hop_count(const RoutingTable& t);

/// Router sequence from s to d inclusive; empty when s == d.
std::vector<RouterId> path(const RoutingTable& t, RouterId s, RouterId d);

}  // namespace nocpareto

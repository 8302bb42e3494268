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

#include "nocpareto/routing.hpp"

#include <deque>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

RoutingTable::RoutingTable(int n, std::vector<RouterId> next_hop,
                           std::vector<int> hop_count)
    : n_(n), next_hop_(std::move(next_hop)), hop_count_(std::move(hop_count)) {}

RoutingTable build_routing(const LinkAllocation& a) {
  const int n = a.n_routers();
  const auto un = static_cast<std::size_t>(n);
  const auto adj = a.adjacency();
  std::vector<RouterId> next(un * un, -1);
  std::vector<int> hops(un * un, -1);

  // BFS towards each destination gives dist(., d); the next hop is then the
  // first (lowest id) neighbor whose distance is one less.
  std::vector<int> dist(un);
  std::deque<RouterId> queue;
  for (RouterId d = 0; d < n; ++d) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(d)] = 0;
    queue.assign(1, d);
    while (!queue.empty()) {
      const RouterId r = queue.front();
      queue.pop_front();
      for (RouterId q : adj[static_cast<std::size_t>(r)]) {
        if (dist[static_cast<std::size_t>(q)] < 0) {
          dist[static_cast<std::size_t>(q)] = dist[static_cast<std::size_t>(r)] + 1;
          queue.push_back(q);
        }
      }
    }
    for (RouterId s = 0; s < n; ++s) {
      const int ds = dist[static_cast<std::size_t>(s)];
      if (ds < 0) {
        throw Error(ErrorKind::kUnroutable,
                    fmt::format("router {} cannot reach router {}", s, d));
      }
      const std::size_t cell = static_cast<std::size_t>(s) * un + static_cast<std::size_t>(d);
      hops[cell] = ds;
      if (s == d) continue;
      for (RouterId q : adj[static_cast<std::size_t>(s)]) {
        if (dist[static_cast<std::size_t>(q)] == ds - 1) {
          next[cell] = q;
          break;
        }
      }
    }
  }
  return RoutingTable(n, std::move(next), std::move(hops));
}

double average_hop_count(const RoutingTable& t) {
  const int n = t.n_routers();
  long long total = 0;
  for (RouterId s = 0; s < n; ++s) {
    for (RouterId d = 0; d < n; ++d) {
      if (s != d) total += t.hop_count(s, d);
    }
  }
  return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

std::vector<RouterId> path(const RoutingTable& t, RouterId s, RouterId d) {
  const int n = t.n_routers();
  if (s < 0 || d < 0 || s >= n || d >= n) {
    throw Error(ErrorKind::kIndex,
                fmt::format("path endpoints ({}, {}) out of range", s, d));
  }
  std::vector<RouterId> out;
  if (s == d) return out;
  out.reserve(static_cast<std::size_t>(t.hop_count(s, d)) + 1);
  out.push_back(s);
  for (RouterId r = s; r != d;) {
    r = t.next_hop(r, d);
    out.push_back(r);
  }
  return out;
}

}  // namespace nocpareto

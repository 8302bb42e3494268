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

#include "nocpareto/network.hpp"

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

NetworkInstance::NetworkInstance(LinkAllocation allocation, TiledLayout layout)
    : allocation_(std::move(allocation)),
      layout_(layout),
      adjacency_(allocation_.adjacency()),
      routing_(build_routing(allocation_)),
      link_slot_(allocation_.size(), -1) {
  if (layout_.n_routers() != allocation_.n_routers()) {
    throw Error(ErrorKind::kDomain,
                fmt::format("layout holds {} routers, allocation has {}",
                            layout_.n_routers(), allocation_.n_routers()));
  }
  const int n = allocation_.n_routers();
  LinkIndex k = 0;
  for (RouterId i = 0; i < n; ++i) {
    for (RouterId j = i + 1; j < n; ++j, ++k) {
      if (!allocation_.test(k)) continue;
      const double len = link_length_mm(i, j, layout_);
      link_slot_[k] = static_cast<int>(links_.size());
      links_.push_back({k, i, j, len, link_latency_cycles(len, layout_)});
    }
  }
}

const Link& NetworkInstance::link_between(RouterId i, RouterId j) const {
  if (i > j) std::swap(i, j);
  const int slot = link_slot_[link_index(i, j, n_routers())];
  if (slot < 0) {
    throw Error(ErrorKind::kInvalidPair,
                fmt::format("routers {} and {} are not linked", i, j));
  }
  return links_[static_cast<std::size_t>(slot)];
}

int NetworkInstance::link_latency(RouterId i, RouterId j) const {
  return link_between(i, j).latency_cycles;
}

double NetworkInstance::link_length(RouterId i, RouterId j) const {
  return link_between(i, j).length_mm;
}

double NetworkInstance::total_link_length_mm() const noexcept {
  double total = 0.0;
  for (const auto& l : links_) total += l.length_mm;
  return total;
}

}  // namespace nocpareto

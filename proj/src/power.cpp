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

#include "nocpareto/power.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

void PowerParams::validate() const {
  if (!(clock_hz > 0.0)) {
    throw Error(ErrorKind::kDomain, "power.clock_hz must be positive");
  }
  if (e_buffer_write < 0.0 || e_crossbar < 0.0 || e_link_per_mm < 0.0 ||
      p_static_router < 0.0 || p_static_link_per_mm < 0.0) {
    throw Error(ErrorKind::kDomain, "power coefficients must be non-negative");
  }
}

double static_power(const NetworkInstance& net, const PowerParams& params) {
  double ports = 0.0;
  for (RouterId r = 0; r < net.n_routers(); ++r) ports += net.port_count(r);
  return params.p_static_router * ports +
         params.p_static_link_per_mm * net.total_link_length_mm();
}

double estimate_power(const ActivityCounters& counters, const NetworkInstance& net,
                      const PowerParams& params, std::uint64_t measured_cycles) {
  params.validate();
  if (measured_cycles < 1) {
    throw Error(ErrorKind::kContract, "measured_cycles must be >= 1");
  }
  if (counters.link_flit_mm < 0.0) {
    throw Error(ErrorKind::kContract, "negative link activity counter");
  }
  const double energy =
      params.e_buffer_write * static_cast<double>(counters.buffer_writes) +
      params.e_crossbar * static_cast<double>(counters.crossbar_traversals) +
      params.e_link_per_mm * counters.link_flit_mm;
  const double dynamic = energy * params.clock_hz / static_cast<double>(measured_cycles);
  return dynamic + static_power(net, params);
}

int power_bin(double watts) {
  if (!(watts >= 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("power must be non-negative, got {}", watts));
  }
  return static_cast<int>(std::floor(watts + 0.5));
}

}  // namespace nocpareto

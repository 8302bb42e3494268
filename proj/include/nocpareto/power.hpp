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

#include <cstdint>

#include "nocpareto/netsim.hpp"
#include "nocpareto/network.hpp"

namespace nocpareto {

/// Parametric stand-in for a circuit-level NoC power model. Defaults are
/// calibrated so an 8x8 mesh on a 21 mm die at 0.1 packets/node/cycle draws
/// about 24 W.
struct PowerParams {
  double clock_hz = 5.0e9;
  double e_buffer_write = 10.0e-12;        // J per flit
  double e_crossbar = 10.0e-12;            // J per flit
  double e_link_per_mm = 5.0e-12;          // J per flit per mm
  double p_static_router = 0.03;           // W per port
  double p_static_link_per_mm = 0.03;      // W per mm

  void validate() const;
};

/// Static power of the structure alone.
double static_power(const NetworkInstance& net, const PowerParams& params);

/// Dynamic energy rate of the counters over `measured_cycles` plus static
/// power. Throws ErrorKind::kContract on negative counters.
double estimate_power(const ActivityCounters& counters, const NetworkInstance& net,
                      const PowerParams& params, std::uint64_t measured_cycles);

/// Nearest integer watt, halves rounded up.
int power_bin(double watts);

}  // namespace nocpareto

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

#include <cmath>

#include "doctest.h"
#include "nocpareto/error.hpp"
#include "nocpareto/netsim.hpp"
#include "nocpareto/power.hpp"

using namespace nocpareto;

namespace {

// Independent static-power tally from the adjacency lists and geometry.
double static_oracle(const LinkAllocation& a, const TiledLayout& layout, const PowerParams& p) {
  const int n = a.n_routers();
  double watts = 0.0;
  const auto adj = a.adjacency();
  for (int r = 0; r < n; ++r) watts += p.p_static_router * static_cast<double>(adj[r].size() + 1);
  for (int i = 0; i < n; ++i) {
    for (int j : adj[i]) {
      if (j < i) continue;
      const double dx = std::abs(router_position(i, layout).col - router_position(j, layout).col) *
                        layout.spacing_x_mm();
      const double dy = std::abs(router_position(i, layout).row - router_position(j, layout).row) *
                        layout.spacing_y_mm();
      watts += p.p_static_link_per_mm * (dx + dy);
    }
  }
  return watts;
}

}  // namespace

TEST_CASE("static power of reference networks") {
  const PowerParams p;
  const NetworkInstance mesh(mesh_allocation(4, 4), TiledLayout::for_routers(16));
  // 64 ports, 24 links of 5.25 mm.
  CHECK(static_power(mesh, p) == doctest::Approx(64 * 0.03 + 126.0 * 0.03));
  CHECK(estimate_power({}, mesh, p, 1000) == doctest::Approx(static_power(mesh, p)));

  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const TiledLayout layout = TiledLayout::for_routers(n);
    const LinkAllocation a = random_allocation(n, rng, true);
    CHECK(static_power(NetworkInstance(a, layout), p) ==
          doctest::Approx(static_oracle(a, layout, p)).epsilon(1e-12));
  }
}

TEST_CASE("dynamic power is linear in activity and inverse in window length") {
  const PowerParams p;
  const NetworkInstance full(fully_connected_allocation(4), TiledLayout::for_routers(4));
  const double base = static_power(full, p);
  const ActivityCounters c{1000, 1000, 5000.0};
  // (10 + 10 + 25) nJ over 1000 cycles at 5 GHz.
  CHECK(estimate_power(c, full, p, 1000) - base == doctest::Approx(0.225));
  const ActivityCounters c2{2000, 2000, 10000.0};
  CHECK(estimate_power(c2, full, p, 1000) - base == doctest::Approx(0.45));
  CHECK(estimate_power(c2, full, p, 2000) - base == doctest::Approx(0.225));

  PowerParams zero = p;
  zero.e_buffer_write = zero.e_crossbar = zero.e_link_per_mm = 0.0;
  CHECK(estimate_power(c2, full, zero, 1000) == doctest::Approx(base));
}

TEST_CASE("adding a link never lowers static power") {
  const PowerParams p;
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const TiledLayout layout = TiledLayout::for_routers(n);
    const LinkAllocation a = random_allocation(n, rng, true);
    const double base = static_power(NetworkInstance(a, layout), p);
    for (LinkIndex k = 0; k < a.size(); ++k) {
      if (a.test(k)) continue;
      CHECK(static_power(NetworkInstance(flip_link(a, k), layout), p) > base);
    }
  }
}

TEST_CASE("simulated mesh power lands near the calibration point") {
  const NetworkInstance mesh(mesh_allocation(4, 4), TiledLayout::for_routers(16));
  const SimResult r = evaluate(mesh, {}, {}, 1);
  REQUIRE(r.stable);
  const double watts = estimate_power(r.counters, mesh, {}, r.measured_cycles);
  CHECK(watts > static_power(mesh, {}));
  CHECK(watts < 2.0 * static_power(mesh, {}));
}

TEST_CASE("power bins") {
  CHECK(power_bin(7.4) == 7);
  CHECK(power_bin(7.5) == 8);
  CHECK(power_bin(7.6) == 8);
  CHECK(power_bin(0.2) == 0);
  CHECK(power_bin(0.0) == 0);
  CHECK(power_bin(23.49999) == 23);
  CHECK_THROWS_AS(power_bin(-0.1), Error);
  CHECK_THROWS_AS(power_bin(std::nan("")), Error);
}

TEST_CASE("parameter validation") {
  const NetworkInstance full(fully_connected_allocation(4), TiledLayout::for_routers(4));
  PowerParams bad;
  bad.clock_hz = 0.0;
  CHECK_THROWS_AS(estimate_power({}, full, bad, 1000), Error);
  bad = {};
  bad.e_crossbar = -1.0;
  CHECK_THROWS_AS(estimate_power({}, full, bad, 1000), Error);
  CHECK_THROWS_AS(estimate_power({}, full, {}, 0), Error);
  CHECK_THROWS_AS(estimate_power({0, 0, -1.0}, full, {}, 1000), Error);
}

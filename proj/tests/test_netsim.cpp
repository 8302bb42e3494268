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
#include <map>

#include "doctest.h"
#include "nocpareto/error.hpp"
#include "nocpareto/evaluator.hpp"
#include "nocpareto/netsim.hpp"

using namespace nocpareto;

namespace {

// 2x2 on a 4 mm die: every link, diagonals included, is one cycle.
TiledLayout unit_layout(int n) {
  const TiledLayout base = TiledLayout::for_routers(n);
  return TiledLayout(n, base.grid_rows(), base.grid_cols(), 0.5 * base.grid_cols(),
                     0.5 * base.grid_rows());
}

LinkAllocation ring(int n) {
  LinkAllocation a(n);
  for (int i = 0; i + 1 < n; ++i) a.set(link_index(i, i + 1, n), true);
  a.set(link_index(0, n - 1, n), true);
  return a;
}

// Offered load on the busiest directed channel per unit injection rate,
// from the routing table alone: every source spreads its packets evenly
// over the other n-1 routers.
double max_channel_load_per_rate(const NetworkInstance& net) {
  const int n = net.n_routers();
  std::map<std::pair<int, int>, double> load;
  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < n; ++d) {
      if (s == d) continue;
      const auto p = path(net.routing(), s, d);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) load[{p[i], p[i + 1]}] += 1.0 / (n - 1);
    }
  }
  double worst = 0.0;
  for (const auto& [ch, l] : load) worst = std::max(worst, l);
  return worst;
}

}  // namespace

TEST_CASE("zero-load latency") {
  const NetworkInstance full(fully_connected_allocation(4), unit_layout(4));
  for (const auto& l : full.links()) CHECK(l.latency_cycles == 1);
  CHECK(zero_load_latency(full) == doctest::Approx(3.0));

  const NetworkInstance mesh(mesh_allocation(4, 4), TiledLayout::for_routers(16));
  CHECK(zero_load_latency(mesh) == doctest::Approx(19.0 / 3.0));

  RouterParams slow;
  slow.router_pipeline_cycles = 3;
  // 8/3 link cycles + (8/3 + 1) * 3 router cycles.
  CHECK(zero_load_latency(mesh, slow) == doctest::Approx(8.0 / 3.0 + 11.0));
}

TEST_CASE("zero-load latency never increases when a link is added (unit links)") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const LinkAllocation a = random_allocation(n, rng, true);
    const double base = zero_load_latency(NetworkInstance(a, unit_layout(n)));
    for (LinkIndex k = 0; k < a.size(); ++k) {
      if (a.test(k)) continue;
      const double more = zero_load_latency(NetworkInstance(flip_link(a, k), unit_layout(n)));
      CHECK(more <= base + 1e-12);
    }
  }
}

TEST_CASE("near-zero load converges to the zero-load latency") {
  const NetworkInstance full(fully_connected_allocation(4), unit_layout(4));
  TrafficConfig traffic;
  traffic.injection_rate = 0.002;
  traffic.sample_period_cycles = 50'000;
  const RunResult r = simulate_once(full, traffic, {}, 5);
  REQUIRE(r.converged());
  CHECK(r.packets_measured > 200);
  CHECK(r.avg_latency_cycles >= 3.0);
  CHECK(r.avg_latency_cycles < 3.02);
}

TEST_CASE("single runs are a pure function of the seed") {
  const NetworkInstance mesh(mesh_allocation(4, 4), TiledLayout::for_routers(16));
  const RunResult a = simulate_once(mesh, {}, {}, 99);
  const RunResult b = simulate_once(mesh, {}, {}, 99);
  CHECK(a.avg_latency_cycles == b.avg_latency_cycles);
  CHECK(a.total_counters == b.total_counters);
  CHECK(a.window_counters == b.window_counters);
  CHECK(a.flits_injected == b.flits_injected);
  const RunResult c = simulate_once(mesh, {}, {}, 100);
  CHECK(c.avg_latency_cycles != a.avg_latency_cycles);
}

TEST_CASE("offered load beyond channel capacity diverges") {
  const NetworkInstance net(ring(8), TiledLayout::for_routers(8));
  const double per_rate = max_channel_load_per_rate(net);
  // Busiest channel saturates at rate 1 / per_rate.
  const double saturation = 1.0 / per_rate;
  CHECK(saturation == doctest::Approx(0.7));
  TrafficConfig traffic;
  traffic.injection_rate = 0.9;
  const RunResult over = simulate_once(net, traffic, {}, 1);
  CHECK_FALSE(over.converged());
  CHECK(evaluate(net, traffic, {}, 1).stable == false);

  traffic.injection_rate = 0.5 * saturation;
  CHECK(simulate_once(net, traffic, {}, 1).converged());
}

TEST_CASE("a starved ring with one-flit buffers trips the deadlock watchdog") {
  const NetworkInstance net(ring(8), TiledLayout::for_routers(8));
  TrafficConfig traffic;
  traffic.injection_rate = 0.9;
  RouterParams router;
  router.buffer_depth_flits = 1;
  router.deadlock_watchdog_cycles = 200;
  const RunResult r = simulate_once(net, traffic, router, 4);
  CHECK(r.status == RunStatus::kDeadlocked);
  CHECK(r.flits_in_flight > 0);
  CHECK(r.flits_injected == r.flits_delivered + r.flits_in_flight);
}

TEST_CASE("flit conservation and buffer accounting on random networks") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const NetworkInstance net(random_allocation(n, rng, true), TiledLayout::for_routers(n));
    TrafficConfig traffic;
    traffic.packet_size_flits = 1 + static_cast<int>(rng() % 3);
    traffic.injection_rate = 0.05;
    const RunResult r = simulate_once(net, traffic, {}, rng());
    CHECK(r.flits_injected == r.flits_delivered + r.flits_in_flight);
    // Every relay buffers the flit: hops + 1 writes per delivered flit.
    CHECK(r.total_counters.buffer_writes >= r.delivered_hops + r.flits_delivered);
    CHECK(r.total_counters.crossbar_traversals >= r.delivered_hops + r.flits_delivered);
    if (r.converged()) {
      CHECK(r.flits_in_flight == 0);
      CHECK(r.avg_latency_cycles >= r.zero_load_bound_cycles - 1e-9);
    }
  }
}

TEST_CASE("latency grows with injection rate") {
  const NetworkInstance mesh(mesh_allocation(4, 4), TiledLayout::for_routers(16));
  double previous = 0.0;
  for (double rate : {0.02, 0.05, 0.1}) {
    TrafficConfig traffic;
    traffic.injection_rate = rate;
    const SimResult r = evaluate(mesh, traffic, {}, 8);
    REQUIRE(r.stable);
    CHECK(r.avg_latency_cycles >= previous);
    previous = r.avg_latency_cycles;
  }
}

TEST_CASE("replicated evaluation") {
  const NetworkInstance full(fully_connected_allocation(4), TiledLayout::for_routers(4));
  const SimResult r = evaluate(full, {}, {}, 1);
  CHECK(r.stable);
  CHECK(r.runs_used == kReplicationQuota);
  CHECK(r.runs_converged == kReplicationQuota);
  CHECK(r.measured_cycles == 4 * 1000);
  const SimResult again = evaluate(full, {}, {}, 1);
  CHECK(again.avg_latency_cycles == r.avg_latency_cycles);
  CHECK(again.counters == r.counters);

  double mean = 0.0;
  for (int k = 0; k < kReplicationQuota; ++k) {
    mean += simulate_once(full, {}, {}, replication_seed(1, k)).avg_latency_cycles;
  }
  CHECK(r.avg_latency_cycles == doctest::Approx(mean / kReplicationQuota));

  LinkAllocation split(4);
  split.set(link_index(0, 1, 4), true);
  split.set(link_index(2, 3, 4), true);
  const Evaluator eval({TiledLayout::for_routers(4)});
  try {
    eval(split);
    FAIL("expected unroutable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnroutable);
  }
}

TEST_CASE("traffic and router parameter validation") {
  const NetworkInstance full(fully_connected_allocation(4), TiledLayout::for_routers(4));
  TrafficConfig bad;
  bad.injection_rate = 0.0;
  CHECK_THROWS_AS(simulate_once(full, bad, {}, 1), Error);
  bad.injection_rate = 1.0;
  CHECK_THROWS_AS(simulate_once(full, bad, {}, 1), Error);
  RouterParams router;
  router.buffer_depth_flits = 0;
  CHECK_THROWS_AS(simulate_once(full, {}, router, 1), Error);
}

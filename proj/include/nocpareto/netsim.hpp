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
#include <limits>

#include "nocpareto/network.hpp"

namespace nocpareto {

/// Uniform random traffic. Injection rate is packets per node per cycle.
struct TrafficConfig {
  double injection_rate = 0.1;
  int packet_size_flits = 1;
  int sample_period_cycles = 1000;
  int warmup_cycles = 1000;
  /// Cycles allowed after injection stops for the network to empty.
  int max_drain_cycles = 2000;

  void validate() const;
};

struct RouterParams {
  int buffer_depth_flits = 8;
  int router_pipeline_cycles = 1;
  int deadlock_watchdog_cycles = 1000;

  void validate() const;
};

struct ActivityCounters {
  std::uint64_t buffer_writes = 0;
  std::uint64_t crossbar_traversals = 0;
  double link_flit_mm = 0.0;

  ActivityCounters& operator+=(const ActivityCounters& o) {
    buffer_writes += o.buffer_writes;
    crossbar_traversals += o.crossbar_traversals;
    link_flit_mm += o.link_flit_mm;
    return *this;
  }
  friend bool operator==(const ActivityCounters&, const ActivityCounters&) = default;
};

enum class RunStatus {
  kConverged,
  kDiverging,   // latency above the cap, or still growing across the window
  kDeadlocked,  // watchdog: flits in flight but nothing moved
  kUndrained,   // packets left after the drain bound
  kNoSamples,   // nothing delivered inside the sample window
};

const char* to_string(RunStatus s);

/// Measured latency above this multiple of zero-load latency is divergence.
inline constexpr double kDivergenceLatencyFactor = 20.0;
/// Second-half mean above this multiple of first-half mean is divergence.
inline constexpr double kDivergenceGrowthFactor = 1.5;
inline constexpr int kReplicationQuota = 4;

struct RunResult {
  RunStatus status = RunStatus::kNoSamples;
  double avg_latency_cycles = std::numeric_limits<double>::quiet_NaN();
  double first_half_latency = std::numeric_limits<double>::quiet_NaN();
  double second_half_latency = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t packets_measured = 0;
  /// Mean unloaded latency of exactly the packets that were measured; the
  /// measured average can never fall below it.
  double zero_load_bound_cycles = std::numeric_limits<double>::quiet_NaN();
  /// Activity inside the sample window only; feeds the power model.
  ActivityCounters window_counters;
  /// Activity over the whole run, warmup and drain included.
  ActivityCounters total_counters;
  std::uint64_t measured_cycles = 0;
  std::uint64_t flits_injected = 0;
  std::uint64_t flits_delivered = 0;
  std::uint64_t flits_in_flight = 0;
  /// Sum over delivered flits of router-to-router hops taken.
  std::uint64_t delivered_hops = 0;
  std::int64_t cycles_run = 0;

  bool converged() const noexcept { return status == RunStatus::kConverged; }
};

/// One seeded run: warmup, sample window, drain. The traffic trace depends
/// only on the seed, the router count and the traffic config, so different
/// topologies evaluated with the same seed see identical offered traffic.
RunResult simulate_once(const NetworkInstance& net, const TrafficConfig& traffic,
                        const RouterParams& router, std::uint64_t seed);

/// Mean over ordered pairs of path link latency plus (hops + 1) router stages.
double zero_load_latency(const NetworkInstance& net, const RouterParams& router = {});

struct SimResult {
  LinkAllocation allocation{2};
  double avg_latency_cycles = std::numeric_limits<double>::quiet_NaN();
  double power_watts = 0.0;
  bool stable = false;
  int runs_used = 0;
  int runs_converged = 0;
  ActivityCounters counters;
  std::uint64_t measured_cycles = 0;
};

/// Replicated evaluation: slot k runs with replication_seed(base_seed, k) and a
/// failed slot is retried once with replication_seed(base_seed, 4 + k).
/// Stable iff kReplicationQuota runs converge;
/// latency is their mean. Power is left at zero for the power model.
SimResult evaluate(const NetworkInstance& net, const TrafficConfig& traffic,
                   const RouterParams& router, std::uint64_t base_seed);

/// Seed for replication slot k derived from a base seed.
std::uint64_t replication_seed(std::uint64_t base_seed, int k);

}  // namespace nocpareto

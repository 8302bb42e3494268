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

#include "nocpareto/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kDiverging: return "diverging";
    case RunStatus::kDeadlocked: return "deadlocked";
    case RunStatus::kUndrained: return "undrained";
    case RunStatus::kNoSamples: return "no-samples";
  }
  return "unknown";
}

void TrafficConfig::validate() const {
  if (!(injection_rate > 0.0 && injection_rate < 1.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("injection_rate must be in (0, 1), got {}", injection_rate));
  }
  if (packet_size_flits < 1 || sample_period_cycles < 1 || warmup_cycles < 0 ||
      max_drain_cycles < 0) {
    throw Error(ErrorKind::kDomain, "traffic cycle counts out of range");
  }
}

void RouterParams::validate() const {
  if (buffer_depth_flits < 1 || router_pipeline_cycles < 1 ||
      deadlock_watchdog_cycles < 1) {
    throw Error(ErrorKind::kDomain, "router parameters must be positive");
  }
}

std::uint64_t replication_seed(std::uint64_t base_seed, int k) {
  // splitmix64 finalizer
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Flit {
  std::uint32_t packet = 0;
  RouterId dest = 0;
  std::int64_t ready = 0;
  std::uint16_t hops = 0;
  bool tail = false;
};

// Fixed-capacity FIFO.
class FlitQueue {
 public:
  explicit FlitQueue(int capacity) : slots_(static_cast<std::size_t>(capacity)) {}

  bool empty() const noexcept { return size_ == 0; }
  bool full() const noexcept { return size_ == slots_.size(); }
  std::size_t size() const noexcept { return size_; }
  Flit& front() { return slots_[head_]; }
  void push(const Flit& f) {
    slots_[(head_ + size_) % slots_.size()] = f;
    ++size_;
  }
  void pop() {
    head_ = (head_ + 1) % slots_.size();
    --size_;
  }

 private:
  std::vector<Flit> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

struct InFlight {
  std::int64_t arrival;
  Flit flit;
};

// Output o >= 1 of router r drives the channel to neighbor adj[r][o-1].
struct Channel {
  RouterId to = 0;
  int to_input = 0;  // input port index at the receiving router
  int latency = 1;
  double length_mm = 0.0;
  int credits = 0;
  std::deque<InFlight> wire;
};

struct Router {
  std::vector<FlitQueue> inputs;  // 0 = local injection
  std::vector<Channel> outputs;   // index o-1 for output o; output 0 = ejection
  std::vector<int> upstream_router;  // per input >= 1: router feeding it
  std::vector<int> upstream_output;  // per input >= 1: that router's output
  std::vector<int> rr;               // per output round-robin pointer
  std::vector<int> route;            // dest -> output port
  std::deque<Flit> source;           // unbounded source queue
};

struct Packet {
  std::int64_t created = 0;
  RouterId src = 0;
};

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

namespace {

// Unloaded head latency per (src, dst) pair, row-major.
std::vector<double> pair_zero_load(const NetworkInstance& net, const RouterParams& router) {
  const int n = net.n_routers();
  const auto& table = net.routing();
  std::vector<double> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (RouterId s = 0; s < n; ++s) {
    for (RouterId d = 0; d < n; ++d) {
      if (s == d) continue;
      int link_cycles = 0;
      for (RouterId r = s; r != d;) {
        const RouterId q = table.next_hop(r, d);
        link_cycles += net.link_latency(r, q);
        r = q;
      }
      out[static_cast<std::size_t>(s) * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)] =
          link_cycles + (table.hop_count(s, d) + 1) * router.router_pipeline_cycles;
    }
  }
  return out;
}

}  // namespace

double zero_load_latency(const NetworkInstance& net, const RouterParams& router) {
  const int n = net.n_routers();
  double total = 0.0;
  for (double v : pair_zero_load(net, router)) total += v;
  return total / (static_cast<double>(n) * (n - 1));
}

RunResult simulate_once(const NetworkInstance& net, const TrafficConfig& traffic,
                        const RouterParams& params, std::uint64_t seed) {
  traffic.validate();
  params.validate();
  const int n = net.n_routers();
  const auto& adj = net.adjacency();
  const auto& table = net.routing();
  const int pipeline = params.router_pipeline_cycles;

  std::vector<Router> routers(static_cast<std::size_t>(n));
  for (RouterId r = 0; r < n; ++r) {
    auto& R = routers[static_cast<std::size_t>(r)];
    const auto& nb = adj[static_cast<std::size_t>(r)];
    const int ports = static_cast<int>(nb.size()) + 1;
    R.inputs.assign(static_cast<std::size_t>(ports), FlitQueue(params.buffer_depth_flits));
    R.upstream_router.assign(static_cast<std::size_t>(ports), -1);
    R.upstream_output.assign(static_cast<std::size_t>(ports), -1);
    R.rr.assign(static_cast<std::size_t>(ports), 0);
    R.outputs.resize(nb.size());
    R.route.assign(static_cast<std::size_t>(n), 0);
  }
  for (RouterId r = 0; r < n; ++r) {
    auto& R = routers[static_cast<std::size_t>(r)];
    const auto& nb = adj[static_cast<std::size_t>(r)];
    for (std::size_t o = 0; o < nb.size(); ++o) {
      const RouterId q = nb[o];
      const auto& qnb = adj[static_cast<std::size_t>(q)];
      const int back = static_cast<int>(std::lower_bound(qnb.begin(), qnb.end(), r) - qnb.begin());
      auto& ch = R.outputs[o];
      ch.to = q;
      ch.to_input = back + 1;
      ch.latency = net.link_latency(r, q);
      ch.length_mm = net.link_length(r, q);
      ch.credits = params.buffer_depth_flits;
      auto& Q = routers[static_cast<std::size_t>(q)];
      Q.upstream_router[static_cast<std::size_t>(back + 1)] = r;
      Q.upstream_output[static_cast<std::size_t>(back + 1)] = static_cast<int>(o) + 1;
    }
    for (RouterId d = 0; d < n; ++d) {
      if (d == r) continue;
      const RouterId q = table.next_hop(r, d);
      R.route[static_cast<std::size_t>(d)] =
          static_cast<int>(std::lower_bound(nb.begin(), nb.end(), q) - nb.begin()) + 1;
    }
  }

  Rng rng(seed);
  std::vector<Packet> packets;
  packets.reserve(static_cast<std::size_t>(
      traffic.injection_rate * n *
      (traffic.warmup_cycles + traffic.sample_period_cycles) * 1.2 + 16));

  RunResult out;
  const std::int64_t window_begin = traffic.warmup_cycles;
  const std::int64_t window_end = window_begin + traffic.sample_period_cycles;
  const std::int64_t window_mid = window_begin + traffic.sample_period_cycles / 2;
  const std::int64_t hard_end = window_end + traffic.max_drain_cycles;

  double sum_all = 0.0, sum_first = 0.0, sum_second = 0.0;
  double sum_bound = 0.0;
  const std::vector<double> pair_bound = pair_zero_load(net, params);
  const int serialization = traffic.packet_size_flits - 1;
  std::uint64_t cnt_first = 0, cnt_second = 0;
  std::uint64_t in_network = 0;
  std::uint64_t queued_at_source = 0;
  std::int64_t last_move = 0;
  std::vector<int> request;

  std::int64_t t = 0;
  bool deadlocked = false;
  for (;; ++t) {
    const bool injecting = t < window_end;
    if (!injecting && (t >= hard_end || (in_network == 0 && queued_at_source == 0))) {
      break;
    }
    const bool in_window = t >= window_begin && t < window_end;
    bool moved = false;

    // Link arrivals into downstream input buffers.
    for (auto& R : routers) {
      for (auto& ch : R.outputs) {
        while (!ch.wire.empty() && ch.wire.front().arrival <= t) {
          Flit f = ch.wire.front().flit;
          ch.wire.pop_front();
          f.ready = t + pipeline;
          routers[static_cast<std::size_t>(ch.to)]
              .inputs[static_cast<std::size_t>(ch.to_input)]
              .push(f);
          ++out.total_counters.buffer_writes;
          if (in_window) ++out.window_counters.buffer_writes;
          moved = true;
        }
      }
    }

    // Switch allocation: one flit per output per cycle, round-robin over
    // inputs, credit check on network outputs.
    for (RouterId r = 0; r < n; ++r) {
      auto& R = routers[static_cast<std::size_t>(r)];
      const int ports = static_cast<int>(R.inputs.size());
      request.assign(static_cast<std::size_t>(ports), -1);
      bool any = false;
      for (int i = 0; i < ports; ++i) {
        auto& q = R.inputs[static_cast<std::size_t>(i)];
        if (q.empty() || q.front().ready > t) continue;
        const RouterId d = q.front().dest;
        request[static_cast<std::size_t>(i)] = d == r ? 0 : R.route[static_cast<std::size_t>(d)];
        any = true;
      }
      if (!any) continue;
      for (int o = 0; o < ports; ++o) {
        if (o > 0 && R.outputs[static_cast<std::size_t>(o - 1)].credits == 0) continue;
        int winner = -1;
        const int start = R.rr[static_cast<std::size_t>(o)];
        for (int k = 0; k < ports; ++k) {
          const int i = (start + k) % ports;
          if (request[static_cast<std::size_t>(i)] == o) {
            winner = i;
            break;
          }
        }
        if (winner < 0) continue;
        R.rr[static_cast<std::size_t>(o)] = (winner + 1) % ports;
        auto& in = R.inputs[static_cast<std::size_t>(winner)];
        Flit f = in.front();
        in.pop();
        moved = true;
        if (winner > 0) {
          const auto up = static_cast<std::size_t>(R.upstream_router[static_cast<std::size_t>(winner)]);
          const auto up_out = static_cast<std::size_t>(R.upstream_output[static_cast<std::size_t>(winner)]);
          ++routers[up].outputs[up_out - 1].credits;
        }
        ++out.total_counters.crossbar_traversals;
        if (in_window) ++out.window_counters.crossbar_traversals;
        if (o == 0) {
          --in_network;
          ++out.flits_delivered;
          out.delivered_hops += f.hops;
          if (f.tail && in_window) {
            const double lat = static_cast<double>(t - packets[f.packet].created);
            sum_all += lat;
            sum_bound += pair_bound[static_cast<std::size_t>(packets[f.packet].src) *
                                       static_cast<std::size_t>(n) +
                                   static_cast<std::size_t>(f.dest)] +
                         serialization;
            if (t < window_mid) {
              sum_first += lat;
              ++cnt_first;
            } else {
              sum_second += lat;
              ++cnt_second;
            }
          }
        } else {
          auto& ch = R.outputs[static_cast<std::size_t>(o - 1)];
          --ch.credits;
          ++f.hops;
          ch.wire.push_back({t + ch.latency, f});
          out.total_counters.link_flit_mm += ch.length_mm;
          if (in_window) out.window_counters.link_flit_mm += ch.length_mm;
        }
      }
    }

    // Injection. Two draws per node per cycle regardless of state keep the
    // traffic trace identical across topologies.
    for (RouterId r = 0; r < n; ++r) {
      auto& R = routers[static_cast<std::size_t>(r)];
      if (injecting) {
        const double u = uniform01(rng);
        auto d = static_cast<RouterId>(uniform01(rng) * (n - 1));
        if (d >= r) ++d;
        if (u < traffic.injection_rate) {
          const auto id = static_cast<std::uint32_t>(packets.size());
          packets.push_back({t, r});
          for (int k = 0; k < traffic.packet_size_flits; ++k) {
            R.source.push_back({id, d, 0, 0, k + 1 == traffic.packet_size_flits});
          }
          queued_at_source += static_cast<std::uint64_t>(traffic.packet_size_flits);
        }
      }
      auto& local = R.inputs[0];
      if (!R.source.empty() && !local.full()) {
        Flit f = R.source.front();
        R.source.pop_front();
        --queued_at_source;
        f.ready = t + pipeline;
        local.push(f);
        ++in_network;
        ++out.flits_injected;
        ++out.total_counters.buffer_writes;
        if (in_window) ++out.window_counters.buffer_writes;
        moved = true;
      }
    }

    if (moved || in_network == 0) {
      last_move = t;
    } else if (t - last_move >= params.deadlock_watchdog_cycles) {
      deadlocked = true;
      ++t;
      break;
    }
  }

  out.cycles_run = t;
  out.flits_in_flight = in_network;
  out.measured_cycles = static_cast<std::uint64_t>(traffic.sample_period_cycles);
  out.packets_measured = cnt_first + cnt_second;
  if (out.packets_measured > 0) {
    out.avg_latency_cycles = sum_all / static_cast<double>(out.packets_measured);
    out.zero_load_bound_cycles = sum_bound / static_cast<double>(out.packets_measured);
  }
  if (cnt_first > 0) out.first_half_latency = sum_first / static_cast<double>(cnt_first);
  if (cnt_second > 0) out.second_half_latency = sum_second / static_cast<double>(cnt_second);

  if (deadlocked) {
    out.status = RunStatus::kDeadlocked;
  } else if (out.packets_measured == 0) {
    out.status = RunStatus::kNoSamples;
  } else if (out.avg_latency_cycles >
                 kDivergenceLatencyFactor * zero_load_latency(net, params) ||
             (cnt_first > 0 && cnt_second > 0 &&
              out.second_half_latency > kDivergenceGrowthFactor * out.first_half_latency)) {
    out.status = RunStatus::kDiverging;
  } else if (in_network > 0 || queued_at_source > 0) {
    out.status = RunStatus::kUndrained;
  } else {
    out.status = RunStatus::kConverged;
  }
  return out;
}

SimResult evaluate(const NetworkInstance& net, const TrafficConfig& traffic,
                   const RouterParams& router, std::uint64_t base_seed) {
  SimResult res{net.allocation(), std::numeric_limits<double>::quiet_NaN(), 0.0, false, 0, 0, {}, 0};
  double latency_sum = 0.0;
  for (int slot = 0; slot < kReplicationQuota; ++slot) {
    RunResult run = simulate_once(net, traffic, router, replication_seed(base_seed, slot));
    ++res.runs_used;
    if (!run.converged()) {
      run = simulate_once(net, traffic, router,
                          replication_seed(base_seed, kReplicationQuota + slot));
      ++res.runs_used;
    }
    if (!run.converged()) {
      res.stable = false;
      return res;
    }
    ++res.runs_converged;
    latency_sum += run.avg_latency_cycles;
    res.counters += run.window_counters;
    res.measured_cycles += run.measured_cycles;
  }
  res.stable = true;
  res.avg_latency_cycles = latency_sum / kReplicationQuota;
  return res;
}

}  // namespace nocpareto

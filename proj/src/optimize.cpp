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

#include "nocpareto/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(Rng& rng, std::size_t count) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count));
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
// exception is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

IterationRecord make_record(std::uint64_t iteration, const LinkAllocation& a,
                            const SimResult* res, double e, double temperature,
                            bool accepted) {
  IterationRecord r;
  r.iteration = iteration;
  r.allocation = a.to_string();
  r.latency = res && res->stable ? res->avg_latency_cycles : kNaN;
  r.power = res && res->stable ? res->power_watts : kNaN;
  r.fitness = e;
  r.temperature = temperature;
  r.accepted = accepted;
  return r;
}

}  // namespace

FitnessWeight::FitnessWeight(double w) : w_(w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw Error(ErrorKind::kInvalidWeight,
                fmt::format("fitness weight must be in (0, 1], got {}", w));
  }
}

double fitness(double latency_cycles, double power_watts, FitnessWeight w) {
  if (latency_cycles < 0.0 || power_watts < 0.0) {
    throw Error(ErrorKind::kDomain, "fitness objectives must be non-negative");
  }
  return w.value() * latency_cycles + (1.0 - w.value()) * power_watts;
}

void AnnealSchedule::validate() const {
  if (!(t_start > t_end && t_end > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("need t_start > t_end > 0, got {} / {}", t_start, t_end));
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("cooling rate must be in (0, 1), got {}", lambda));
  }
}

std::uint64_t AnnealSchedule::iterations() const {
  validate();
  const double steps = std::log(t_end / t_start) / std::log(lambda);
  return static_cast<std::uint64_t>(std::ceil(steps - 1e-9));
}

AnnealSchedule AnnealSchedule::for_iterations(double t_start, double t_end,
                                              std::uint64_t iterations) {
  if (iterations < 1) iterations = 1;
  AnnealSchedule s{t_start, t_end,
                   std::pow(t_end / t_start, 1.0 / static_cast<double>(iterations))};
  s.validate();
  return s;
}

CompareMode parse_compare_mode(const std::string& s) {
  if (s == "best") return CompareMode::kBest;
  if (s == "current") return CompareMode::kCurrent;
  throw Error(ErrorKind::kParse,
              fmt::format("anneal.compare must be best or current, got '{}'", s));
}

const char* to_string(CompareMode m) {
  return m == CompareMode::kBest ? "best" : "current";
}

double acceptance_probability(double delta, double temperature) {
  if (delta <= 0.0) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-delta / temperature);
}

bool boltzmann_accept(double e_new, double e_ref, double temperature, double u) {
  if (e_new < e_ref) return true;
  return u < acceptance_probability(e_new - e_ref, temperature);
}

void write_iteration_log(std::ostream& os, const IterationLog& log) {
  auto num = [](double v) {
    return std::isnan(v) ? std::string{} : fmt::format("{:.6f}", v);
  };
  auto sci = [](double v) {
    return std::isnan(v) ? std::string{} : fmt::format("{:.6e}", v);
  };
  os << kIterationLogHeader << '\n';
  for (const auto& r : log) {
    os << fmt::format("{},{},{},{},{},{},{}\n", r.iteration, r.allocation,
                      num(r.latency), num(r.power), num(r.fitness),
                      sci(r.temperature), r.accepted ? 1 : 0);
  }
}

SearchReport random_search(int n, std::uint64_t budget, std::uint64_t seed,
                           const EvaluateFn& evaluate, ParetoRecorder& recorder,
                           IterationLog* log) {
  Rng rng(seed);
  SearchReport report;
  const RecordSource source{"random", std::nullopt, seed};
  for (std::uint64_t i = 0; i < budget; ++i) {
    const LinkAllocation a = random_allocation(n, rng, true);
    const SimResult res = evaluate(a);
    ++report.evaluations;
    if (res.stable) {
      ++report.stable;
      recorder.record(res, source);
    }
    if (log) log->push_back(make_record(i, a, &res, kNaN, kNaN, res.stable));
  }
  return report;
}

std::uint64_t greedy_eval_count(int n) {
  if (n < 2 || n > 40'000) {
    throw Error(ErrorKind::kDomain, fmt::format("router count {} out of range", n));
  }
  const auto m = static_cast<std::uint64_t>(n);
  return (m * m * m * m - 2 * m * m * m - m * m + 2 * m) / 8;
}

std::uint64_t greedy_eval_enumeration(int n) {
  const std::uint64_t p = num_links(n);
  std::uint64_t total = 0;
  for (std::uint64_t k = static_cast<std::uint64_t>(n); k <= p; ++k) total += k;
  return total;
}

GreedyReport special_greedy(int n, const EvaluateFn& evaluate,
                            ParetoRecorder& recorder, IterationLog* log) {
  GreedyReport report;
  const RecordSource source{"greedy", std::nullopt, 0};
  LinkAllocation current = fully_connected_allocation(n);
  std::uint64_t step = 0;

  const SimResult start = evaluate(current);
  ++report.simulations;
  if (start.stable) recorder.record(start, source);
  if (log) log->push_back(make_record(step++, current, &start, kNaN, kNaN, true));
  report.trajectory_latency.push_back(start.stable ? start.avg_latency_cycles : kNaN);
  report.trajectory_links.push_back(current.link_count());

  const auto floor_links = static_cast<std::size_t>(n - 1);
  report.stop = GreedyStop::kSpanningTree;
  while (current.link_count() > floor_links) {
    std::optional<LinkIndex> best_k;
    double best_latency = std::numeric_limits<double>::infinity();
    for (LinkIndex k = 0; k < current.size(); ++k) {
      if (!current.test(k)) continue;
      const LinkAllocation candidate = flip_link(current, k);
      ++report.neighbor_evaluations;
      if (!is_connected(candidate)) {
        if (log) log->push_back(make_record(step++, candidate, nullptr, kNaN, kNaN, false));
        continue;
      }
      const SimResult res = evaluate(candidate);
      ++report.simulations;
      if (res.stable) {
        recorder.record(res, source);
        if (res.avg_latency_cycles < best_latency) {
          best_latency = res.avg_latency_cycles;
          best_k = k;
        }
      }
      if (log) log->push_back(make_record(step++, candidate, &res, kNaN, kNaN, false));
    }
    if (!best_k) {
      report.stop = GreedyStop::kNoStableNeighbor;
      break;
    }
    current = flip_link(current, *best_k);
    if (log) {
      // Mark the move: the chosen neighbor is re-logged as accepted.
      log->push_back(make_record(step++, current, nullptr, kNaN, kNaN, true));
      log->back().latency = best_latency;
    }
    report.trajectory_latency.push_back(best_latency);
    report.trajectory_links.push_back(current.link_count());
  }
  report.final_allocation = current;
  return report;
}

AnnealReport simulated_annealing(int n, FitnessWeight w, const AnnealSchedule& schedule,
                                 std::uint64_t seed, const EvaluateFn& evaluate,
                                 ParetoRecorder& recorder, const AnnealOptions& options,
                                 IterationLog* log) {
  const std::uint64_t iterations = schedule.iterations();
  Rng rng(seed);
  AnnealReport report;
  report.best_fitness = std::numeric_limits<double>::infinity();
  const RecordSource source{"anneal", w.value(), seed};
  const std::uint64_t cap = options.max_evaluations;
  auto budget_left = [&] { return cap == 0 || report.evaluations < cap; };

  // Random connected, stable start.
  LinkAllocation current(n);
  double e_current = 0.0;
  bool have_start = false;
  while (!have_start && budget_left()) {
    LinkAllocation a = random_allocation(n, rng, true);
    const SimResult res = evaluate(a);
    ++report.evaluations;
    if (log) {
      const double e = res.stable ? fitness(res.avg_latency_cycles, res.power_watts, w) : kNaN;
      log->push_back(make_record(0, a, &res, e, schedule.t_start, res.stable));
    }
    if (!res.stable) continue;
    recorder.record(res, source);
    current = std::move(a);
    e_current = fitness(res.avg_latency_cycles, res.power_watts, w);
    report.best_fitness = e_current;
    report.best_allocation = current;
    report.best_latency = res.avg_latency_cycles;
    report.best_power = res.power_watts;
    have_start = true;
  }
  if (!have_start) return report;

  const std::size_t p = current.size();
  double temperature = schedule.t_start;
  for (std::uint64_t it = 1; it <= iterations && budget_left(); ++it) {
    ++report.iterations;
    LinkAllocation candidate = flip_link(current, uniform_index(rng, p));
    for (int redraw = 0; redraw < options.max_redraws && !is_connected(candidate); ++redraw) {
      candidate = flip_link(current, uniform_index(rng, p));
    }
    bool accepted = false;
    double e = kNaN;
    std::optional<SimResult> res;
    if (is_connected(candidate)) {
      res = evaluate(candidate);
      ++report.evaluations;
      if (res->stable) {
        recorder.record(*res, source);
        e = fitness(res->avg_latency_cycles, res->power_watts, w);
        const double reference =
            options.compare == CompareMode::kBest ? report.best_fitness : e_current;
        accepted = boltzmann_accept(e, reference, temperature, uniform01(rng));
        if (accepted) {
          ++report.accepted;
          current = candidate;
          e_current = e;
          if (e < report.best_fitness) {
            report.best_fitness = e;
            report.best_allocation = candidate;
            report.best_latency = res->avg_latency_cycles;
            report.best_power = res->power_watts;
          }
        }
      }
    }
    if (log) {
      log->push_back(make_record(it, candidate, res ? &*res : nullptr, e, temperature,
                                 accepted));
    }
    temperature *= schedule.lambda;
  }
  return report;
}

AnnealReport run_anneal(int n, FitnessWeight w, const AnnealRunConfig& config,
                        std::uint64_t seed, const EvaluateFn& evaluate,
                        ParetoRecorder& recorder, IterationLog* log) {
  std::uint64_t used = 0;
  double t_start = config.t_start.value_or(0.0);
  if (!config.t_start) {
    const std::uint64_t samples =
        std::min<std::uint64_t>(kTemperatureSamples, config.budget / 2);
    Rng rng(replication_seed(seed, 1'000'003));
    const RecordSource source{"anneal", w.value(), seed};
    std::vector<double> values;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const SimResult res = evaluate(random_allocation(n, rng, true));
      ++used;
      if (!res.stable) continue;
      recorder.record(res, source);
      values.push_back(fitness(res.avg_latency_cycles, res.power_watts, w));
    }
    double spread = 0.0;
    if (values.size() >= 2) {
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      for (double v : values) spread += (v - mean) * (v - mean);
      spread = std::sqrt(spread / static_cast<double>(values.size() - 1));
    }
    t_start = spread > 0.0 ? spread : 1.0;
  }
  const double t_end = config.t_end.value_or(1e-3 * t_start);
  const std::uint64_t remaining = config.budget > used ? config.budget - used : 0;

  AnnealReport report;
  if (remaining > 0) {
    AnnealSchedule schedule =
        config.lambda ? AnnealSchedule{t_start, t_end, *config.lambda}
                      : AnnealSchedule::for_iterations(
                            t_start, t_end, remaining > 1 ? remaining - 1 : 1);
    AnnealOptions options;
    options.compare = config.compare;
    options.max_evaluations = remaining;
    report = simulated_annealing(n, w, schedule, seed, evaluate, recorder, options, log);
  }
  report.evaluations += used;
  return report;
}

std::vector<double> default_weights() {
  std::vector<double> w;
  for (int i = 1; i <= 10; ++i) w.push_back(i / 10.0);
  return w;
}

std::uint64_t sweep_run_seed(std::uint64_t seed, std::size_t index) {
  return replication_seed(seed, 100 + static_cast<int>(index));
}

SweepResult weight_sweep(int n, const std::vector<double>& weights,
                         const AnnealRunConfig& config, std::uint64_t seed,
                         const EvaluateFn& evaluate, int jobs, bool keep_logs) {
  if (weights.empty()) throw Error(ErrorKind::kInvalidWeight, "weight sweep needs at least one weight");
  std::vector<FitnessWeight> checked;
  for (double w : weights) checked.emplace_back(w);

  SweepResult result;
  result.runs.resize(weights.size());
  parallel_for(weights.size(), jobs, [&](std::size_t i) {
    SweepRun& run = result.runs[i];
    run.weight = weights[i];
    run.seed = sweep_run_seed(seed, i);
    run.report = run_anneal(n, checked[i], config, run.seed, evaluate, run.recorder,
                            keep_logs ? &run.log : nullptr);
  });
  for (const auto& run : result.runs) result.merged = merge(result.merged, run.recorder);
  return result;
}

OracleReport exhaustive_oracle(int n, const EvaluateFn& evaluate, int jobs) {
  const std::size_t p = num_links(n);
  if (p > kOracleMaxLinks) {
    throw Error(ErrorKind::kDomain,
                fmt::format("exhaustive oracle refuses n={}: {} allocations", n,
                            combination_count(n).str()));
  }
  const std::uint64_t total = std::uint64_t{1} << p;
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  struct Chunk {
    ParetoRecorder recorder;
    std::uint64_t connected = 0;
    std::uint64_t stable = 0;
  };
  std::vector<Chunk> parts(chunks);
  const RecordSource source{"oracle", std::nullopt, 0};
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t begin = total * c / chunks;
    const std::uint64_t end = total * (c + 1) / chunks;
    std::vector<std::uint8_t> bits(p);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      for (std::size_t k = 0; k < p; ++k) bits[k] = (mask >> k) & 1U;
      LinkAllocation a(n, bits);
      if (!is_connected(a)) continue;
      ++parts[c].connected;
      const SimResult res = evaluate(a);
      if (!res.stable) continue;
      ++parts[c].stable;
      parts[c].recorder.record(res, source);
    }
  });
  OracleReport report;
  report.total = total;
  for (const auto& part : parts) {
    report.recorder = merge(report.recorder, part.recorder);
    report.connected += part.connected;
    report.stable += part.stable;
  }
  return report;
}

}  // namespace nocpareto

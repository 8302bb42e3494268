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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nocpareto/evaluator.hpp"
#include "nocpareto/pareto.hpp"
#include "nocpareto/topology.hpp"

namespace nocpareto {

/// Latency weight of the scalar fitness, in (0, 1]. Zero would optimize
/// power alone and walks into unstable networks.
class FitnessWeight {
 public:
  explicit FitnessWeight(double w);
  double value() const noexcept { return w_; }

 private:
  double w_;
};

/// weight * latency + (1 - weight) * power, raw units.
double fitness(double latency_cycles, double power_watts, FitnessWeight w);

/// Geometric cooling T <- lambda * T from t_start until T drops to t_end.
struct AnnealSchedule {
  double t_start = 1.0;
  double t_end = 1e-3;
  double lambda = 0.999;

  void validate() const;
  /// Number of cooling steps, ceil(ln(t_end / t_start) / ln(lambda)).
  std::uint64_t iterations() const;
  /// Lambda chosen so that `iterations` steps go from t_start to t_end.
  static AnnealSchedule for_iterations(double t_start, double t_end,
                                       std::uint64_t iterations);
};

/// What a worse proposal is compared against.
enum class CompareMode {
  kBest,     // best fitness seen so far
  kCurrent,  // the current state's fitness
};

CompareMode parse_compare_mode(const std::string& s);
const char* to_string(CompareMode m);

/// exp(-(delta) / T), clamped to 1 for delta <= 0.
double acceptance_probability(double delta, double temperature);

/// Accept iff e_new < e_ref, or u < exp(-(e_new - e_ref) / T).
bool boltzmann_accept(double e_new, double e_ref, double temperature, double u);

struct IterationRecord {
  std::uint64_t iteration = 0;
  std::string allocation;
  double latency = 0.0;   // NaN when unstable or not simulated
  double power = 0.0;     // NaN when unstable or not simulated
  double fitness = 0.0;   // NaN outside annealing
  double temperature = 0.0;
  bool accepted = false;
};

using IterationLog = std::vector<IterationRecord>;

inline constexpr const char* kIterationLogHeader =
    "iteration,allocation,latency,power,E,T,accepted";
void write_iteration_log(std::ostream& os, const IterationLog& log);

struct SearchReport {
  std::uint64_t evaluations = 0;
  std::uint64_t stable = 0;
};

/// Samples `budget` random connected allocations and records the stable ones.
SearchReport random_search(int n, std::uint64_t budget, std::uint64_t seed,
                           const EvaluateFn& evaluate, ParetoRecorder& recorder,
                           IterationLog* log = nullptr);

/// (n^4 - 2n^3 - n^2 + 2n) / 8.
std::uint64_t greedy_eval_count(int n);
/// Sum of k for k = n .. n(n-1)/2: the neighbor count of each round.
std::uint64_t greedy_eval_enumeration(int n);

enum class GreedyStop {
  kSpanningTree,      // reached n-1 links
  kNoStableNeighbor,  // every removal is disconnected or unstable
};

struct GreedyReport {
  /// One per one-link-removed neighbor examined; disconnected neighbors
  /// count but are never simulated.
  std::uint64_t neighbor_evaluations = 0;
  std::uint64_t simulations = 0;  // the fully connected start included
  std::vector<double> trajectory_latency;
  std::vector<std::size_t> trajectory_links;
  LinkAllocation final_allocation{2};
  GreedyStop stop = GreedyStop::kSpanningTree;
};

/// Starts fully connected and repeatedly removes the link whose stable
/// neighbor has the lowest latency (ties: lowest link index).
GreedyReport special_greedy(int n, const EvaluateFn& evaluate,
                            ParetoRecorder& recorder, IterationLog* log = nullptr);

struct AnnealOptions {
  CompareMode compare = CompareMode::kBest;
  int max_redraws = 100;
  /// Hard cap on evaluations including the start; 0 = schedule only.
  std::uint64_t max_evaluations = 0;
};

struct AnnealReport {
  std::uint64_t evaluations = 0;
  std::uint64_t accepted = 0;
  std::uint64_t iterations = 0;
  double best_fitness = 0.0;
  LinkAllocation best_allocation{2};
  double best_latency = 0.0;
  double best_power = 0.0;
};

/// Single annealing run from a random connected start. Neighbors flip one
/// random link of the current state; disconnected flips are redrawn.
/// Unstable proposals are rejected but still cool the temperature.
AnnealReport simulated_annealing(int n, FitnessWeight w, const AnnealSchedule& schedule,
                                 std::uint64_t seed, const EvaluateFn& evaluate,
                                 ParetoRecorder& recorder,
                                 const AnnealOptions& options = {},
                                 IterationLog* log = nullptr);

/// Annealing run where any of the schedule parameters may be left unset.
/// An unset t_start is the standard deviation of fitness over up to 50
/// random connected allocations (their evaluations come out of the budget);
/// an unset t_end is 1e-3 * t_start; an unset lambda spends the remaining
/// budget.
struct AnnealRunConfig {
  std::uint64_t budget = 10'000;
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::optional<double> lambda;
  CompareMode compare = CompareMode::kBest;
};

inline constexpr int kTemperatureSamples = 50;

AnnealReport run_anneal(int n, FitnessWeight w, const AnnealRunConfig& config,
                        std::uint64_t seed, const EvaluateFn& evaluate,
                        ParetoRecorder& recorder, IterationLog* log = nullptr);

/// 0.1, 0.2, ..., 1.0
std::vector<double> default_weights();

struct SweepRun {
  double weight = 1.0;
  std::uint64_t seed = 0;
  ParetoRecorder recorder;
  AnnealReport report;
  IterationLog log;
};

struct SweepResult {
  ParetoRecorder merged;
  std::vector<SweepRun> runs;
};

/// Seed of sweep run `index`.
std::uint64_t sweep_run_seed(std::uint64_t seed, std::size_t index);

/// One annealing run per weight, up to `jobs` at a time, merged in weight
/// order. `evaluate` must be thread-safe when jobs > 1.
SweepResult weight_sweep(int n, const std::vector<double>& weights,
                         const AnnealRunConfig& config, std::uint64_t seed,
                         const EvaluateFn& evaluate, int jobs = 1,
                         bool keep_logs = false);

/// Largest link count the exhaustive oracle accepts.
inline constexpr std::size_t kOracleMaxLinks = 22;

struct OracleReport {
  ParetoRecorder recorder;
  std::uint64_t total = 0;
  std::uint64_t connected = 0;
  std::uint64_t stable = 0;
};

/// Evaluates every connected allocation. Throws ErrorKind::kDomain when
/// num_links(n) > kOracleMaxLinks.
OracleReport exhaustive_oracle(int n, const EvaluateFn& evaluate, int jobs = 1);

}  // namespace nocpareto

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
#include <functional>
#include <memory>

#include "nocpareto/layout.hpp"
#include "nocpareto/netsim.hpp"
#include "nocpareto/power.hpp"

namespace nocpareto {

/// Maps a connected allocation to a SimResult with power filled in.
using EvaluateFn = std::function<SimResult(const LinkAllocation&)>;

struct EvaluatorConfig {
  TiledLayout layout;
  TrafficConfig traffic{};
  RouterParams router{};
  PowerParams power{};
  std::uint64_t base_seed = 1;
};

/// Simulation + power model with a fixed seed set. Since the result is a
/// pure function of the allocation, results are memoized; the cache is
/// shared by copies and safe to use from several threads.
class Evaluator {
 public:
  explicit Evaluator(EvaluatorConfig config);

  SimResult operator()(const LinkAllocation& a) const;

  /// Uncached evaluation.
  SimResult compute(const LinkAllocation& a) const;

  const EvaluatorConfig& config() const noexcept { return config_; }

  /// Distinct allocations simulated so far.
  std::uint64_t simulations() const;
  /// Calls to operator(), cache hits included.
  std::uint64_t requests() const;

 private:
  struct Cache;
  EvaluatorConfig config_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace nocpareto

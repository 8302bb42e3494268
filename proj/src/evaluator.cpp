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

#include "nocpareto/evaluator.hpp"

#include <mutex>
#include <unordered_map>

#include "nocpareto/network.hpp"

namespace nocpareto {

struct Evaluator::Cache {
  std::mutex mu;
  std::unordered_map<LinkAllocation, SimResult, LinkAllocationHash> results;
  std::uint64_t requests = 0;
};

Evaluator::Evaluator(EvaluatorConfig config)
    : config_(std::move(config)), cache_(std::make_shared<Cache>()) {
  config_.traffic.validate();
  config_.router.validate();
  config_.power.validate();
}

SimResult Evaluator::compute(const LinkAllocation& a) const {
  const NetworkInstance net(a, config_.layout);
  SimResult res = evaluate(net, config_.traffic, config_.router, config_.base_seed);
  if (res.stable) {
    res.power_watts = estimate_power(res.counters, net, config_.power, res.measured_cycles);
  } else {
    res.power_watts = static_power(net, config_.power);
  }
  return res;
}

SimResult Evaluator::operator()(const LinkAllocation& a) const {
  {
    std::lock_guard lock(cache_->mu);
    ++cache_->requests;
    if (auto it = cache_->results.find(a); it != cache_->results.end()) {
      return it->second;
    }
  }
  SimResult res = compute(a);
  std::lock_guard lock(cache_->mu);
  return cache_->results.try_emplace(a, std::move(res)).first->second;
}

std::uint64_t Evaluator::simulations() const {
  std::lock_guard lock(cache_->mu);
  return cache_->results.size();
}

std::uint64_t Evaluator::requests() const {
  std::lock_guard lock(cache_->mu);
  return cache_->requests;
}

}  // namespace nocpareto

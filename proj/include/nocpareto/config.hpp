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
#include <string_view>
#include <utility>
#include <vector>

#include "nocpareto/evaluator.hpp"
#include "nocpareto/optimize.hpp"

namespace nocpareto {

/// Everything a CLI run needs. Parsed from flat `key = value` files with
/// dotted sections (`power.e_crossbar = 1e-11`), `//` or `#` comments, and an
/// optional trailing `;` per line.
struct RunConfig {
  int routers = 16;
  std::optional<std::pair<int, int>> grid;  // rows, cols
  double chip_width_mm = kDefaultChipMm;
  double chip_height_mm = kDefaultChipMm;
  double cycles_per_mm = kDefaultCyclesPerMm;
  TrafficConfig traffic;
  RouterParams router;
  PowerParams power;
  AnnealRunConfig anneal;
  std::vector<double> weights = default_weights();
  std::uint64_t seed = 1;       // optimizer randomness
  std::uint64_t eval_seed = 1;  // evaluator replication seeds

  TiledLayout layout() const;
  EvaluatorConfig evaluator_config() const;
  /// Throws Error on any module invariant violation.
  void validate() const;
};

/// Applies one setting. Unknown keys and malformed values throw
/// ErrorKind::kParse.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Every key with its current value, in the file format.
std::string dump_config(const RunConfig& config);

std::vector<double> parse_weights(std::string_view text);

}  // namespace nocpareto

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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nocpareto/netsim.hpp"
#include "nocpareto/topology.hpp"

namespace nocpareto {

struct RecordSource {
  std::string algorithm;          // random | greedy | anneal | oracle | eval
  std::optional<double> weight;   // anneal only
  std::uint64_t seed = 0;

  friend bool operator==(const RecordSource&, const RecordSource&) = default;
  friend auto operator<=>(const RecordSource&, const RecordSource&) = default;
};

struct ParetoRecord {
  int power_bin = 0;
  double best_latency_cycles = 0.0;
  LinkAllocation allocation{2};
  RecordSource source;

  friend bool operator==(const ParetoRecord&, const ParetoRecord&) = default;
};

struct ParetoPoint {
  double power = 0.0;
  double latency = 0.0;
};

/// p is no worse in both objectives and strictly better in at least one.
bool dominates(const ParetoPoint& p, const ParetoPoint& q);

/// Minimum latency per integer-watt bin. Dominated bins are kept; the front
/// is computed on demand.
class ParetoRecorder {
 public:
  /// Bins result.power_watts and keeps the lower latency; ties keep the
  /// incumbent. Throws ErrorKind::kRejectedInput for unstable results.
  bool record(const SimResult& result, const RecordSource& source);
  bool record(const ParetoRecord& rec);

  const std::map<int, ParetoRecord>& bins() const noexcept { return bins_; }
  std::size_t size() const noexcept { return bins_.size(); }
  bool empty() const noexcept { return bins_.empty(); }

  friend bool operator==(const ParetoRecorder&, const ParetoRecorder&) = default;
  friend ParetoRecorder merge(const ParetoRecorder& a, const ParetoRecorder& b);

 private:
  std::map<int, ParetoRecord> bins_;
};

/// Per-bin minimum of both sides. Equal latencies are resolved by a total
/// order on (allocation, source) so the result does not depend on argument
/// order.
ParetoRecorder merge(const ParetoRecorder& a, const ParetoRecorder& b);

/// Non-dominated records, power ascending, latency strictly decreasing.
std::vector<ParetoRecord> front(const ParetoRecorder& rec);

inline constexpr const char* kRecordCsvHeader =
    "power_bin,latency_cycles,links,allocation,algorithm,weight,seed";

std::string format_weight(const std::optional<double>& w);

void write_records_csv(std::ostream& os, const std::vector<ParetoRecord>& records);
void write_records_csv(std::ostream& os, const ParetoRecorder& rec);
ParetoRecorder read_records_csv(std::istream& is);

/// Scatter of every bin with the front drawn as a polyline.
std::string front_svg(const ParetoRecorder& rec, const std::string& title);

}  // namespace nocpareto

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

#include "nocpareto/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "nocpareto/error.hpp"
#include "nocpareto/power.hpp"

namespace nocpareto {

bool dominates(const ParetoPoint& p, const ParetoPoint& q) {
  return p.power <= q.power && p.latency <= q.latency &&
         (p.power < q.power || p.latency < q.latency);
}

bool ParetoRecorder::record(const SimResult& result, const RecordSource& source) {
  if (!result.stable) {
    throw Error(ErrorKind::kRejectedInput, "cannot record an unstable result");
  }
  return record(ParetoRecord{power_bin(result.power_watts), result.avg_latency_cycles,
                             result.allocation, source});
}

bool ParetoRecorder::record(const ParetoRecord& rec) {
  if (!(rec.best_latency_cycles > 0.0) || !std::isfinite(rec.best_latency_cycles)) {
    throw Error(ErrorKind::kRejectedInput,
                fmt::format("record latency must be positive and finite, got {}",
                            rec.best_latency_cycles));
  }
  auto [it, inserted] = bins_.try_emplace(rec.power_bin, rec);
  if (inserted) return true;
  if (rec.best_latency_cycles < it->second.best_latency_cycles) {
    it->second = rec;
    return true;
  }
  return false;
}

namespace {

bool preferred(const ParetoRecord& a, const ParetoRecord& b) {
  if (a.best_latency_cycles != b.best_latency_cycles) {
    return a.best_latency_cycles < b.best_latency_cycles;
  }
  if (a.allocation != b.allocation) return a.allocation < b.allocation;
  return a.source <= b.source;
}

}  // namespace

ParetoRecorder merge(const ParetoRecorder& a, const ParetoRecorder& b) {
  ParetoRecorder out = a;
  for (const auto& [bin, rec] : b.bins_) {
    auto [it, inserted] = out.bins_.try_emplace(bin, rec);
    if (!inserted && preferred(rec, it->second)) it->second = rec;
  }
  return out;
}

std::vector<ParetoRecord> front(const ParetoRecorder& rec) {
  std::vector<ParetoRecord> out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [bin, r] : rec.bins()) {
    if (r.best_latency_cycles < best) {
      out.push_back(r);
      best = r.best_latency_cycles;
    }
  }
  return out;
}

std::string format_weight(const std::optional<double>& w) {
  return w ? fmt::format("{:.2f}", *w) : std::string{};
}

void write_records_csv(std::ostream& os, const std::vector<ParetoRecord>& records) {
  os << kRecordCsvHeader << '\n';
  for (const auto& r : records) {
    os << fmt::format("{},{:.6f},{},{},{},{},{}\n", r.power_bin,
                      r.best_latency_cycles, r.allocation.link_count(),
                      r.allocation.to_string(), r.source.algorithm,
                      format_weight(r.source.weight), r.source.seed);
  }
}

void write_records_csv(std::ostream& os, const ParetoRecorder& rec) {
  std::vector<ParetoRecord> all;
  all.reserve(rec.size());
  for (const auto& [bin, r] : rec.bins()) all.push_back(r);
  write_records_csv(os, all);
}

ParetoRecorder read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kRecordCsvHeader) {
    throw Error(ErrorKind::kParse, "records CSV header mismatch");
  }
  ParetoRecorder rec;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() != 7) {
      throw Error(ErrorKind::kParse, fmt::format("bad records row '{}'", line));
    }
    try {
      ParetoRecord r;
      r.power_bin = std::stoi(cols[0]);
      r.best_latency_cycles = std::stod(cols[1]);
      r.allocation = LinkAllocation::from_bit_string(cols[3]);
      r.source.algorithm = cols[4];
      if (!cols[5].empty()) r.source.weight = std::stod(cols[5]);
      r.source.seed = std::stoull(cols[6]);
      rec.record(r);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kParse, fmt::format("bad records row '{}'", line));
    }
  }
  return rec;
}

std::string front_svg(const ParetoRecorder& rec, const std::string& title) {
  constexpr double kW = 640, kH = 420, kL = 60, kR = 20, kT = 40, kB = 50;
  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
      kW, kH, kL, title);
  if (rec.empty()) {
    svg << "</svg>\n";
    return svg.str();
  }
  double pmin = rec.bins().begin()->first, pmax = rec.bins().rbegin()->first;
  double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
  for (const auto& [bin, r] : rec.bins()) {
    lmin = std::min(lmin, r.best_latency_cycles);
    lmax = std::max(lmax, r.best_latency_cycles);
  }
  if (pmax == pmin) pmax = pmin + 1;
  if (lmax == lmin) lmax = lmin + 1;
  auto x = [&](double p) { return kL + (p - pmin) / (pmax - pmin) * (kW - kL - kR); };
  auto y = [&](double l) { return kH - kB - (l - lmin) / (lmax - lmin) * (kH - kT - kB); };

  svg << fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{3}\" x2=\"{0}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<text x=\"{4}\" y=\"{5}\" font-family=\"sans-serif\" font-size=\"12\">power (W): {6} .. {7}</text>\n"
      "<text x=\"8\" y=\"{3}\" font-family=\"sans-serif\" font-size=\"12\">latency (cycles): {8:.2f} .. {9:.2f}</text>\n",
      kL, kH - kB, kW - kR, kT - 10, kL, kH - 15, pmin, pmax, lmin, lmax);
  for (const auto& [bin, r] : rec.bins()) {
    svg << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"gray\"/>\n",
                       x(bin), y(r.best_latency_cycles));
  }
  svg << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" points=\"";
  for (const auto& r : front(rec)) {
    svg << fmt::format("{:.2f},{:.2f} ", x(r.power_bin), y(r.best_latency_cycles));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace nocpareto

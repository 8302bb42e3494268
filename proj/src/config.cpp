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

#include "nocpareto/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::kParse, fmt::format("bad value '{}' for key '{}'", value, key));
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  // from_chars for double is unavailable on older libstdc++.
  const std::string s(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
  if (used != s.size() || !std::isfinite(out)) bad_value(key, value);
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void require_literal(std::string_view key, std::string_view value,
                     std::string_view expected) {
  if (value != expected) {
    throw Error(ErrorKind::kParse,
                fmt::format("{} = {} is not supported; only {}", key, value, expected));
  }
}

}  // namespace

std::vector<double> parse_weights(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) {
    if (part.empty()) continue;
    out.push_back(to_double("weights", part));
  }
  if (out.empty()) {
    throw Error(ErrorKind::kParse, "weights list is empty");
  }
  for (double w : out) FitnessWeight{w};
  return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "routers") {
    c.routers = to_int<int>(key, value);
  } else if (key == "grid") {
    const auto x = value.find_first_of("xX");
    if (x == std::string_view::npos) bad_value(key, value);
    c.grid = {to_int<int>(key, trim(value.substr(0, x))),
              to_int<int>(key, trim(value.substr(x + 1)))};
  } else if (key == "chip_mm") {
    const auto parts = split(value, ',');
    if (parts.size() == 1) {
      c.chip_width_mm = c.chip_height_mm = to_double(key, parts[0]);
    } else if (parts.size() == 2) {
      c.chip_width_mm = to_double(key, parts[0]);
      c.chip_height_mm = to_double(key, parts[1]);
    } else {
      bad_value(key, value);
    }
  } else if (key == "cycles_per_mm") {
    c.cycles_per_mm = to_double(key, value);
  } else if (key == "topology") {
    require_literal(key, value, "anynet");
  } else if (key == "routing_function") {
    require_literal(key, value, "min");
  } else if (key == "traffic") {
    require_literal(key, value, "uniform");
  } else if (key == "injection_rate") {
    c.traffic.injection_rate = to_double(key, value);
  } else if (key == "sample_period") {
    c.traffic.sample_period_cycles = to_int<int>(key, value);
  } else if (key == "warmup") {
    c.traffic.warmup_cycles = to_int<int>(key, value);
  } else if (key == "max_drain") {
    c.traffic.max_drain_cycles = to_int<int>(key, value);
  } else if (key == "packet_size") {
    c.traffic.packet_size_flits = to_int<int>(key, value);
  } else if (key == "buffer_depth") {
    c.router.buffer_depth_flits = to_int<int>(key, value);
  } else if (key == "router_pipeline") {
    c.router.router_pipeline_cycles = to_int<int>(key, value);
  } else if (key == "watchdog") {
    c.router.deadlock_watchdog_cycles = to_int<int>(key, value);
  } else if (key == "power.clock_hz") {
    c.power.clock_hz = to_double(key, value);
  } else if (key == "power.e_buffer_write") {
    c.power.e_buffer_write = to_double(key, value);
  } else if (key == "power.e_crossbar") {
    c.power.e_crossbar = to_double(key, value);
  } else if (key == "power.e_link_per_mm") {
    c.power.e_link_per_mm = to_double(key, value);
  } else if (key == "power.p_static_router") {
    c.power.p_static_router = to_double(key, value);
  } else if (key == "power.p_static_link_per_mm") {
    c.power.p_static_link_per_mm = to_double(key, value);
  } else if (key == "anneal.t_start") {
    c.anneal.t_start = value == "auto" ? std::nullopt : std::optional(to_double(key, value));
  } else if (key == "anneal.t_end") {
    c.anneal.t_end = value == "auto" ? std::nullopt : std::optional(to_double(key, value));
  } else if (key == "anneal.lambda") {
    c.anneal.lambda = value == "auto" ? std::nullopt : std::optional(to_double(key, value));
  } else if (key == "anneal.budget") {
    c.anneal.budget = to_int<std::uint64_t>(key, value);
  } else if (key == "anneal.compare") {
    c.anneal.compare = parse_compare_mode(std::string(value));
  } else if (key == "weights") {
    c.weights = parse_weights(value);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "eval_seed") {
    c.eval_seed = to_int<std::uint64_t>(key, value);
  } else {
    throw Error(ErrorKind::kParse, fmt::format("unknown config key '{}'", key));
  }
}

RunConfig parse_config(std::istream& is, RunConfig base) {
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    for (std::string_view marker : {"//", "#"}) {
      if (const auto pos = line.find(marker); pos != std::string_view::npos) {
        line = line.substr(0, pos);
      }
    }
    line = trim(line);
    if (!line.empty() && line.back() == ';') line = trim(line.substr(0, line.size() - 1));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: expected key = value, got '{}'", line_no, line));
    }
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse, fmt::format("cannot open config '{}'", path));
  }
  return parse_config(in, std::move(base));
}

TiledLayout RunConfig::layout() const {
  if (grid) {
    return TiledLayout(routers, grid->first, grid->second, chip_width_mm,
                       chip_height_mm, cycles_per_mm);
  }
  return TiledLayout::for_routers(routers, chip_width_mm, chip_height_mm,
                                  cycles_per_mm);
}

EvaluatorConfig RunConfig::evaluator_config() const {
  return EvaluatorConfig{layout(), traffic, router, power, eval_seed};
}

void RunConfig::validate() const {
  (void)layout();
  traffic.validate();
  router.validate();
  power.validate();
  for (double w : weights) FitnessWeight{w};
  if (anneal.budget < 1) {
    throw Error(ErrorKind::kDomain, "anneal.budget must be >= 1");
  }
  if (anneal.lambda && !(*anneal.lambda > 0.0 && *anneal.lambda < 1.0)) {
    throw Error(ErrorKind::kDomain, "anneal.lambda must be in (0, 1)");
  }
  if (anneal.t_start && !(*anneal.t_start > 0.0)) {
    throw Error(ErrorKind::kDomain, "anneal.t_start must be positive");
  }
  if (anneal.t_end && !(*anneal.t_end > 0.0)) {
    throw Error(ErrorKind::kDomain, "anneal.t_end must be positive");
  }
  if (anneal.t_start && anneal.t_end && !(*anneal.t_start > *anneal.t_end)) {
    throw Error(ErrorKind::kDomain, "anneal.t_start must exceed anneal.t_end");
  }
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{}", *v) : std::string("auto");
  };
  const TiledLayout lay = c.layout();
  os << "// simulation setup\n"
     << "topology = anynet\n"
     << "routing_function = min\n"
     << "traffic = uniform\n"
     << fmt::format("routers = {}\n", c.routers)
     << fmt::format("grid = {}x{}\n", lay.grid_rows(), lay.grid_cols())
     << fmt::format("chip_mm = {},{}\n", c.chip_width_mm, c.chip_height_mm)
     << fmt::format("cycles_per_mm = {}\n", c.cycles_per_mm)
     << fmt::format("injection_rate = {}\n", c.traffic.injection_rate)
     << fmt::format("sample_period = {}\n", c.traffic.sample_period_cycles)
     << fmt::format("warmup = {}\n", c.traffic.warmup_cycles)
     << fmt::format("max_drain = {}\n", c.traffic.max_drain_cycles)
     << fmt::format("packet_size = {}\n", c.traffic.packet_size_flits)
     << fmt::format("buffer_depth = {}\n", c.router.buffer_depth_flits)
     << fmt::format("router_pipeline = {}\n", c.router.router_pipeline_cycles)
     << fmt::format("watchdog = {}\n", c.router.deadlock_watchdog_cycles)
     << fmt::format("power.clock_hz = {}\n", c.power.clock_hz)
     << fmt::format("power.e_buffer_write = {}\n", c.power.e_buffer_write)
     << fmt::format("power.e_crossbar = {}\n", c.power.e_crossbar)
     << fmt::format("power.e_link_per_mm = {}\n", c.power.e_link_per_mm)
     << fmt::format("power.p_static_router = {}\n", c.power.p_static_router)
     << fmt::format("power.p_static_link_per_mm = {}\n", c.power.p_static_link_per_mm)
     << fmt::format("// anneal.t_start/t_end/lambda: auto = self-scaled\n")
     << fmt::format("anneal.t_start = {}\n", opt(c.anneal.t_start))
     << fmt::format("anneal.t_end = {}\n", opt(c.anneal.t_end))
     << fmt::format("anneal.lambda = {}\n", opt(c.anneal.lambda))
     << fmt::format("anneal.budget = {}\n", c.anneal.budget)
     << fmt::format("anneal.compare = {}\n", to_string(c.anneal.compare));
  os << "weights = ";
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    os << (i ? "," : "") << format_weight(c.weights[i]);
  }
  os << '\n'
     << fmt::format("seed = {}\n", c.seed)
     << fmt::format("eval_seed = {}\n", c.eval_seed);
  return os.str();
}

}  // namespace nocpareto

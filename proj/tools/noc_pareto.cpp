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

// noc-pareto: evaluate link allocations, run the optimizers, and emit
// per-power-bin latency records and Pareto fronts.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "nocpareto/config.hpp"
#include "nocpareto/error.hpp"
#include "nocpareto/evaluator.hpp"
#include "nocpareto/network.hpp"
#include "nocpareto/optimize.hpp"
#include "nocpareto/pareto.hpp"
#include "nocpareto/topo_report.hpp"

namespace fs = std::filesystem;
using namespace nocpareto;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitInternal = 4;

struct CommonOptions {
  std::string config_path;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  int jobs = 1;
  std::string out = ".";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key = value config file");
  cmd->add_option("--n", o.n, "router count");
  cmd->add_option("--seed", o.seed, "optimizer seed");
  cmd->add_option("--budget", o.budget, "evaluation budget (random, anneal per weight)");
  cmd->add_option("--jobs", o.jobs, "concurrent runs")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig resolve(const CommonOptions& o) {
  RunConfig c;
  if (!o.config_path.empty()) c = load_config(o.config_path);
  if (o.n) {
    c.routers = *o.n;
    c.grid.reset();
  }
  if (o.seed) c.seed = *o.seed;
  if (o.budget) c.anneal.budget = *o.budget;
  c.validate();
  return c;
}

LinkAllocation resolve_allocation(const std::string& text, const RunConfig& c) {
  if (text == "mesh") return grid_mesh_allocation(c.layout());
  if (text == "full") return fully_connected_allocation(c.routers);
  LinkAllocation a = LinkAllocation::parse(text);
  if (a.n_routers() != c.routers) {
    throw Error(ErrorKind::kParse,
                fmt::format("allocation describes {} routers, config has {}",
                            a.n_routers(), c.routers));
  }
  return a;
}

fs::path out_dir(const CommonOptions& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_outputs(const fs::path& dir, const ParetoRecorder& rec, const std::string& title) {
  {
    std::ofstream f(dir / "records.csv", std::ios::binary);
    write_records_csv(f, rec);
  }
  {
    std::ofstream f(dir / "front.csv", std::ios::binary);
    write_records_csv(f, front(rec));
  }
  write_file(dir / "front.svg", front_svg(rec, title));
}

void print_front(const ParetoRecorder& rec) {
  fmt::print("front ({} of {} bins):\n", front(rec).size(), rec.size());
  for (const auto& r : front(rec)) {
    fmt::print("  {:>5} W  {:>10.4f} cycles  {} links  [{}{}]\n", r.power_bin,
               r.best_latency_cycles, r.allocation.link_count(), r.source.algorithm,
               r.source.weight ? " w=" + format_weight(r.source.weight) : "");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_evaluate(const CommonOptions& o, const std::string& alloc_text,
                 const std::string& routing_csv) {
  const RunConfig c = resolve(o);
  const LinkAllocation a = resolve_allocation(alloc_text, c);
  if (!is_connected(a)) {
    fmt::print(stderr, "error: allocation is disconnected\n");
    return kExitUsage;
  }
  const NetworkInstance net(a, c.layout());
  const Evaluator eval(c.evaluator_config());
  const SimResult res = eval.compute(a);

  int max_hops = 0;
  for (RouterId s = 0; s < net.n_routers(); ++s) {
    for (RouterId d = 0; d < net.n_routers(); ++d) {
      max_hops = std::max(max_hops, net.routing().hop_count(s, d));
    }
  }
  fmt::print("allocation: {}\n", a.to_string());
  fmt::print("routers: {}\nlinks: {}\n", a.n_routers(), a.link_count());
  fmt::print("stable: {}\nruns_used: {}\n", res.stable ? "true" : "false", res.runs_used);
  if (res.stable) {
    fmt::print("latency_cycles: {:.6f}\n", res.avg_latency_cycles);
    fmt::print("power_watts: {:.6f}\npower_bin: {}\n", res.power_watts,
               power_bin(res.power_watts));
  } else {
    fmt::print("static_power_watts: {:.6f}\n", res.power_watts);
  }
  fmt::print("zero_load_latency: {:.6f}\n", zero_load_latency(net, c.router));
  fmt::print("avg_hop_count: {:.6f}\nmax_hop_count: {}\n",
             average_hop_count(net.routing()), max_hops);
  if (!routing_csv.empty()) {
    std::ofstream f(routing_csv, std::ios::binary);
    write_routing_csv(f, net.routing());
  }
  return res.stable ? kExitOk : kExitUnstable;
}

int cmd_optimize(const CommonOptions& o, const std::string& algo, std::optional<double> weight) {
  RunConfig c = resolve(o);
  if (algo != "random" && algo != "greedy" && algo != "anneal") {
    fmt::print(stderr, "error: unknown algorithm '{}' (random | greedy | anneal)\n", algo);
    return kExitUsage;
  }
  const FitnessWeight w(weight.value_or(1.0));
  const Evaluator eval(c.evaluator_config());
  const fs::path dir = out_dir(o);
  const auto t0 = std::chrono::steady_clock::now();

  ParetoRecorder rec;
  IterationLog log;
  std::uint64_t evaluations = 0;
  if (algo == "random") {
    evaluations = random_search(c.routers, c.anneal.budget, c.seed, eval, rec, &log).evaluations;
  } else if (algo == "greedy") {
    const GreedyReport g = special_greedy(c.routers, eval, rec, &log);
    evaluations = g.neighbor_evaluations;
    fmt::print("greedy: {} neighbor evaluations ({} by formula), stopped at {} links ({})\n",
               g.neighbor_evaluations, greedy_eval_count(c.routers),
               g.final_allocation.link_count(),
               g.stop == GreedyStop::kSpanningTree ? "spanning tree" : "no stable neighbor");
  } else {
    const AnnealReport r = run_anneal(c.routers, w, c.anneal, c.seed, eval, rec, &log);
    evaluations = r.evaluations;
    fmt::print("anneal: weight {} best E {:.6f} ({} accepted of {} iterations)\n",
               format_weight(w.value()), r.best_fitness, r.accepted, r.iterations);
  }
  write_outputs(dir, rec, fmt::format("{} n={}", algo, c.routers));
  {
    std::ofstream f(dir / "run.log", std::ios::binary);
    write_iteration_log(f, log);
  }
  fmt::print("evaluations: {}\nsimulated: {}\nwall_seconds: {:.2f}\n", evaluations,
             eval.simulations(), seconds_since(t0));
  print_front(rec);
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o, const std::string& weights_text) {
  RunConfig c = resolve(o);
  if (!weights_text.empty()) c.weights = parse_weights(weights_text);
  const Evaluator eval(c.evaluator_config());
  const fs::path dir = out_dir(o);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult sweep =
      weight_sweep(c.routers, c.weights, c.anneal, c.seed, eval, o.jobs, true);
  write_outputs(dir, sweep.merged, fmt::format("weight sweep n={}", c.routers));
  {
    std::ofstream f(dir / "run.log", std::ios::binary);
    for (const auto& run : sweep.runs) {
      f << fmt::format("# weight={} seed={} evaluations={}\n", format_weight(run.weight),
                       run.seed, run.report.evaluations);
      write_iteration_log(f, run.log);
    }
  }
  for (const auto& run : sweep.runs) {
    fmt::print("weight {}: best E {:.6f}, {} evaluations, {} bins\n",
               format_weight(run.weight), run.report.best_fitness, run.report.evaluations,
               run.recorder.size());
  }
  fmt::print("simulated: {}\nwall_seconds: {:.2f}\n", eval.simulations(), seconds_since(t0));
  print_front(sweep.merged);
  return kExitOk;
}

int cmd_oracle(const CommonOptions& o) {
  const RunConfig c = resolve(o);
  if (num_links(c.routers) > kOracleMaxLinks) {
    fmt::print(stderr, "error: n={} has {} allocations; the oracle stops at {} links\n",
               c.routers, combination_count(c.routers).str(), kOracleMaxLinks);
    return kExitUsage;
  }
  const Evaluator eval(c.evaluator_config());
  const fs::path dir = out_dir(o);
  const auto t0 = std::chrono::steady_clock::now();
  const OracleReport r = exhaustive_oracle(c.routers, eval, o.jobs);
  write_outputs(dir, r.recorder, fmt::format("exhaustive n={}", c.routers));
  fmt::print("allocations: {}\nconnected: {}\nstable: {}\nwall_seconds: {:.2f}\n", r.total,
             r.connected, r.stable, seconds_since(t0));
  print_front(r.recorder);
  return kExitOk;
}

int cmd_topo(const CommonOptions& o, const std::string& alloc_text) {
  const RunConfig c = resolve(o);
  const LinkAllocation a = resolve_allocation(alloc_text, c);
  const TiledLayout lay = c.layout();
  fmt::print("routers: {}\ngrid: {}x{}\nlinks: {}\nconnected: {}\n", a.n_routers(),
             lay.grid_rows(), lay.grid_cols(), a.link_count(),
             is_connected(a) ? "true" : "false");
  write_link_table(std::cout, a, lay);
  fmt::print("histogram (inter-router distances -> links):\n");
  for (const auto& [dist, count] : link_length_histogram(a, lay)) {
    fmt::print("  {}: {}\n", dist, count);
  }
  const MeshDiff diff = mesh_diff(a, lay);
  fmt::print("mesh_common: {}\nmesh_extra: {}\nmesh_missing: {}\n", diff.common.size(),
             diff.extra.size(), diff.missing.size());
  write_file(out_dir(o) / "topo.svg", topology_svg(a, lay));
  return kExitOk;
}

int cmd_config(const CommonOptions& o, bool defaults) {
  const RunConfig c = defaults ? RunConfig{} : resolve(o);
  std::cout << dump_config(c);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-on-chip link allocation search with Pareto fronts"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string alloc_text, routing_csv, algo, weights_text;
  std::optional<double> weight;
  bool defaults = false;

  auto* evaluate = app.add_subcommand("evaluate", "simulate one allocation");
  add_common(evaluate, opts);
  evaluate->add_option("allocation", alloc_text, "0/1 string, n=<n>;bits=<hex>, mesh or full")
      ->required();
  evaluate->add_option("--dump-routing", routing_csv, "write the routing table as CSV");

  auto* optimize = app.add_subcommand("optimize", "run one search algorithm");
  add_common(optimize, opts);
  optimize->add_option("--algo", algo, "random | greedy | anneal")->required();
  optimize->add_option("--weight", weight, "annealing latency weight in (0, 1]");

  auto* sweep = app.add_subcommand("sweep", "annealing weight sweep merged into one front");
  add_common(sweep, opts);
  sweep->add_option("--weights", weights_text, "comma separated weights");

  auto* oracle = app.add_subcommand("oracle", "exhaustively evaluate every connected allocation");
  add_common(oracle, opts);

  auto* topo = app.add_subcommand("topo", "describe an allocation on the die");
  add_common(topo, opts);
  topo->add_option("allocation", alloc_text, "0/1 string, n=<n>;bits=<hex>, mesh or full")
      ->required();

  auto* config = app.add_subcommand("config", "print the effective configuration");
  add_common(config, opts);
  config->add_flag("--defaults", defaults, "print built-in defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(opts, alloc_text, routing_csv);
    if (*optimize) return cmd_optimize(opts, algo, weight);
    if (*sweep) return cmd_sweep(opts, weights_text);
    if (*oracle) return cmd_oracle(opts);
    if (*topo) return cmd_topo(opts, alloc_text);
    if (*config) return cmd_config(opts, defaults);
  } catch (const Error& e) {
    fmt::print(stderr, "error ({}): {}\n", to_string(e.kind()), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}

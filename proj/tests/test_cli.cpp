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

#include <vector>

#include "cli_runner.hpp"
#include "doctest.h"
#include "nocpareto/topology.hpp"

using namespace nocpareto;
using namespace nocpareto::testing;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string field(const std::string& output, const std::string& key) {
  const auto pos = output.find(key + ": ");
  if (pos == std::string::npos) return {};
  const auto start = pos + key.size() + 2;
  return output.substr(start, output.find('\n', start) - start);
}

}  // namespace

TEST_CASE("evaluate") {
  const CliResult mesh = run_cli("evaluate --n 16 mesh");
  CHECK(mesh.exit_code == 0);
  CHECK(field(mesh.output, "stable") == "true");
  CHECK(std::stod(field(mesh.output, "latency_cycles")) >= 19.0 / 3.0);
  CHECK(std::stod(field(mesh.output, "zero_load_latency")) == doctest::Approx(19.0 / 3.0));

  const CliResult full = run_cli("evaluate --n 4 full");
  CHECK(full.exit_code == 0);
  CHECK(field(full.output, "allocation") == "111111");
  // Hex and bit-string spellings parse to the same network.
  const CliResult hex = run_cli("evaluate --n 4 'n=4;bits=3f'");
  CHECK(hex.exit_code == 0);
  CHECK(hex.output == full.output);

  const fs::path dir = scratch_dir("routing");
  CHECK(run_cli("evaluate --n 4 101101 --dump-routing " + (dir / "r.csv").string()).exit_code == 0);
  const auto rows = csv_rows(read_file(dir / "r.csv"));
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == std::vector<std::string>{"src", "dst", "hops", "next_hop"});
  fs::remove_all(dir);
}

TEST_CASE("evaluate rejects bad input") {
  CHECK(run_cli("evaluate --n 4 10110").exit_code == 2);
  CHECK(run_cli("evaluate --n 4 1011011").exit_code == 2);
  CHECK(run_cli("evaluate --n 4 10x101").exit_code == 2);
  const CliResult split = run_cli("evaluate --n 4 100001");
  CHECK(split.exit_code == 2);
  CHECK(split.output.find("disconnected") != std::string::npos);
  CHECK(run_cli("evaluate --n 4").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("evaluate reports an unstable network with exit code 3") {
  LinkAllocation ring(8);
  for (int i = 0; i < 8; ++i) ring.set(link_index(std::min(i, (i + 1) % 8), std::max(i, (i + 1) % 8), 8), true);
  const fs::path dir = scratch_dir("unstable");
  {
    std::ofstream f(dir / "hot.cfg");
    f << "routers = 8\ninjection_rate = 0.9\n";
  }
  const CliResult r = run_cli("evaluate --config " + (dir / "hot.cfg").string() + " " + ring.to_string());
  CHECK(r.exit_code == 3);
  CHECK(field(r.output, "stable") == "false");
  fs::remove_all(dir);
}

TEST_CASE("optimize greedy writes records and logs") {
  const fs::path dir = scratch_dir("greedy");
  const CliResult r = run_cli("optimize --algo greedy --n 4 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(field(r.output, "evaluations") == "15");
  for (const char* f : {"records.csv", "front.csv", "front.svg", "run.log"}) {
    CHECK(fs::exists(dir / f));
  }
  const auto rows = csv_rows(read_file(dir / "records.csv"));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"power_bin", "latency_cycles", "links", "allocation",
                                            "algorithm", "weight", "seed"});
  // Every emitted allocation is accepted back with identical bits.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CliResult back = run_cli("evaluate --n 4 " + rows[i][3]);
    CHECK(back.exit_code == 0);
    CHECK(field(back.output, "allocation") == rows[i][3]);
    CHECK(rows[i][4] == "greedy");
  }
  CHECK(read_file(dir / "run.log").starts_with("iteration,allocation,latency,power,E,T,accepted\n"));
  fs::remove_all(dir);
}

TEST_CASE("optimize anneal with latency weight one reaches the fully connected latency") {
  const fs::path dir = scratch_dir("anneal");
  const CliResult r =
      run_cli("optimize --algo anneal --weight 1.0 --n 4 --budget 300 --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string full_latency = field(run_cli("evaluate --n 4 full").output, "latency_cycles");
  const auto rows = csv_rows(read_file(dir / "records.csv"));
  double best = 1e9;
  std::string best_alloc;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][1]) < best) {
      best = std::stod(rows[i][1]);
      best_alloc = rows[i][3];
    }
  }
  CHECK(best_alloc == "111111");
  CHECK(best == doctest::Approx(std::stod(full_latency)).epsilon(1e-6));
  fs::remove_all(dir);
}

TEST_CASE("repeated runs are byte identical") {
  const fs::path a = scratch_dir("rep-a"), b = scratch_dir("rep-b");
  for (const std::string args : {"optimize --algo random --n 5 --budget 100 --seed 3",
                                 "optimize --algo anneal --weight 0.4 --n 5 --budget 100"}) {
    CHECK(run_cli(args + " --out " + a.string()).exit_code == 0);
    CHECK(run_cli(args + " --out " + b.string()).exit_code == 0);
    CHECK(read_file(a / "records.csv") == read_file(b / "records.csv"));
    CHECK(read_file(a / "run.log") == read_file(b / "run.log"));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("sweep and oracle") {
  const fs::path dir = scratch_dir("sweep");
  const CliResult s = run_cli("sweep --n 4 --budget 60 --weights 0.2,0.9 --out " + dir.string());
  CHECK(s.exit_code == 0);
  const auto rows = csv_rows(read_file(dir / "records.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][4] == "anneal");
    CHECK((rows[i][5] == "0.20" || rows[i][5] == "0.90"));
  }
  const auto front_rows = csv_rows(read_file(dir / "front.csv"));
  for (std::size_t i = 2; i < front_rows.size(); ++i) {
    CHECK(std::stoi(front_rows[i][0]) > std::stoi(front_rows[i - 1][0]));
    CHECK(std::stod(front_rows[i][1]) < std::stod(front_rows[i - 1][1]));
  }
  CHECK(run_cli("sweep --n 4 --weights 0.5,0").exit_code == 2);
  CHECK(run_cli("optimize --algo anneal --weight 0 --n 4").exit_code == 2);
  CHECK(run_cli("optimize --algo tabu --n 4").exit_code == 2);

  const CliResult o = run_cli("oracle --n 4 --out " + dir.string());
  CHECK(o.exit_code == 0);
  CHECK(o.output.find("38") != std::string::npos);
  const CliResult big = run_cli("oracle --n 8");
  CHECK(big.exit_code == 2);
  CHECK(big.output.find("268435456") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("topo") {
  const fs::path dir = scratch_dir("topo");
  const CliResult full = run_cli("topo --n 4 full --out " + dir.string());
  CHECK(full.exit_code == 0);
  CHECK(field(full.output, "mesh_extra") == "2");
  CHECK(field(full.output, "mesh_missing") == "0");
  CHECK(fs::exists(dir / "topo.svg"));
  const CliResult mesh = run_cli("topo --n 16 mesh");
  CHECK(field(mesh.output, "mesh_common") == "24");
  CHECK(field(mesh.output, "mesh_extra") == "0");
  CHECK(field(mesh.output, "mesh_missing") == "0");
  CHECK(run_cli("topo --n 4 12").exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("config") {
  const CliResult d = run_cli("config --defaults");
  CHECK(d.exit_code == 0);
  const fs::path dir = scratch_dir("cfg");
  {
    std::ofstream f(dir / "dump.cfg");
    f << d.output;
  }
  const CliResult again = run_cli("config --config " + (dir / "dump.cfg").string());
  CHECK(again.exit_code == 0);
  CHECK(again.output == d.output);
  {
    std::ofstream f(dir / "bad.cfg");
    f << "routers = 4\nmystery = 1\n";
  }
  CHECK(run_cli("config --config " + (dir / "bad.cfg").string()).exit_code == 2);
  fs::remove_all(dir);
}

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

#include <sstream>

#include "doctest.h"
#include "nocpareto/config.hpp"
#include "nocpareto/error.hpp"

using namespace nocpareto;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse(text).validate();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ErrorKind::kContract;
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.routers == 16);
  CHECK(c.traffic.injection_rate == 0.1);
  CHECK(c.traffic.sample_period_cycles == 1000);
  CHECK(c.layout().grid_rows() == 4);
  CHECK(c.layout().grid_cols() == 4);
  CHECK(c.layout().chip_width_mm() == 21.0);
  CHECK(c.weights.size() == 10);
  c.validate();
}

TEST_CASE("parsing") {
  const RunConfig c = parse(
      "// comment line\n"
      "topology = anynet;\n"
      "routing_function = min\n"
      "traffic = uniform\n"
      "routers = 6   # trailing comment\n"
      "grid = 2x3\n"
      "chip_mm = 12,9\n"
      "injection_rate = 0.05;\n"
      "sample_period = 500\n"
      "power.e_crossbar = 2e-11\n"
      "anneal.budget = 300\n"
      "anneal.compare = current\n"
      "anneal.t_start = 4.5\n"
      "weights = 0.2, 0.6,1\n"
      "seed = 99\n"
      "\n");
  CHECK(c.routers == 6);
  REQUIRE(c.grid);
  CHECK(c.grid->first == 2);
  CHECK(c.grid->second == 3);
  CHECK(c.chip_width_mm == 12.0);
  CHECK(c.chip_height_mm == 9.0);
  CHECK(c.traffic.injection_rate == 0.05);
  CHECK(c.traffic.sample_period_cycles == 500);
  CHECK(c.power.e_crossbar == 2e-11);
  CHECK(c.anneal.budget == 300);
  CHECK(c.anneal.compare == CompareMode::kCurrent);
  CHECK(c.anneal.t_start == 4.5);
  CHECK_FALSE(c.anneal.lambda);
  CHECK(c.weights == std::vector<double>{0.2, 0.6, 1.0});
  CHECK(c.seed == 99);
  CHECK(c.layout().spacing_x_mm() == 4.0);
  CHECK(parse("chip_mm = 14").chip_height_mm == 14.0);
}

TEST_CASE("rejected settings") {
  CHECK(kind_of("bogus = 1") == ErrorKind::kParse);
  CHECK(kind_of("power.bogus = 1") == ErrorKind::kParse);
  CHECK(kind_of("routers = many") == ErrorKind::kParse);
  CHECK(kind_of("routers = 16 extra") == ErrorKind::kParse);
  CHECK(kind_of("no equals sign") == ErrorKind::kParse);
  CHECK(kind_of("topology = torus") == ErrorKind::kParse);
  CHECK(kind_of("routing_function = xy") == ErrorKind::kParse);
  CHECK(kind_of("traffic = transpose") == ErrorKind::kParse);
  CHECK(kind_of("grid = 4by4") == ErrorKind::kParse);
  CHECK(kind_of("anneal.compare = worst") == ErrorKind::kParse);
  CHECK(kind_of("weights = 0.5,0") == ErrorKind::kInvalidWeight);
  CHECK(kind_of("injection_rate = 1.5") != ErrorKind::kParse);
  CHECK(kind_of("routers = 1") != ErrorKind::kParse);
  CHECK(kind_of("routers = 9\ngrid = 2x2") != ErrorKind::kParse);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), Error);
}

TEST_CASE("dump round trip") {
  RunConfig c = parse("routers = 9\nanneal.lambda = 0.99\nweights = 0.3,0.7\neval_seed = 4\n");
  const std::string text = dump_config(c);
  const RunConfig back = parse(text);
  CHECK(dump_config(back) == text);
  CHECK(back.routers == 9);
  CHECK(back.anneal.lambda == 0.99);
  CHECK_FALSE(back.anneal.t_start);
  CHECK(back.eval_seed == 4);
  CHECK(dump_config(parse(dump_config(RunConfig{}))) == dump_config(RunConfig{}));
}

TEST_CASE("later settings override earlier ones and the base") {
  RunConfig base;
  base.routers = 25;
  std::istringstream is("seed = 3\nseed = 4\n");
  const RunConfig c = parse_config(is, base);
  CHECK(c.routers == 25);
  CHECK(c.seed == 4);
}

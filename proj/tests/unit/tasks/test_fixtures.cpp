// Copyright 2026 The qctrl-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qctrl/tasks/fixtures.hpp"
#include "qctrl/tasks/task.hpp"

using namespace qctrl::tasks;

TEST_CASE("shipped fixture table matches the generator") {
  std::ifstream in(std::string(QCTRL_SOURCE_DIR) + "/data/task_fixtures.tsv");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = parse_fixture_table(ss.str());
  REQUIRE_FALSE(rows.empty());
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows) {
    if (seeds.empty() || seeds.back() != r.seed) seeds.push_back(r.seed);
  }
  CHECK(fixture_table(seeds) == ss.str());
}

TEST_CASE("drawn values feed the tasks") {
  for (std::uint64_t seed : {0ULL, 5ULL}) {
    TaskOverrides ov;
    ov.fixture_seed = seed;
    const auto drift = draw_drift_coefficients(seed);
    const auto v = build_task(5, ov);
    CHECK(v.value("alpha1") == drift[0]);
    CHECK(v.value("beta2") == drift[3]);
    const auto angles = draw_euler_angles(seed);
    const auto x = build_task(10, ov);
    CHECK(x.value("phi") == angles[0]);
    CHECK(angles[0] >= 0.0);
    CHECK(angles[0] < 2 * M_PI);
    CHECK(angles[1] < M_PI);
  }
}

TEST_CASE("unit_uniform range") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = unit_uniform(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("fixture table parsing errors") {
  CHECK_THROWS(parse_fixture_table(""));
  CHECK_THROWS(parse_fixture_table("version\t99\n"));
  CHECK_THROWS(parse_fixture_table("version\t1\ntable\tseed\tkey\tvalue\nbad line\n"));
}

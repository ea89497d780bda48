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

#include <filesystem>
#include <fstream>

#include "qctrl/harness/aggregate.hpp"
#include "qctrl/harness/benchmark.hpp"

using namespace qctrl;
using namespace qctrl::harness;

namespace {

std::string weak_payload() {
  return R"j({"g": {"expression": "a*sin(2*t) + b", "parameters": {"a": 0.3, "b": 0.1}}})j";
}

BenchmarkOptions options(const std::filesystem::path& out) {
  BenchmarkOptions o;
  o.tasks = {1};
  o.config.K = 2;
  o.config.B_opt = 3;
  o.config.repetitions = 2;
  o.config.epsilon = 1e-12;
  o.output_path = out.string();
  agents::ScriptFixture f;
  f.repetitions = {{weak_payload(), weak_payload(), "- note"}};
  o.clients.fixture = f;
  o.clients.fixture_label = "unit";
  return o;
}

}  // namespace

TEST_CASE("scripted benchmark writes header, rows and run records") {
  const auto dir = std::filesystem::temp_directory_path() / "qctrl_bench_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto o = options(dir / "out.jsonl");
  o.clients.transcript_dir = (dir / "tx").string();
  const auto outcome = run_benchmark(o);
  CHECK(outcome.ok());
  CHECK(outcome.runs == 2);
  const auto file = read_result_file(o.output_path);
  CHECK(file.header["config"]["tasks"] == nlohmann::json::array({"I"}));
  CHECK(file.header["config"]["client"]["kind"] == "scripted");
  CHECK_FALSE(file.header["config"].contains("parallelism"));
  CHECK(file.rows.size() == 4);
  CHECK(file.runs.size() == 2);
  CHECK(std::filesystem::exists(dir / "tx" / "transcript-I-rep1.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("an exhausted script is a fault with partial rows") {
  const auto dir = std::filesystem::temp_directory_path() / "qctrl_bench_fault";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto o = options(dir / "out.jsonl");
  o.config.K = 5;
  const auto outcome = run_benchmark(o);
  CHECK_FALSE(outcome.ok());
  CHECK(outcome.faults == 2);
  REQUIRE_FALSE(outcome.messages.empty());
  CHECK(outcome.messages[0].find("exhausted") != std::string::npos);
  const auto file = read_result_file(o.output_path);
  CHECK(file.runs.size() == 2);
  CHECK(file.runs[0]["termination"] == "fault");
  CHECK(file.rows.size() == 6);
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration errors surface before any output") {
  const auto path = std::filesystem::temp_directory_path() / "qctrl_bench_cfg.jsonl";
  std::filesystem::remove(path);
  auto o = options(path);
  o.clients.fixture.reset();
  CHECK_THROWS_AS(run_benchmark(o), std::invalid_argument);
  agents::Endpoint e;
  e.model = "m";
  e.token_env = "QCTRL_TEST_TOKEN_THAT_IS_NOT_SET";
  o.clients.endpoint = e;
  CHECK_THROWS_AS(run_benchmark(o), std::invalid_argument);
  CHECK_FALSE(std::filesystem::exists(path));
  auto empty = options(path);
  empty.tasks.clear();
  CHECK_THROWS_AS(run_benchmark(empty), std::invalid_argument);
  auto unwritable = options("/nonexistent/dir/out.jsonl");
  CHECK_THROWS_AS(run_benchmark(unwritable), std::runtime_error);
}

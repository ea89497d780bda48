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


#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qctrl/agents/client.hpp"
#include "qctrl/loop/loop.hpp"

namespace qctrl::harness {

/// Where language-model methods get their chat clients: a scripted fixture
/// (offline) or a live endpoint wrapped in retries.
struct ClientSource {
  std::optional<agents::ScriptFixture> fixture;
  std::string fixture_label;  // echoed into the result header
  std::optional<agents::Endpoint> endpoint;
  agents::RetryPolicy retry;
  std::string transcript_dir;  // one JSONL transcript per task and repetition; empty disables
};

struct BenchmarkOptions {
  std::vector<int> tasks;
  loop::RunConfig config;  // task_id is replaced per task
  ClientSource clients;
  std::string output_path;
  int parallelism = 1;  // never affects results, so it is not echoed
};

struct BenchmarkOutcome {
  int runs = 0;
  int faults = 0;  // runs that ended with termination = fault
  int errors = 0;  // repetitions that threw
  std::vector<std::string> messages;

  bool ok() const { return faults == 0 && errors == 0; }
};

nlohmann::json effective_config(const BenchmarkOptions& options);

/// Runs every task in order, writing rows as iterations finish. Throws
/// std::invalid_argument for configuration errors (before the output file
/// is created) and std::runtime_error when the output cannot be written.
BenchmarkOutcome run_benchmark(const BenchmarkOptions& options);

}  // namespace qctrl::harness

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


#include "qctrl/harness/benchmark.hpp"

#include <filesystem>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "qctrl/harness/results.hpp"

namespace qctrl::harness {

namespace {

std::shared_ptr<agents::ChatClient> make_client(const ClientSource& src, int task_id, int repetition) {
  std::shared_ptr<agents::ChatClient> client;
  if (src.fixture) {
    client = src.fixture->client_for(task_id, repetition);
  } else if (src.endpoint) {
    client = std::make_shared<agents::RetryingClient>(std::make_shared<agents::HttpChatClient>(*src.endpoint),
                                                      src.retry);
  } else {
    throw std::invalid_argument("no chat client configured: pass a script fixture or an endpoint");
  }
  if (!src.transcript_dir.empty()) {
    const auto path = std::filesystem::path(src.transcript_dir) /
                      fmt::format("transcript-{}-rep{}.jsonl", tasks::roman(task_id), repetition);
    client = std::make_shared<agents::TranscriptClient>(client, path.string());
  }
  return client;
}

}  // namespace

nlohmann::json effective_config(const BenchmarkOptions& o) {
  nlohmann::json j = config_to_json(o.config);
  j.erase("task");
  nlohmann::json task_list = nlohmann::json::array();
  for (int t : o.tasks) task_list.push_back(tasks::roman(t));
  j["tasks"] = task_list;
  if (loop::uses_client(o.config.method)) {
    if (o.clients.fixture) {
      j["client"] = {{"kind", "scripted"}, {"fixture", o.clients.fixture_label}, {"model", o.clients.fixture->model}};
    } else if (o.clients.endpoint) {
      j["client"] = {{"kind", "http"},
                     {"base_url", o.clients.endpoint->base_url},
                     {"model", o.clients.endpoint->model},
                     {"timeout_seconds", o.clients.endpoint->timeout_seconds},
                     {"retry_attempts", o.clients.retry.attempts}};
    }
  }
  return j;
}

BenchmarkOutcome run_benchmark(const BenchmarkOptions& o) {
  if (o.tasks.empty()) throw std::invalid_argument("no tasks selected");
  std::vector<tasks::TaskSpec> specs;
  for (int id : o.tasks) {
    loop::RunConfig c = o.config;
    c.task_id = id;
    c.validate();
    specs.push_back(tasks::build_task(id, c.overrides));
  }
  if (loop::uses_client(o.config.method)) {
    if (!o.clients.fixture && !o.clients.endpoint) {
      throw std::invalid_argument("method " + std::string(loop::to_string(o.config.method)) +
                                  " needs --script or a provider endpoint");
    }
    if (o.clients.endpoint) agents::HttpChatClient probe(*o.clients.endpoint);  // checks model and token
    if (!o.clients.transcript_dir.empty()) std::filesystem::create_directories(o.clients.transcript_dir);
  }

  JsonlWriter writer(o.output_path, effective_config(o));
  BenchmarkOutcome outcome;
  for (std::size_t i = 0; i < o.tasks.size(); ++i) {
    loop::RunConfig c = o.config;
    c.task_id = o.tasks[i];
    OrderedRowSink sink(writer, c.repetitions);
    std::mutex mu;
    loop::RepetitionHooks hooks;
    hooks.on_iteration = [&](const loop::RunRecord& run, const loop::IterationRecord& it) { sink.on_iteration(run, it); };
    hooks.on_finished = [&](const loop::RunRecord& run) {
      sink.on_run_finished(run);
      std::lock_guard lock(mu);
      ++outcome.runs;
      if (run.termination == loop::Termination::kFault) {
        ++outcome.faults;
        outcome.messages.push_back(fmt::format("task {} repetition {}: {}", tasks::roman(c.task_id), run.repetition,
                                               run.fault));
      }
    };
    hooks.on_error = [&](int repetition, std::exception_ptr e) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(e);
      } catch (const std::exception& ex) {
        what = ex.what();
      } catch (...) {
      }
      spdlog::error("task {} repetition {}: {}", tasks::roman(c.task_id), repetition, what);
      sink.on_run_aborted(repetition);
      std::lock_guard lock(mu);
      ++outcome.errors;
      outcome.messages.push_back(fmt::format("task {} repetition {}: {}", tasks::roman(c.task_id), repetition, what));
    };
    const ClientSource& src = o.clients;
    const int task_id = c.task_id;
    loop::run_repetitions(c, specs[i], [&src, task_id](int r) { return make_client(src, task_id, r); }, hooks,
                          o.parallelism);
  }
  return outcome;
}

}  // namespace qctrl::harness

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


#include "qctrl/harness/results.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <fmt/format.h>

#include "qctrl/version.hpp"

namespace qctrl::harness {

using nlohmann::json;

namespace {

json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

json usage_json(const agents::TokenUsage& u) { return {{"prompt", u.prompt}, {"completion", u.completion}}; }

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

std::string amplitude_digest(const RealMatrix& amplitudes) {
  if (amplitudes.size() == 0) return "";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index r = 0; r < amplitudes.rows(); ++r) {
    for (Eigen::Index c = 0; c < amplitudes.cols(); ++c) {
      const auto bits = std::bit_cast<std::uint64_t>(amplitudes(r, c));
      for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xFFu;
        h *= 0x100000001b3ULL;
      }
    }
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

json config_to_json(const loop::RunConfig& c) {
  json overrides = json::object();
  if (c.overrides.n_slices) overrides["n_slices"] = *c.overrides.n_slices;
  if (c.overrides.total_time) overrides["total_time"] = *c.overrides.total_time;
  if (c.overrides.fixture_seed) overrides["fixture_seed"] = *c.overrides.fixture_seed;
  if (!c.overrides.params.empty()) overrides["params"] = c.overrides.params;
  overrides["strict"] = c.overrides.strict;
  return {
      {"task", tasks::roman(c.task_id)},
      {"method", loop::to_string(c.method)},
      {"sigma", c.sigma},
      {"K", c.K},
      {"B_opt", c.B_opt},
      {"epsilon", c.epsilon},
      {"repetitions", c.repetitions},
      {"seed", c.seed},
      {"noise_seed", c.noise_seed},
      {"spsa_a", c.spsa_a},
      {"spsa_c", c.spsa_c},
      {"spsa_A", c.spsa_A},
      {"grape_iterations", c.grape_iterations},
      {"crab_harmonics", c.crab_harmonics},
      {"crab_budget", c.crab_budget},
      {"crab_nm_iterations", c.crab_nm_iterations},
      {"crab_initial", c.crab_initial == optim::InitialGuess::kRandom ? "random" : "grape"},
      {"classical_row_stride", c.classical_row_stride},
      {"rejections_count_toward_K", true},
      {"overrides", overrides},
  };
}

json header_record(const json& effective_config) {
  return {{"type", "header"},
          {"schema_version", kSchemaVersion},
          {"generator", std::string("qctrl-bench ") + kVersion},
          {"config", effective_config}};
}

json row_record(const loop::RunRecord& run, const loop::IterationRecord& it) {
  const auto& c = run.config;
  return {
      {"type", "row"},
      {"task", tasks::roman(c.task_id)},
      {"method", loop::to_string(c.method)},
      {"model", run.model},
      {"sigma", c.sigma},
      {"repetition", it.repetition},
      {"iteration", it.iteration},
      {"fidelity", number_or_null(it.fidelity)},
      {"best_fidelity_so_far", it.best_fidelity},
      {"prompt_tokens", it.usage.prompt},
      {"completion_tokens", it.usage.completion},
      {"client_calls", it.client_calls},
      {"oracle_calls", it.oracle_calls},
      {"wall_ms", it.wall_ms},
      {"seed", c.repetition_seed(it.repetition)},
      {"noise_signs", run.noise.signs()},
      {"expression", it.expression},
      {"rendered", it.rendered},
      {"amplitude_digest", amplitude_digest(it.amplitudes)},
      {"rejections", it.rejections},
      {"feedback", it.feedback},
      {"termination", it.termination ? json(loop::to_string(*it.termination)) : json(nullptr)},
  };
}

json run_record(const loop::RunRecord& run) {
  const auto& c = run.config;
  double wall = 0.0;
  for (const auto& it : run.iterations) wall += it.wall_ms;
  json deltas = json::object();
  for (const auto& [name, d] : run.noise.deltas) deltas[name] = d;
  return {
      {"type", "run"},
      {"task", tasks::roman(c.task_id)},
      {"method", loop::to_string(c.method)},
      {"model", run.model},
      {"sigma", c.sigma},
      {"repetition", run.repetition},
      {"seed", c.repetition_seed(run.repetition)},
      {"noise_seed", run.noise.seed},
      {"noise_signs", run.noise.signs()},
      {"noise_deltas", deltas},
      {"warm_start_fidelity", run.warm_start_fidelity},
      {"best_fidelity", run.best_fidelity},
      {"best_iteration", run.best_iteration},
      {"best_digest", amplitude_digest(run.best_protocol.amplitudes)},
      {"iterations", run.iterations.size()},
      {"termination", loop::to_string(run.termination)},
      {"fault", run.fault},
      {"usage", usage_json(run.usage)},
      {"client_calls", run.client_calls},
      {"oracle_calls", run.oracle_calls},
      {"wall_ms", wall},
  };
}

JsonlWriter::JsonlWriter(const std::string& path, const json& effective_config) : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open result file " + path);
  write(header_record(effective_config));
}

void JsonlWriter::write(const json& record) {
  std::lock_guard lock(mu_);
  out_ << dump(record) << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write to result file failed");
}

OrderedRowSink::OrderedRowSink(JsonlWriter& writer, int repetitions) : writer_(writer), count_(repetitions) {}

void OrderedRowSink::on_iteration(const loop::RunRecord& run, const loop::IterationRecord& it) {
  std::lock_guard lock(mu_);
  if (run.repetition == head_) {
    writer_.write(row_record(run, it));
  } else {
    held_[run.repetition].push_back(row_record(run, it));
  }
}

void OrderedRowSink::on_run_finished(const loop::RunRecord& run) {
  std::lock_guard lock(mu_);
  held_[run.repetition].push_back(run_record(run));
  finished_[run.repetition] = true;
  drain_locked();
}

void OrderedRowSink::on_run_aborted(int repetition) {
  std::lock_guard lock(mu_);
  finished_[repetition] = true;
  held_[repetition];
  drain_locked();
}

void OrderedRowSink::drain_locked() {
  while (head_ < count_) {
    auto it = held_.find(head_);
    if (it != held_.end()) {
      for (const auto& row : it->second) writer_.write(row);
      held_.erase(it);
    }
    if (!finished_[head_]) break;
    ++head_;
  }
}

}  // namespace qctrl::harness

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

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qctrl/agents/client.hpp"
#include "qctrl/optim/crab.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::loop {

enum class Method { kVfQctrl, kHintLlm, kSimpleLlm, kGrape, kCrab, kCrabSpsa };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view text);
/// True for the three methods driven by a language model.
bool uses_client(Method m);

enum class Termination { kTolerance, kBudget, kFault };
std::string_view to_string(Termination t);

struct RunConfig {
  int task_id = 1;
  Method method = Method::kVfQctrl;
  double sigma = 0.0;
  int K = 50;         // outer iterations
  int B_opt = 1000;   // SPSA steps per vf-qctrl iteration
  double epsilon = 1e-3;
  int repetitions = 1;
  std::uint64_t seed = 0;        // repetition r uses seed + r
  std::uint64_t noise_seed = 0;  // one noise assignment shared by all repetitions
  double spsa_a = 0.0;           // <= 0: optim::default_spsa_a of the initial coefficients
  double spsa_c = 0.1;
  double spsa_A = 50.0;
  int grape_iterations = 2000;
  int crab_harmonics = 20;
  int crab_budget = 50000;
  int crab_nm_iterations = 4000;
  optim::InitialGuess crab_initial = optim::InitialGuess::kRandom;
  int classical_row_stride = 100;  // CRAB traces keep every n-th step (and the last)
  tasks::TaskOverrides overrides;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  std::uint64_t repetition_seed(int repetition) const { return seed + static_cast<std::uint64_t>(repetition); }
};

struct IterationRecord {
  int repetition = 0;
  int iteration = 0;
  std::string expression;           // symbolic form (vf-qctrl)
  std::string rendered;             // form with optimized values, or amplitude lists
  std::vector<double> coefficients; // optimized coefficients (vf-qctrl)
  RealMatrix amplitudes;            // evaluated protocol; empty when nothing was evaluated
  std::optional<double> fidelity;   // empty for rejected or failed iterations
  double best_fidelity = 0.0;
  agents::TokenUsage usage;         // proposal plus reflection
  long long client_calls = 0;
  long long oracle_calls = 0;
  double wall_ms = 0.0;
  std::vector<std::string> rejections;
  std::vector<std::string> feedback;
  /// Set on the last iteration of a run.
  std::optional<Termination> termination;
};

struct RunRecord {
  RunConfig config;
  int repetition = 0;
  std::string model;
  tasks::NoiseAssignment noise;
  double warm_start_fidelity = 0.0;
  std::vector<IterationRecord> iterations;
  tasks::Protocol best_protocol;
  double best_fidelity = 0.0;
  int best_iteration = 0;  // 0 is the zero-amplitude warm start
  Termination termination = Termination::kBudget;
  std::string fault;
  agents::TokenUsage usage;
  long long client_calls = 0;
  long long oracle_calls = 0;
};

/// Called after every iteration, from the thread running the repetition.
using IterationSink = std::function<void(const RunRecord&, const IterationRecord&)>;

/// One repetition of the language-model outer loop with SPSA coefficient
/// refinement. `spec` holds nominal values; noise is applied once here.
RunRecord vf_qctrl_run(const RunConfig& config, const tasks::TaskSpec& spec, agents::ChatClient& client,
                       int repetition = 0, const IterationSink& sink = {});

/// One repetition of the hint or simple baseline (direct amplitude lists).
RunRecord pure_llm_run(const RunConfig& config, const tasks::TaskSpec& spec, agents::ChatClient& client,
                       int repetition = 0, const IterationSink& sink = {});

/// GRAPE, CRAB (Nelder-Mead) or CRAB+SPSA. Never touches a chat client.
RunRecord classical_run(const RunConfig& config, const tasks::TaskSpec& spec, int repetition = 0,
                        const IterationSink& sink = {});

/// Dispatch on config.method; `client` may be null for classical methods.
RunRecord run_repetition(const RunConfig& config, const tasks::TaskSpec& spec, agents::ChatClient* client,
                         int repetition = 0, const IterationSink& sink = {});

using ClientFactory = std::function<std::shared_ptr<agents::ChatClient>(int repetition)>;

struct RepetitionHooks {
  IterationSink on_iteration;
  std::function<void(const RunRecord&)> on_finished;
  /// When set, a repetition that throws is reported here and the others
  /// continue; otherwise the first error is rethrown after all finish.
  std::function<void(int repetition, std::exception_ptr)> on_error;
};

/// All repetitions of a configuration on up to `parallelism` threads.
/// Results are ordered by repetition and do not depend on `parallelism`;
/// the slot of a repetition reported through on_error is left default.
std::vector<RunRecord> run_repetitions(const RunConfig& config, const tasks::TaskSpec& spec,
                                       const ClientFactory& clients, const RepetitionHooks& hooks = {},
                                       int parallelism = 1);

/// Highest best_fidelity; the earliest repetition wins ties.
const RunRecord& best_of(const std::vector<RunRecord>& runs);

/// eps_n = min over the first n repetitions of (1 - best F).
std::vector<double> running_min_infidelity(const std::vector<RunRecord>& runs);

/// config.repetitions independent vf-qctrl repetitions (80 by default in the
/// scaling study) reduced to the eps_n sequence.
std::vector<double> inference_scaling_run(const RunConfig& config, const tasks::TaskSpec& spec,
                                          const ClientFactory& clients, int parallelism = 1);

struct SweepPoint {
  int n_slices = 0;
  std::vector<RunRecord> runs;
  double best_fidelity = 0.0;
};

/// Rebuilds the task at every slice count (keeping T) and runs the
/// configuration. Fixed-grid tasks are rejected when overrides.strict is set.
std::vector<SweepPoint> resolution_sweep(const RunConfig& config, const ClientFactory& clients,
                                         const std::vector<int>& n_slices = {20, 80, 160, 220},
                                         int parallelism = 1);

}  // namespace qctrl::loop

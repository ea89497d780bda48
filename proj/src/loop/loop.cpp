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


#include "qctrl/loop/loop.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <span>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "qctrl/agents/prompt.hpp"
#include "qctrl/agents/proposal.hpp"
#include "qctrl/optim/grape.hpp"
#include "qctrl/optim/spsa.hpp"
#include "qctrl/symbolic/ansatz.hpp"

namespace qctrl::loop {

namespace {

using agents::ChatClient;
using agents::FeedbackMemory;
using agents::MemoryEntry;
using agents::PromptMode;
using Clock = std::chrono::steady_clock;

struct CountingOracle {
  const tasks::TaskSpec* spec;
  long long calls = 0;

  double operator()(const RealMatrix& u) {
    ++calls;
    return tasks::evaluate_protocol(*spec, u);
  }
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string render_amplitudes(const tasks::TaskSpec& spec, const RealMatrix& u) {
  std::string out;
  for (int c = 0; c < spec.n_channels(); ++c) {
    if (c > 0) out += "\n";
    out += spec.channels[c].name + " = [";
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
      if (k > 0) out += ", ";
      out += fmt::format("{:.6g}", u(c, k));
    }
    out += "]";
  }
  return out;
}

std::string excerpt(std::string_view raw) {
  const auto block = agents::extract_json_object(raw);
  std::string text = block ? *block : std::string(raw);
  if (text.size() > 600) text = text.substr(0, 600) + " ...";
  return text;
}

/// Distinct SPSA seeds per (repetition, iteration).
std::uint64_t spsa_seed(std::uint64_t repetition_seed, int iteration) {
  return repetition_seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(iteration);
}

RunRecord start_record(const RunConfig& config, const tasks::TaskSpec& spec, int repetition,
                       const tasks::NoiseAssignment& noise, double warm, std::string model) {
  RunRecord rec;
  rec.config = config;
  rec.repetition = repetition;
  rec.model = std::move(model);
  rec.noise = noise;
  rec.warm_start_fidelity = warm;
  rec.best_fidelity = warm;
  rec.best_iteration = 0;
  rec.best_protocol = tasks::zero_protocol(spec);
  return rec;
}

void finish_iteration(RunRecord& rec, IterationRecord it, const IterationSink& sink) {
  if (it.fidelity && *it.fidelity > rec.best_fidelity) {
    rec.best_fidelity = *it.fidelity;
    rec.best_iteration = it.iteration;
    rec.best_protocol = tasks::Protocol{it.amplitudes, rec.config.method == Method::kVfQctrl
                                                           ? tasks::Provenance::kAnsatz
                                                           : tasks::Provenance::kNumeric};
  }
  it.best_fidelity = rec.best_fidelity;
  rec.usage += it.usage;
  rec.client_calls += it.client_calls;
  rec.oracle_calls += it.oracle_calls;
  rec.iterations.push_back(std::move(it));
  if (sink) sink(rec, rec.iterations.back());
}

struct ProposalStep {
  bool transport_failed = false;
  agents::ChatReply reply;
};

/// Shared outer loop of the three language-model methods.
RunRecord llm_loop(const RunConfig& config, const tasks::TaskSpec& spec, ChatClient& client, int repetition,
                   const IterationSink& sink) {
  config.validate();
  const PromptMode mode = config.method == Method::kVfQctrl  ? PromptMode::kVfQctrl
                          : config.method == Method::kHintLlm ? PromptMode::kHint
                                                              : PromptMode::kSimple;
  const bool ansatz_mode = mode == PromptMode::kVfQctrl;
  const bool reflects = mode != PromptMode::kSimple;
  const auto [noisy, noise] = tasks::apply_noise(spec, config.sigma, config.noise_seed);
  CountingOracle oracle{&noisy};
  const double warm = oracle(tasks::zero_protocol(noisy).amplitudes);
  RunRecord rec = start_record(config, spec, repetition, noise, warm, client.model_name());
  rec.oracle_calls = oracle.calls;
  FeedbackMemory memory;
  double previous_fidelity = warm;

  for (int k = 1; k <= config.K; ++k) {
    const auto t0 = Clock::now();
    IterationRecord it;
    it.repetition = repetition;
    it.iteration = k;
    const long long calls_before = oracle.calls;
    const agents::PromptBundle prompt = agents::build_prompt(spec, mode, memory, warm, config.B_opt);
    agents::ChatReply reply;
    try {
      reply = client.complete(prompt.messages());
      ++it.client_calls;
      it.usage += reply.usage;
    } catch (const agents::TransportError& e) {
      ++it.client_calls;
      it.rejections.push_back(std::string("transport: ") + e.what());
      it.wall_ms = elapsed_ms(t0);
      rec.termination = Termination::kFault;
      rec.fault = e.what();
      it.termination = Termination::kFault;
      spdlog::error("task {} repetition {} iteration {}: {}", tasks::roman(spec.id), repetition, k, e.what());
      finish_iteration(rec, std::move(it), sink);
      return rec;
    }

    auto parsed = agents::parse_proposal(reply.text, ansatz_mode ? agents::ProposalKind::kAnsatz
                                                                 : agents::ProposalKind::kNumeric,
                                         spec);
    std::optional<Rejection> rejection;
    if (!parsed) rejection = parsed.error();
    std::string attempt;  // what the reflection agent reviews
    if (parsed) {
      const agents::ProposalResponse& proposal = parsed.value();
      if (ansatz_mode) {
        const auto& ansatz = proposal.ansatz;
        const std::vector<double> init = ansatz.initial_values();
        auto first = symbolic::discretize(ansatz, init, spec.grid);
        if (!first) {
          rejection = first.error();
        } else {
          std::vector<double> best_theta = init;
          if (config.B_opt > 0) {
            const auto objective = [&](const RealVector& theta) {
              auto u = symbolic::discretize(ansatz, std::span<const double>(theta.data(), theta.size()), spec.grid);
              if (!u) return 1.0;
              return 1.0 - oracle(u.value());
            };
            optim::SpsaConfig sc;
            const RealVector theta0 = Eigen::Map<const RealVector>(init.data(), static_cast<Eigen::Index>(init.size()));
            sc.a = config.spsa_a > 0.0 ? config.spsa_a : optim::default_spsa_a(theta0);
            sc.c = config.spsa_c;
            sc.A = config.spsa_A;
            sc.budget = config.B_opt;
            sc.seed = spsa_seed(config.repetition_seed(repetition), k);
            const optim::SpsaResult r = optim::spsa_minimize(objective, theta0, sc);
            best_theta.assign(r.theta.data(), r.theta.data() + r.theta.size());
          }
          auto u = symbolic::discretize(ansatz, best_theta, spec.grid);
          it.expression = symbolic::render_symbolic(ansatz);
          it.rendered = symbolic::render(ansatz, best_theta);
          it.coefficients = best_theta;
          if (u) {
            it.amplitudes = u.value();
            it.fidelity = oracle(it.amplitudes);
          } else {
            it.amplitudes = RealMatrix::Zero(spec.n_channels(), spec.grid.n_slices());
            it.fidelity = 0.0;
            it.rejections.push_back(u.error().describe());
          }
          attempt = reply.text + "\n\nOptimized form:\n" + it.rendered;
        }
      } else {
        it.amplitudes = proposal.amplitudes;
        it.rendered = render_amplitudes(spec, it.amplitudes);
        it.fidelity = oracle(it.amplitudes);
        attempt = reply.text;
      }
    }

    MemoryEntry entry;
    entry.iteration = k;
    if (rejection) {
      it.rejections.push_back(rejection->describe());
      entry.rejection = rejection->describe();
      entry.rendered = excerpt(reply.text);
    } else {
      entry.infidelity = 1.0 - *it.fidelity;
      entry.rendered = it.rendered;
    }
    memory.add(std::move(entry));

    if (reflects && k >= 2 && it.fidelity) {
      const agents::Reflection r = agents::reflect(client, attempt, *it.fidelity - previous_fidelity, *it.fidelity);
      ++it.client_calls;
      it.usage += r.usage;
      it.feedback = r.bullets;
      memory.attach_feedback(k, r.bullets);
    }
    if (it.fidelity) previous_fidelity = *it.fidelity;
    it.oracle_calls = oracle.calls - calls_before;
    it.wall_ms = elapsed_ms(t0);
    const double best = it.fidelity ? std::max(rec.best_fidelity, *it.fidelity) : rec.best_fidelity;
    if (1.0 - best <= config.epsilon) {
      it.termination = Termination::kTolerance;
    } else if (k == config.K) {
      it.termination = Termination::kBudget;
    }
    const auto done = it.termination;
    finish_iteration(rec, std::move(it), sink);
    if (done) {
      rec.termination = *done;
      return rec;
    }
  }
  rec.termination = Termination::kBudget;
  return rec;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kVfQctrl: return "vf-qctrl";
    case Method::kHintLlm: return "hint-llm";
    case Method::kSimpleLlm: return "simple-llm";
    case Method::kGrape: return "grape";
    case Method::kCrab: return "crab";
    case Method::kCrabSpsa: return "crab-spsa";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::kVfQctrl, Method::kHintLlm, Method::kSimpleLlm, Method::kGrape, Method::kCrab,
                   Method::kCrabSpsa}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

bool uses_client(Method m) {
  return m == Method::kVfQctrl || m == Method::kHintLlm || m == Method::kSimpleLlm;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kTolerance: return "tolerance";
    case Termination::kBudget: return "budget";
    case Termination::kFault: return "fault";
  }
  return "?";
}

void RunConfig::validate() const {
  if (task_id < 1 || task_id > tasks::kTaskCount) throw std::invalid_argument("task id out of range");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (B_opt < 0) throw std::invalid_argument("B_opt must be >= 0");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite and >= 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (method == Method::kGrape && sigma != 0.0) {
    throw std::invalid_argument("grape is the noiseless baseline and requires sigma = 0");
  }
  if (grape_iterations < 1 || crab_harmonics < 1 || crab_budget < 0 || crab_nm_iterations < 1) {
    throw std::invalid_argument("baseline budgets must be positive");
  }
  if (classical_row_stride < 1) throw std::invalid_argument("classical_row_stride must be >= 1");
}

RunRecord vf_qctrl_run(const RunConfig& config, const tasks::TaskSpec& spec, ChatClient& client, int repetition,
                       const IterationSink& sink) {
  if (config.method != Method::kVfQctrl) throw std::invalid_argument("vf_qctrl_run needs method vf-qctrl");
  return llm_loop(config, spec, client, repetition, sink);
}

RunRecord pure_llm_run(const RunConfig& config, const tasks::TaskSpec& spec, ChatClient& client, int repetition,
                       const IterationSink& sink) {
  if (config.method != Method::kHintLlm && config.method != Method::kSimpleLlm) {
    throw std::invalid_argument("pure_llm_run needs method hint-llm or simple-llm");
  }
  return llm_loop(config, spec, client, repetition, sink);
}

RunRecord classical_run(const RunConfig& config, const tasks::TaskSpec& spec, int repetition,
                        const IterationSink& sink) {
  config.validate();
  if (uses_client(config.method)) throw std::invalid_argument("classical_run needs grape, crab or crab-spsa");
  const auto t0 = Clock::now();
  const std::uint64_t seed = config.repetition_seed(repetition);
  const auto [noisy, noise] = tasks::apply_noise(spec, config.sigma, config.noise_seed);
  const double warm = tasks::evaluate_protocol(noisy, tasks::zero_protocol(noisy));
  RunRecord rec = start_record(config, spec, repetition, noise, warm, std::string(to_string(config.method)));

  std::vector<double> fidelities;  // best-so-far fidelity per optimizer step
  tasks::Protocol best;
  double final_fidelity = 0.0;
  int stride = config.classical_row_stride;
  if (config.method == Method::kGrape) {
    optim::GrapeConfig gc;
    gc.max_iterations = config.grape_iterations;
    const tasks::Protocol init{optim::random_amplitudes(noisy, seed), tasks::Provenance::kBaseline};
    const optim::GrapeResult r = optim::grape_optimize(noisy, init, gc);
    for (double v : r.trace.best_so_far) fidelities.push_back(1.0 - v);
    best = r.protocol;
    final_fidelity = r.fidelity;
    rec.oracle_calls += r.trace.evaluations;
    stride = 1;
  } else if (config.method == Method::kCrab) {
    optim::CrabNmConfig nc;
    nc.harmonics = config.crab_harmonics;
    nc.max_iterations = config.crab_nm_iterations;
    nc.seed = seed;
    const optim::BaselineResult r = optim::crab_nelder_mead(noisy, nc);
    fidelities = r.fidelity_trace;
    best = r.best;
    final_fidelity = r.fidelity;
    rec.oracle_calls += r.evaluations;
  } else {
    optim::CrabSpsaConfig cc;
    cc.sigma = config.sigma;
    cc.noise_seed = config.noise_seed;
    cc.initial = config.crab_initial;
    cc.harmonics = config.crab_harmonics;
    cc.budget = config.crab_budget;
    cc.seed = seed;
    cc.grape.max_iterations = config.grape_iterations;
    const optim::BaselineResult r = optim::crab_spsa_baseline(spec, cc);
    fidelities = r.fidelity_trace;
    best = r.best;
    final_fidelity = r.fidelity;
    rec.oracle_calls += r.evaluations;
  }
  const double per_step_ms = fidelities.empty() ? 0.0 : elapsed_ms(t0) / static_cast<double>(fidelities.size());
  const long long total_calls = rec.oracle_calls;
  rec.oracle_calls = 0;
  for (std::size_t i = 0; i < fidelities.size(); ++i) {
    const bool last = i + 1 == fidelities.size();
    if (!last && (i + 1) % static_cast<std::size_t>(stride) != 0) continue;
    IterationRecord it;
    it.repetition = repetition;
    it.iteration = static_cast<int>(i + 1);
    it.fidelity = last ? final_fidelity : fidelities[i];
    it.wall_ms = per_step_ms * static_cast<double>(last ? fidelities.size() - i : stride);
    if (last) {
      it.amplitudes = best.amplitudes;
      it.oracle_calls = total_calls;
      it.termination = 1.0 - std::max(warm, final_fidelity) <= config.epsilon ? Termination::kTolerance
                                                                              : Termination::kBudget;
    }
    finish_iteration(rec, std::move(it), sink);
  }
  if (rec.iterations.empty()) {
    IterationRecord it;
    it.repetition = repetition;
    it.iteration = 1;
    it.fidelity = final_fidelity;
    it.amplitudes = best.amplitudes;
    it.oracle_calls = total_calls;
    it.wall_ms = elapsed_ms(t0);
    it.termination = 1.0 - std::max(warm, final_fidelity) <= config.epsilon ? Termination::kTolerance
                                                                            : Termination::kBudget;
    finish_iteration(rec, std::move(it), sink);
  }
  if (final_fidelity >= rec.best_fidelity) {
    rec.best_fidelity = final_fidelity;
    rec.best_iteration = rec.iterations.back().iteration;
    rec.best_protocol = best;
  }
  rec.best_protocol.provenance = tasks::Provenance::kBaseline;
  rec.termination = *rec.iterations.back().termination;
  return rec;
}

RunRecord run_repetition(const RunConfig& config, const tasks::TaskSpec& spec, ChatClient* client, int repetition,
                         const IterationSink& sink) {
  if (!uses_client(config.method)) return classical_run(config, spec, repetition, sink);
  if (client == nullptr) throw std::invalid_argument("method " + std::string(to_string(config.method)) + " needs a chat client");
  if (config.method == Method::kVfQctrl) return vf_qctrl_run(config, spec, *client, repetition, sink);
  return pure_llm_run(config, spec, *client, repetition, sink);
}

std::vector<RunRecord> run_repetitions(const RunConfig& config, const tasks::TaskSpec& spec,
                                       const ClientFactory& clients, const RepetitionHooks& hooks, int parallelism) {
  config.validate();
  const int n = config.repetitions;
  std::vector<RunRecord> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < n; r = next++) {
      try {
        std::shared_ptr<ChatClient> client;
        if (uses_client(config.method)) {
          if (!clients) throw std::invalid_argument("no chat client configured");
          client = clients(r);
        }
        out[static_cast<std::size_t>(r)] = run_repetition(config, spec, client.get(), r, hooks.on_iteration);
        if (hooks.on_finished) hooks.on_finished(out[static_cast<std::size_t>(r)]);
      } catch (...) {
        if (hooks.on_error) {
          hooks.on_error(r, std::current_exception());
        } else {
          errors[static_cast<std::size_t>(r)] = std::current_exception();
        }
      }
    }
  };
  const int threads = std::clamp(parallelism, 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

const RunRecord& best_of(const std::vector<RunRecord>& runs) {
  if (runs.empty()) throw std::invalid_argument("best_of: no runs");
  const RunRecord* best = &runs.front();
  for (const auto& r : runs) {
    if (r.best_fidelity > best->best_fidelity) best = &r;
  }
  return *best;
}

std::vector<double> running_min_infidelity(const std::vector<RunRecord>& runs) {
  std::vector<double> out;
  double current = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    current = std::min(current, 1.0 - r.best_fidelity);
    out.push_back(current);
  }
  return out;
}

std::vector<double> inference_scaling_run(const RunConfig& config, const tasks::TaskSpec& spec,
                                          const ClientFactory& clients, int parallelism) {
  if (config.method != Method::kVfQctrl) throw std::invalid_argument("inference scaling uses vf-qctrl");
  return running_min_infidelity(run_repetitions(config, spec, clients, RepetitionHooks{}, parallelism));
}

std::vector<SweepPoint> resolution_sweep(const RunConfig& config, const ClientFactory& clients,
                                         const std::vector<int>& n_slices, int parallelism) {
  std::vector<SweepPoint> out;
  for (int n : n_slices) {
    RunConfig c = config;
    c.overrides.n_slices = n;
    const tasks::TaskSpec spec = tasks::build_task(c.task_id, c.overrides);
    SweepPoint p;
    p.n_slices = n;
    p.runs = run_repetitions(c, spec, clients, RepetitionHooks{}, parallelism);
    p.best_fidelity = best_of(p.runs).best_fidelity;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qctrl::loop

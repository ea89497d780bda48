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


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "criteria.hpp"
#include "qctrl/harness/aggregate.hpp"
#include "qctrl/harness/benchmark.hpp"
#include "qctrl/tasks/fixtures.hpp"
#include "qctrl/tasks/reference.hpp"
#include "qctrl/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFault = 3;

struct RunFlags {
  std::string task = "all";
  std::string method = "vf-qctrl";
  double sigma = 0.0;
  int reps = 1;
  int K = 50;
  int B_opt = 1000;
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  std::uint64_t noise_seed = 0;
  std::string provider_url = "https://api.openai.com/v1";
  std::string model;
  std::string token_env = "QCTRL_API_KEY";
  double timeout = 300.0;
  double temperature = -1.0;
  int retries = 3;
  std::string out;
  int parallelism = 1;
  std::string transcripts;
  std::string script;
  int n_slices = 0;
  double total_time = 0.0;
  std::vector<std::string> params;
  bool strict = false;
  std::int64_t fixture_seed = -1;
  double spsa_a = 0.0;
  double spsa_c = 0.1;
  double spsa_A = 50.0;
  int grape_iterations = 2000;
  int crab_harmonics = 20;
  int crab_budget = 50000;
  int crab_nm_iterations = 4000;
  std::string crab_initial = "random";
  int row_stride = 100;
};

std::vector<int> parse_tasks(const std::string& text) {
  std::vector<int> out;
  if (text == "all" || text == "ALL") {
    for (int id = 1; id <= qctrl::tasks::kTaskCount; ++id) out.push_back(id);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto id = qctrl::tasks::parse_task_id(item);
    if (!id) throw std::invalid_argument("unknown task '" + item + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw std::invalid_argument("no task selected");
  return out;
}

qctrl::harness::BenchmarkOptions benchmark_options(const RunFlags& f) {
  qctrl::harness::BenchmarkOptions o;
  o.tasks = parse_tasks(f.task);
  const auto method = qctrl::loop::parse_method(f.method);
  if (!method) throw std::invalid_argument("unknown method '" + f.method + "'");
  auto& c = o.config;
  c.method = *method;
  c.sigma = f.sigma;
  c.K = f.K;
  c.B_opt = f.B_opt;
  c.epsilon = f.epsilon;
  c.repetitions = f.reps;
  c.seed = f.seed;
  c.noise_seed = f.noise_seed;
  c.spsa_a = f.spsa_a;
  c.spsa_c = f.spsa_c;
  c.spsa_A = f.spsa_A;
  c.grape_iterations = f.grape_iterations;
  c.crab_harmonics = f.crab_harmonics;
  c.crab_budget = f.crab_budget;
  c.crab_nm_iterations = f.crab_nm_iterations;
  c.crab_initial = f.crab_initial == "grape" ? qctrl::optim::InitialGuess::kGrapeWarmStart
                                             : qctrl::optim::InitialGuess::kRandom;
  c.classical_row_stride = f.row_stride;
  if (f.n_slices > 0) c.overrides.n_slices = f.n_slices;
  if (f.total_time > 0) c.overrides.total_time = f.total_time;
  if (f.fixture_seed >= 0) c.overrides.fixture_seed = static_cast<std::uint64_t>(f.fixture_seed);
  c.overrides.strict = f.strict;
  for (const auto& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects name=value, got '" + p + "'");
    c.overrides.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
  }
  if (qctrl::loop::uses_client(c.method)) {
    if (!f.script.empty()) {
      o.clients.fixture = qctrl::agents::load_script_fixture(f.script);
      o.clients.fixture_label = std::filesystem::path(f.script).filename().string();
    } else {
      if (f.model.empty()) throw std::invalid_argument("--model is required with a live provider");
      qctrl::agents::Endpoint e;
      e.base_url = f.provider_url;
      e.model = f.model;
      e.token_env = f.token_env;
      e.timeout_seconds = f.timeout;
      e.temperature = f.temperature;
      o.clients.endpoint = e;
      o.clients.retry.attempts = f.retries;
    }
    o.clients.transcript_dir = f.transcripts;
  }
  o.output_path = f.out;
  o.parallelism = f.parallelism;
  return o;
}

int cmd_run(const RunFlags& f) {
  qctrl::harness::BenchmarkOptions options;
  try {
    options = benchmark_options(f);
    const auto parent = std::filesystem::path(options.output_path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    const auto outcome = qctrl::harness::run_benchmark(options);
    for (const auto& m : outcome.messages) std::cerr << m << "\n";
    std::cerr << fmt::format("{} runs written to {} ({} faults, {} errors)\n", outcome.runs, f.out, outcome.faults,
                             outcome.errors);
    return outcome.ok() ? 0 : kExitFault;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_aggregate(const std::vector<std::string>& files, const std::string& out_dir, double threshold) {
  try {
    std::vector<qctrl::harness::ResultFile> parsed;
    for (const auto& f : files) parsed.push_back(qctrl::harness::read_result_file(f));
    const auto summary = qctrl::harness::aggregate(parsed, threshold);
    if (out_dir.empty()) {
      for (const auto& [name, table] : summary.tables()) std::cout << "## " << name << "\n" << table << "\n";
    } else {
      qctrl::harness::write_summary(summary, out_dir);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_verify(const std::string& level, const std::string& json_path) {
  qctrl::acceptance::Options options;
  options.level = level == "full" ? qctrl::acceptance::Level::kFull : qctrl::acceptance::Level::kFast;
  std::vector<qctrl::acceptance::CriterionResult> results;
  bool ok = true;
  for (int id = 1; id <= qctrl::acceptance::kCriterionCount; ++id) {
    results.push_back(qctrl::acceptance::run_criterion(id, options));
    std::cout << qctrl::acceptance::format_line(results.back()) << std::endl;
    ok = ok && results.back().passed;
  }
  if (!json_path.empty()) std::ofstream(json_path) << qctrl::acceptance::to_json(results).dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_tasks() {
  std::cout << "id\ttitle\tN\tT\tunit\tchannels\tnoise\treferences\n";
  for (int id = 1; id <= qctrl::tasks::kTaskCount; ++id) {
    const auto spec = qctrl::tasks::build_task(id);
    std::string channels, noise, refs;
    for (const auto& c : spec.channels) channels += (channels.empty() ? "" : ",") + c.name;
    for (const auto& p : spec.noise_sensitive_params()) noise += (noise.empty() ? "" : ",") + p;
    for (const auto& r : qctrl::tasks::reference_variants(id)) refs += (refs.empty() ? "" : ",") + r;
    std::cout << fmt::format("{}\t{}\t{}\t{:.6g}\t{}\t{}\t{}\t{}\n", qctrl::tasks::roman(id), spec.title,
                             spec.grid.n_slices(), spec.grid.total_time(),
                             spec.time_unit.empty() ? "-" : spec.time_unit, channels, noise.empty() ? "-" : noise,
                             refs.empty() ? "-" : refs);
  }
  return 0;
}

int cmd_fixtures(const std::vector<std::uint64_t>& seeds, const std::string& out) {
  const std::string table = qctrl::tasks::fixture_table(seeds);
  if (out.empty()) {
    std::cout << table;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return kExitConfig;
  }
  f << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qctrl-bench: quantum control benchmark runner"};
  app.set_version_flag("--version", qctrl::kVersion);
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run a method on one or more tasks and write JSONL results");
  run->add_option("--task", rf.task, "Task id (I..XVI or 1..16), comma list, or all")->capture_default_str();
  run->add_option("--method", rf.method, "vf-qctrl, hint-llm, simple-llm, grape, crab or crab-spsa")
      ->capture_default_str();
  run->add_option("--sigma", rf.sigma, "Relative calibration error")->check(CLI::NonNegativeNumber);
  run->add_option("--reps", rf.reps, "Independent repetitions")->check(CLI::PositiveNumber);
  run->add_option("-K,--K", rf.K, "Outer iterations")->check(CLI::PositiveNumber);
  run->add_option("--B-opt", rf.B_opt, "SPSA steps per outer iteration")->check(CLI::NonNegativeNumber);
  run->add_option("--epsilon", rf.epsilon, "Stop once 1 - F <= epsilon")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", rf.seed, "Base seed; repetition r uses seed + r");
  run->add_option("--noise-seed", rf.noise_seed, "Seed of the calibration-error signs");
  run->add_option("--provider-url", rf.provider_url, "Chat-completions base URL")->capture_default_str();
  run->add_option("--model", rf.model, "Model name at the provider");
  run->add_option("--token-env", rf.token_env, "Environment variable holding the API token")->capture_default_str();
  run->add_option("--timeout", rf.timeout, "Request timeout in seconds");
  run->add_option("--temperature", rf.temperature, "Sampling temperature; negative leaves the server default");
  run->add_option("--retries", rf.retries, "Attempts per request")->check(CLI::PositiveNumber);
  run->add_option("--out", rf.out, "Result file (JSONL)")->required();
  run->add_option("--parallelism", rf.parallelism, "Concurrent repetitions")->check(CLI::PositiveNumber);
  run->add_option("--transcripts", rf.transcripts, "Directory for per-repetition chat transcripts");
  run->add_option("--script", rf.script, "Scripted-client fixture (offline mode)")->check(CLI::ExistingFile);
  run->add_option("--n-slices", rf.n_slices, "Override the number of time slices");
  run->add_option("--total-time", rf.total_time, "Override the total time");
  run->add_option("--param", rf.params, "Override a task parameter, name=value");
  run->add_flag("--strict", rf.strict, "Refuse grid overrides on fixed-grid tasks");
  run->add_option("--fixture-seed", rf.fixture_seed, "Seed of the Task V/X random draws");
  run->add_option("--spsa-a", rf.spsa_a, "SPSA gain a (<= 0 picks it from the initial coefficients)");
  run->add_option("--spsa-c", rf.spsa_c, "SPSA perturbation c");
  run->add_option("--spsa-A", rf.spsa_A, "SPSA stability constant A");
  run->add_option("--grape-iterations", rf.grape_iterations, "GRAPE iteration cap");
  run->add_option("--crab-harmonics", rf.crab_harmonics, "CRAB harmonics per channel");
  run->add_option("--crab-budget", rf.crab_budget, "CRAB+SPSA steps");
  run->add_option("--crab-nm-iterations", rf.crab_nm_iterations, "CRAB Nelder-Mead iterations");
  run->add_option("--crab-initial", rf.crab_initial, "random or grape")->check(CLI::IsMember({"random", "grape"}));
  run->add_option("--row-stride", rf.row_stride, "Keep every n-th CRAB step as a row")->check(CLI::PositiveNumber);

  std::vector<std::string> agg_files;
  std::string agg_out;
  double threshold = 0.999;
  auto* agg = app.add_subcommand("aggregate", "Summarize result files into tab-separated tables");
  agg->add_option("files", agg_files, "Result files")->required()->check(CLI::ExistingFile);
  agg->add_option("--out-dir", agg_out, "Write one .tsv per table here instead of stdout");
  agg->add_option("--threshold", threshold, "Fidelity threshold for the crossing table");

  std::string level = "fast";
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--json", json_path, "Also write the report as JSON");

  auto* list = app.add_subcommand("tasks", "List the benchmark tasks");

  std::vector<std::uint64_t> seeds = {0};
  std::string fixtures_out;
  auto* fixtures = app.add_subcommand("fixtures", "Print the seeded Task V/X draws and noise signs");
  fixtures->add_option("--seeds", seeds, "Seeds to tabulate");
  fixtures->add_option("--out", fixtures_out, "Output file (stdout when empty)");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  if (*run) return cmd_run(rf);
  if (*agg) return cmd_aggregate(agg_files, agg_out, threshold);
  if (*verify) return cmd_verify(level, json_path);
  if (*list) return cmd_tasks();
  if (*fixtures) return cmd_fixtures(seeds, fixtures_out);
  return 0;
}

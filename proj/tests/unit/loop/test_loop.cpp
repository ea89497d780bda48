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

#include <nlohmann/json.hpp>

#include "qctrl/loop/loop.hpp"
#include "qctrl/tasks/task.hpp"

using namespace qctrl;
using namespace qctrl::loop;
using agents::ScriptedClient;
using agents::TokenUsage;

namespace {

std::string payload(const std::string& expression, const std::map<std::string, double>& params) {
  nlohmann::json j;
  j["g"]["expression"] = expression;
  j["g"]["parameters"] = params;
  return "Proposal:\n" + j.dump();
}

const std::string kWeak = payload("a*sin(3.14159*t/1.2) + b", {{"a", 0.2}, {"b", 0.1}});
const std::string kAbs = payload("a*abs(t)", {{"a", 0.2}});
const std::string kBullet = "- widen the pulse";

RunConfig base(int K, int B) {
  RunConfig c;
  c.task_id = 1;
  c.K = K;
  c.B_opt = B;
  c.epsilon = 1e-12;
  return c;
}

}  // namespace

TEST_CASE("budget termination and oracle accounting") {
  const auto spec = tasks::build_task(1);
  ScriptedClient client({kWeak, kWeak, kBullet, kWeak, kBullet}, TokenUsage{10, 5});
  std::vector<int> seen;
  const auto run = vf_qctrl_run(base(3, 7), spec, client, 0,
                                [&](const RunRecord&, const IterationRecord& it) { seen.push_back(it.iteration); });
  CHECK(seen == std::vector<int>{1, 2, 3});
  REQUIRE(run.iterations.size() == 3);
  CHECK(run.termination == Termination::kBudget);
  CHECK(run.iterations.back().termination == Termination::kBudget);
  CHECK_FALSE(run.iterations.front().termination);
  for (const auto& it : run.iterations) CHECK(it.oracle_calls == 2 * 7 + 1);
  CHECK(run.oracle_calls == 1 + 3 * 15);
  CHECK(run.client_calls == 5);
  CHECK(run.usage.total() == 5 * 15);
  CHECK(run.iterations[0].client_calls == 1);
  CHECK(run.iterations[1].client_calls == 2);
  CHECK(run.iterations[1].feedback == std::vector<std::string>{"widen the pulse"});
  CHECK(run.iterations[0].expression == "a*sin(3.14159*t/1.2) + b");
  CHECK(run.iterations[0].coefficients.size() == 2);
  double best = run.warm_start_fidelity;
  for (const auto& it : run.iterations) {
    best = std::max(best, *it.fidelity);
    CHECK(it.best_fidelity == best);
    CHECK(*it.fidelity == tasks::evaluate_protocol(spec, it.amplitudes));
  }
  CHECK(run.best_fidelity == best);
  if (run.best_iteration > 0) CHECK(run.best_protocol.provenance == tasks::Provenance::kAnsatz);
}

TEST_CASE("rejected proposals use up iterations without evaluations") {
  const auto spec = tasks::build_task(1);
  ScriptedClient client({kAbs, kAbs});
  const auto run = vf_qctrl_run(base(2, 5), spec, client);
  REQUIRE(run.iterations.size() == 2);
  for (const auto& it : run.iterations) {
    CHECK_FALSE(it.fidelity);
    CHECK(it.oracle_calls == 0);
    CHECK(it.rejections.size() == 1);
    CHECK(it.rejections[0].rfind("disallowed_function", 0) == 0);
  }
  CHECK(client.calls() == 2);
  CHECK(run.best_iteration == 0);
  CHECK(run.best_fidelity == run.warm_start_fidelity);
  CHECK(client.prompts()[1].find("[iteration 1] rejected: disallowed_function") != std::string::npos);
}

TEST_CASE("an exhausted client ends the run as a fault") {
  const auto spec = tasks::build_task(1);
  ScriptedClient client({kWeak});
  const auto run = vf_qctrl_run(base(4, 2), spec, client);
  CHECK(run.termination == Termination::kFault);
  REQUIRE(run.iterations.size() == 2);
  CHECK(run.iterations[1].termination == Termination::kFault);
  CHECK(run.fault.find("exhausted") != std::string::npos);
  CHECK(run.iterations[0].fidelity);
}

TEST_CASE("a failed reflection does not stop the run") {
  const auto spec = tasks::build_task(1);
  ScriptedClient client({kWeak, kWeak});
  const auto run = vf_qctrl_run(base(2, 0), spec, client);
  CHECK(run.termination == Termination::kBudget);
  CHECK(run.iterations[1].feedback.empty());
  CHECK(run.iterations[1].client_calls == 2);
}

TEST_CASE("numeric proposals for the pure language-model methods") {
  const auto spec = tasks::build_task(3);
  nlohmann::json j;
  j["nu"] = std::vector<double>(20, 1.5);
  RunConfig c = base(2, 0);
  c.task_id = 3;
  c.method = Method::kSimpleLlm;
  ScriptedClient client({j.dump(), j.dump()});
  const auto run = pure_llm_run(c, spec, client);
  REQUIRE(run.iterations.size() == 2);
  CHECK(client.calls() == 2);  // no reflection in simple mode
  CHECK(*run.iterations[0].fidelity == tasks::evaluate_protocol(spec, RealMatrix::Constant(1, 20, 1.5)));
  CHECK(run.iterations[0].oracle_calls == 1);
  CHECK(run.best_fidelity == std::max(run.warm_start_fidelity, *run.iterations[0].fidelity));
  CHECK_THROWS_AS(vf_qctrl_run(c, spec, client), std::invalid_argument);
  c.method = Method::kVfQctrl;
  CHECK_THROWS_AS(pure_llm_run(c, spec, client), std::invalid_argument);
}

TEST_CASE("noise is shared by every repetition") {
  const auto spec = tasks::build_task(1);
  RunConfig c = base(1, 3);
  c.sigma = 0.02;
  c.noise_seed = 4;
  c.repetitions = 3;
  const auto runs = run_repetitions(c, spec, [](int) {
    return std::make_shared<ScriptedClient>(std::vector<std::string>{kWeak});
  });
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].noise == runs[1].noise);
  CHECK(runs[0].noise == runs[2].noise);
  CHECK(runs[0].noise.signs().size() == 3);
  CHECK(runs[1].repetition == 1);
}

TEST_CASE("parallel repetitions equal serial ones") {
  const auto spec = tasks::build_task(1);
  RunConfig c = base(2, 20);
  c.repetitions = 4;
  c.seed = 12;
  auto factory = [](int) {
    return std::make_shared<ScriptedClient>(std::vector<std::string>{kWeak, kWeak, kBullet});
  };
  const auto serial = run_repetitions(c, spec, factory, {}, 1);
  const auto parallel = run_repetitions(c, spec, factory, {}, 4);
  for (int r = 0; r < 4; ++r) {
    CAPTURE(r);
    CHECK(serial[r].best_fidelity == parallel[r].best_fidelity);
    CHECK(serial[r].iterations[1].coefficients == parallel[r].iterations[1].coefficients);
  }
  CHECK(serial[0].iterations[0].coefficients != serial[1].iterations[0].coefficients);
}

TEST_CASE("repetition errors are collected or rethrown") {
  const auto spec = tasks::build_task(1);
  RunConfig c = base(1, 0);
  c.repetitions = 2;
  auto failing = [](int r) -> std::shared_ptr<agents::ChatClient> {
    if (r == 1) throw std::runtime_error("no client");
    return std::make_shared<ScriptedClient>(std::vector<std::string>{kWeak});
  };
  CHECK_THROWS_AS(run_repetitions(c, spec, failing), std::runtime_error);
  std::vector<int> errored, finished;
  RepetitionHooks hooks;
  hooks.on_error = [&](int r, std::exception_ptr) { errored.push_back(r); };
  hooks.on_finished = [&](const RunRecord& rec) { finished.push_back(rec.repetition); };
  run_repetitions(c, spec, failing, hooks);
  CHECK(errored == std::vector<int>{1});
  CHECK(finished == std::vector<int>{0});
  CHECK_THROWS_AS(run_repetitions(c, spec, {}), std::invalid_argument);
}

TEST_CASE("configuration checks") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.method = Method::kGrape;
  c.sigma = 0.01;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.sigma = 0.0;
  CHECK_NOTHROW(c.validate());
  for (auto mutate : std::vector<std::function<void(RunConfig&)>>{
           [](RunConfig& r) { r.K = 0; }, [](RunConfig& r) { r.B_opt = -1; },
           [](RunConfig& r) { r.task_id = 17; }, [](RunConfig& r) { r.repetitions = 0; },
           [](RunConfig& r) { r.sigma = -1; }, [](RunConfig& r) { r.classical_row_stride = 0; }}) {
    RunConfig bad;
    mutate(bad);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
  for (auto m : {Method::kVfQctrl, Method::kHintLlm, Method::kSimpleLlm, Method::kGrape, Method::kCrab,
                 Method::kCrabSpsa}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_FALSE(parse_method("spsa"));
  CHECK(uses_client(Method::kHintLlm));
  CHECK_FALSE(uses_client(Method::kCrab));
  CHECK(c.repetition_seed(3) == 3);
}

TEST_CASE("classical runs write strided rows") {
  const auto spec = tasks::build_task(4);
  RunConfig c;
  c.task_id = 4;
  c.method = Method::kCrabSpsa;
  c.crab_budget = 25;
  c.crab_harmonics = 2;
  c.classical_row_stride = 10;
  const auto run = classical_run(c, spec);
  std::vector<int> rows;
  for (const auto& it : run.iterations) rows.push_back(it.iteration);
  CHECK(rows == std::vector<int>{10, 20, 25});
  CHECK(run.iterations.back().oracle_calls == 51);
  CHECK(run.oracle_calls == 51);
  CHECK(run.iterations.back().amplitudes.size() > 0);
  CHECK(run.best_fidelity == doctest::Approx(tasks::evaluate_protocol(spec, run.best_protocol)));
  CHECK(run.best_protocol.provenance == tasks::Provenance::kBaseline);
  CHECK(run.model == "crab-spsa");
  CHECK_THROWS_AS(run_repetition(base(1, 1), spec, nullptr), std::invalid_argument);
}

TEST_CASE("best_of and running minimum") {
  std::vector<RunRecord> runs(4);
  const double f[] = {0.5, 0.9, 0.9, 0.7};
  for (int i = 0; i < 4; ++i) {
    runs[i].repetition = i;
    runs[i].best_fidelity = f[i];
  }
  CHECK(best_of(runs).repetition == 1);
  const auto m = running_min_infidelity(runs);
  CHECK(m.size() == 4);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(0.1));
  CHECK(m[3] == doctest::Approx(0.1));
  CHECK_THROWS_AS(best_of({}), std::invalid_argument);
}

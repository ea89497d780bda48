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

#include "qctrl/agents/prompt.hpp"
#include "qctrl/tasks/task.hpp"

using namespace qctrl::agents;
using qctrl::tasks::build_task;

namespace {

std::string read_file(const std::string& rel) {
  std::ifstream in(std::string(QCTRL_SOURCE_DIR) + "/" + rel, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

FeedbackMemory one_entry() {
  FeedbackMemory m;
  MemoryEntry e;
  e.iteration = 1;
  e.infidelity = 0.25;
  m.add(e);
  return m;
}

}  // namespace

TEST_CASE("embedded assets match the files on disk") {
  for (const auto& name : prompt_asset_names()) {
    CAPTURE(name);
    CHECK(prompt_asset(name) == read_file("prompts/" + name));
  }
  CHECK(prompt_asset_names().size() == 7);
  CHECK_THROWS_AS(prompt_asset("missing.md"), std::out_of_range);
}

TEST_CASE("hint block is carried verbatim") {
  const auto hint = trimmed(read_file("prompts/hint.md"));
  CHECK(hint.rfind("THINK!!", 0) == 0);
  for (auto mode : {PromptMode::kVfQctrl, PromptMode::kHint}) {
    const auto b = build_prompt(build_task(1), mode, one_entry(), 0.5);
    CHECK(b.hint_block == hint);
    CHECK(b.text().find(hint) != std::string::npos);
    CHECK(b.memory_block.rfind("PREVIOUS REPETITIONS", 0) == 0);
  }
}

TEST_CASE("simple mode omits memory") {
  const auto b = build_prompt(build_task(10), PromptMode::kSimple, one_entry(), 0.5);
  CHECK(b.memory_block.empty());
  CHECK(b.hint_block == trimmed(read_file("prompts/simple.md")));
  CHECK(b.text().find("PREVIOUS REPETITIONS") == std::string::npos);
}

TEST_CASE("schemas follow the mode") {
  const auto s = build_task(2);
  const auto ansatz = build_prompt(s, PromptMode::kVfQctrl, {}, 0.1);
  CHECK(ansatz.system_description.find(R"("x1": {"expression")") != std::string::npos);
  CHECK(ansatz.system_description.find(warm_start_line(0.1)) != std::string::npos);
  CHECK(ansatz.memory_block.empty());
  const auto numeric = build_prompt(s, PromptMode::kHint, {}, 0.1);
  CHECK(numeric.system_description.find("x2[49]") != std::string::npos);
  CHECK(numeric.text().find("{{") == std::string::npos);
  const auto msgs = numeric.messages();
  REQUIRE(msgs.size() == 2);
  CHECK(msgs[0].role == "system");
  CHECK(msgs[0].content + "\n\n" + msgs[1].content == numeric.text());
}

TEST_CASE("templates") {
  CHECK(fill_template("a {{x}} b {{y}}", {{"x", "1"}, {"y", "{{x}}"}}) == "a 1 b {{x}}");
  CHECK(fill_template("no slots", {}) == "no slots");
  CHECK(fill_template("open {{x", {}) == "open {{x");
  CHECK_THROWS_AS(fill_template("{{missing}}", {}), std::invalid_argument);
  CHECK(format_fidelity(0.5) == "0.5000000000");
  CHECK(to_string(PromptMode::kHint) == "hint");
}

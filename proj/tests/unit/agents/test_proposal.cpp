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

#include <random>

#include "qctrl/agents/proposal.hpp"
#include "qctrl/tasks/task.hpp"

using namespace qctrl;
using namespace qctrl::agents;
using qctrl::tasks::build_task;

namespace {

RejectCode code_of(std::string_view raw, ProposalKind kind, const tasks::TaskSpec& s) {
  const auto r = parse_proposal(raw, kind, s);
  REQUIRE_FALSE(r.ok());
  return r.error().code;
}

}  // namespace

TEST_CASE("JSON extraction skips prose and broken braces") {
  CHECK(extract_json_object(R"(text {not json} then {"a": {"b": "}"}} tail)") == R"j({"a": {"b": "}"}})j");
  CHECK_FALSE(extract_json_object("no braces"));
  CHECK_FALSE(extract_json_object("{ unterminated"));
}

TEST_CASE("ansatz payloads") {
  const auto s = build_task(1);
  const auto ok = parse_proposal(
      "Here:\n```json\n{\"g\": {\"expression\": \"a*sin(t)\", \"parameters\": {\"a\": 0.3}}, \"notes\": \"n\"}\n```",
      ProposalKind::kAnsatz, s);
  REQUIRE(ok.ok());
  CHECK(ok.value().ansatz.channels.size() == 1);
  CHECK(ok.value().notes == "n");
  CHECK(ok.value().raw.rfind("Here:", 0) == 0);

  CHECK(code_of("", ProposalKind::kAnsatz, s) == RejectCode::kUnparseablePayload);
  CHECK(code_of("no json", ProposalKind::kAnsatz, s) == RejectCode::kUnparseablePayload);
  CHECK(code_of(R"j({"h": {}})j", ProposalKind::kAnsatz, s) == RejectCode::kUnknownChannel);
  CHECK(code_of(R"j({"notes": "x"})j", ProposalKind::kAnsatz, s) == RejectCode::kMissingChannel);
  CHECK(code_of(R"j({"g": "a*t"})j", ProposalKind::kAnsatz, s) == RejectCode::kUnparseablePayload);
  CHECK(code_of(R"j({"g": {"expression": "a*t", "parameters": [1]}})j", ProposalKind::kAnsatz, s) ==
        RejectCode::kUnparseablePayload);
  CHECK(code_of(R"j({"g": {"expression": "a*t", "parameters": {"a": "1"}}})j", ProposalKind::kAnsatz, s) ==
        RejectCode::kUnparseablePayload);
  CHECK(code_of(R"j({"g": {"expression": "a*abs(t)", "parameters": {"a": 1}}})j", ProposalKind::kAnsatz, s) ==
        RejectCode::kDisallowedFunction);
  CHECK(code_of(R"j({"g": {"expression": "a*t", "parameters": {"a": 0}}})j", ProposalKind::kAnsatz, s) ==
        RejectCode::kZeroInitialValue);
  const auto bad = parse_proposal(R"j({"g": {"expression": "a*abs(t)", "parameters": {"a": 1}}})j",
                                  ProposalKind::kAnsatz, s);
  CHECK(bad.error().channel == "g");
  CHECK(bad.error().describe().find("disallowed_function") != std::string::npos);
}

TEST_CASE("numeric payloads") {
  const auto s = build_task(3);
  std::string row = "[";
  for (int k = 0; k < 20; ++k) row += (k ? ", " : "") + std::to_string(0.1 * k);
  row += "]";
  const auto ok = parse_proposal("{\"nu\": " + row + "}", ProposalKind::kNumeric, s);
  REQUIRE(ok.ok());
  CHECK(ok.value().amplitudes.cols() == 20);
  CHECK(ok.value().amplitudes(0, 3) == doctest::Approx(0.3));
  CHECK(code_of(R"j({"nu": [1, 2]})j", ProposalKind::kNumeric, s) == RejectCode::kWrongLength);
  CHECK(code_of(R"j({"nu": 3})j", ProposalKind::kNumeric, s) == RejectCode::kUnparseablePayload);
  std::string with_text = row;
  with_text.replace(1, 3, "\"x\"");
  CHECK(code_of("{\"nu\": " + with_text + "}", ProposalKind::kNumeric, s) == RejectCode::kUnparseablePayload);
  CHECK(to_string(RejectCode::kWrongLength) == "wrong_length");
}

TEST_CASE("parsing is total on arbitrary input") {
  const auto s = build_task(1);
  std::mt19937_64 rng(5);
  const std::string alphabet = "{}[]\":,gexpressionparameters a*t0.51-+eE\\\n ";
  for (int i = 0; i < 3000; ++i) {
    std::string raw;
    const int len = static_cast<int>(rng() % 80);
    for (int k = 0; k < len; ++k) raw += alphabet[rng() % alphabet.size()];
    for (auto kind : {ProposalKind::kAnsatz, ProposalKind::kNumeric}) {
      CHECK_NOTHROW((void)parse_proposal(raw, kind, s));
    }
  }
}

TEST_CASE("bullet parsing") {
  CHECK(parse_bullets("- one\n* two\n3. three\n4) four\n\xE2\x80\xA2 five\nplain") ==
        std::vector<std::string>{"one", "two", "three", "four", "five"});
  CHECK(parse_bullets("  just text  \n\nmore") == std::vector<std::string>{"just text", "more"});
  CHECK(parse_bullets("").empty());
  std::string many;
  for (int i = 0; i < 40; ++i) many += "- b" + std::to_string(i) + "\n";
  const auto capped = parse_bullets(many);
  CHECK(capped.size() == kMaxReflectionBullets);
  CHECK(capped.back() == "b9");
  std::string wide = "- ";
  for (int i = 0; i < 150; ++i) wide += "\xC3\xA9";  // two bytes each
  const auto cut = parse_bullets(wide);
  REQUIRE(cut.size() == 1);
  CHECK(cut[0].size() == kMaxBulletBytes);
  std::string odd = "- x";
  for (int i = 0; i < 150; ++i) odd += "\xC3\xA9";
  CHECK(parse_bullets(odd)[0].size() == kMaxBulletBytes - 1);
}

TEST_CASE("reflection failures are soft") {
  ScriptedClient c({"- keep the sine\n- shorten the ramp"}, TokenUsage{4, 6});
  const auto r = reflect(c, "attempt text", 0.01, 0.9);
  CHECK(r.ok);
  CHECK(r.bullets.size() == 2);
  CHECK(r.usage.total() == 10);
  CHECK(c.prompts()[0].find("attempt text") != std::string::npos);
  const auto failed = reflect(c, "again", 0.0, 0.9);
  CHECK_FALSE(failed.ok);
  CHECK(failed.bullets.empty());
  CHECK_FALSE(failed.error.empty());
}

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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>

#include "qctrl/agents/client.hpp"

using namespace qctrl::agents;
using namespace std::chrono_literals;

namespace {

class FlakyClient final : public ChatClient {
 public:
  explicit FlakyClient(int failures) : failures_(failures) {}
  ChatReply complete(const std::vector<ChatMessage>&) override {
    ++calls;
    if (calls <= failures_) throw TransportError("down");
    return ChatReply{"ok", {}};
  }
  std::string model_name() const override { return "flaky"; }
  int calls = 0;

 private:
  int failures_;
};

}  // namespace

TEST_CASE("request body") {
  Endpoint e;
  e.model = "m1";
  const auto body = nlohmann::json::parse(HttpChatClient::request_body(e, {{"system", "a"}, {"user", "b\xff"}}));
  CHECK(body["model"] == "m1");
  CHECK(body["messages"].size() == 2);
  CHECK(body["messages"][0]["role"] == "system");
  CHECK_FALSE(body.contains("temperature"));
  e.temperature = 0.5;
  CHECK(nlohmann::json::parse(HttpChatClient::request_body(e, {}))["temperature"] == 0.5);
}

TEST_CASE("response parsing") {
  const auto r = HttpChatClient::parse_response(
      R"({"choices":[{"message":{"role":"assistant","content":"hi"}}],"usage":{"prompt_tokens":7,"completion_tokens":3}})");
  CHECK(r.text == "hi");
  CHECK(r.usage.total() == 10);
  CHECK(HttpChatClient::parse_response(R"({"choices":[{"message":{"content":null}}]})").text.empty());
  CHECK_THROWS_AS(HttpChatClient::parse_response("not json"), TransportError);
  CHECK_THROWS_AS(HttpChatClient::parse_response(R"({"choices":[]})"), TransportError);
  CHECK_THROWS_AS(HttpChatClient::parse_response("[1]"), TransportError);
}

TEST_CASE("missing token is a configuration error") {
  Endpoint e;
  e.model = "m";
  e.token_env = "QCTRL_TEST_TOKEN_THAT_IS_NOT_SET";
  CHECK_THROWS_AS(HttpChatClient{e}, std::invalid_argument);
}

TEST_CASE("scripted client") {
  ScriptedClient c({"one", "two"}, TokenUsage{100, 50}, "fake");
  TokenUsage total;
  total += c.complete({{"user", "p1"}}).usage;
  CHECK(c.complete({{"system", "s"}, {"user", "p2"}}).text == "two");
  CHECK_THROWS_AS(c.complete({{"user", "p3"}}), TransportError);
  CHECK(c.calls() == 3);
  CHECK(c.remaining() == 0);
  CHECK(total.total() == 150);
  const auto prompts = c.prompts();
  CHECK(prompts[0] == "p1");
  CHECK(prompts[1].find("p2") != std::string::npos);
  CHECK(c.model_name() == "fake");
}

TEST_CASE("retry backoff doubles and rethrows") {
  std::vector<std::chrono::milliseconds> sleeps;
  auto flaky = std::make_shared<FlakyClient>(10);
  RetryingClient r(flaky, RetryPolicy{}, [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  CHECK_THROWS_AS(r.complete({}), TransportError);
  CHECK(flaky->calls == 3);
  CHECK(sleeps == std::vector<std::chrono::milliseconds>{1000ms, 2000ms});

  auto recovers = std::make_shared<FlakyClient>(1);
  sleeps.clear();
  RetryingClient ok(recovers, RetryPolicy{}, [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  CHECK(ok.complete({}).text == "ok");
  CHECK(sleeps.size() == 1);
  CHECK_THROWS_AS(RetryingClient(nullptr), std::invalid_argument);
  CHECK_THROWS_AS(RetryingClient(recovers, RetryPolicy{0}), std::invalid_argument);
}

TEST_CASE("script fixtures") {
  const auto f = parse_script_fixture(R"({
    "model": "fx", "usage": {"prompt": 2, "completion": 1},
    "repetitions": [["a"], ["b", "c"]],
    "tasks": {"XV": {"responses": ["x"]}, "3": {"repetitions": [["y"]]}}
  })");
  CHECK(f.model == "fx");
  CHECK(f.client_for(1, 0)->complete({}).text == "a");
  CHECK(f.client_for(1, 1)->remaining() == 2);
  CHECK(f.client_for(1, 2)->remaining() == 1);
  CHECK(f.client_for(15, 4)->complete({}).text == "x");
  CHECK(f.client_for(3, 0)->complete({}).usage.total() == 3);
  CHECK_THROWS_AS(parse_script_fixture("{}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_script_fixture("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_script_fixture(R"({"tasks": {"XX": {"responses": []}}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_script_fixture(R"({"responses": [1]})"), std::invalid_argument);
  const auto only_task = parse_script_fixture(R"({"tasks": {"I": {"responses": ["z"]}}})");
  CHECK_THROWS_AS(only_task.client_for(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(load_script_fixture("/nonexistent/fixture.json"), std::invalid_argument);
}

TEST_CASE("transcripts record replies and errors") {
  const auto path = std::filesystem::temp_directory_path() / "qctrl_transcript_test.jsonl";
  std::filesystem::remove(path);
  {
    auto inner = std::make_shared<ScriptedClient>(std::vector<std::string>{"r1"}, TokenUsage{1, 2});
    TranscriptClient t(inner, path.string());
    CHECK(t.complete({{"user", "q1"}}).text == "r1");
    CHECK_THROWS_AS(t.complete({{"user", "q2"}}), TransportError);
  }
  std::ifstream in(path);
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  const auto j1 = nlohmann::json::parse(l1), j2 = nlohmann::json::parse(l2);
  CHECK(j1["reply"] == "r1");
  CHECK(j1["usage"]["completion"] == 2);
  CHECK(j2.contains("error"));
  CHECK(j2["messages"][0]["content"] == "q2");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(TranscriptClient(std::make_shared<FlakyClient>(0), "/nonexistent/dir/t.jsonl"),
                  std::invalid_argument);
}

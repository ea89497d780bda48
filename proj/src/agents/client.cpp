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


#include "qctrl/agents/client.hpp"

// Eigen must come before httplib: <resolv.h> defines a _res macro.
#include "qctrl/tasks/task.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#ifdef QCTRL_WITH_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

namespace qctrl::agents {

using nlohmann::json;

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

SplitUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint URL needs a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  SplitUrl out;
  out.origin = url.substr(0, slash);
  out.path = slash == std::string::npos ? "" : url.substr(slash);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

std::string join_messages(const std::vector<ChatMessage>& messages) {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += "\n\n";
    out += m.content;
  }
  return out;
}

}  // namespace

HttpChatClient::HttpChatClient(Endpoint endpoint) : endpoint_(std::move(endpoint)) {
  if (endpoint_.model.empty()) throw std::invalid_argument("chat endpoint: model name is empty");
  const char* token = std::getenv(endpoint_.token_env.c_str());
  if (token == nullptr || *token == '\0') {
    throw std::invalid_argument("chat endpoint: environment variable " + endpoint_.token_env + " is not set");
  }
  token_ = token;
  split_url(endpoint_.base_url);
#ifndef QCTRL_WITH_HTTPS
  if (endpoint_.base_url.rfind("https://", 0) == 0) {
    throw std::invalid_argument("chat endpoint: built without https support");
  }
#endif
}

std::string HttpChatClient::request_body(const Endpoint& endpoint, const std::vector<ChatMessage>& messages) {
  json body;
  body["model"] = endpoint.model;
  body["messages"] = json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  if (endpoint.temperature >= 0.0) body["temperature"] = endpoint.temperature;
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

ChatReply HttpChatClient::parse_response(const std::string& body) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw TransportError("chat response is not a JSON object");
  ChatReply reply;
  try {
    const auto& msg = j.at("choices").at(0).at("message");
    if (msg.contains("content") && msg["content"].is_string()) reply.text = msg["content"].get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      reply.usage.prompt = j["usage"].value("prompt_tokens", 0LL);
      reply.usage.completion = j["usage"].value("completion_tokens", 0LL);
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what());
  }
  return reply;
}

ChatReply HttpChatClient::complete(const std::vector<ChatMessage>& messages) {
  const SplitUrl url = split_url(endpoint_.base_url);
  httplib::Client cli(url.origin);
  const auto timeout = std::chrono::duration<double>(endpoint_.timeout_seconds);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout).count();
  cli.set_connection_timeout(secs, 0);
  cli.set_read_timeout(secs, 0);
  cli.set_write_timeout(secs, 0);
  cli.set_bearer_token_auth(token_);
  auto res = cli.Post(url.path + "/chat/completions", request_body(endpoint_, messages), "application/json");
  if (!res) throw TransportError("chat request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw TransportError("chat request returned HTTP " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 300));
  }
  return parse_response(res->body);
}

RetryingClient::RetryingClient(std::shared_ptr<ChatClient> inner, RetryPolicy policy, Sleeper sleeper)
    : inner_(std::move(inner)), policy_(policy), sleep_(std::move(sleeper)) {
  if (!inner_) throw std::invalid_argument("RetryingClient: null client");
  if (policy_.attempts < 1) throw std::invalid_argument("RetryingClient: attempts must be >= 1");
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

ChatReply RetryingClient::complete(const std::vector<ChatMessage>& messages) {
  auto delay = policy_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_->complete(messages);
    } catch (const TransportError&) {
      if (attempt >= policy_.attempts) throw;
    }
    sleep_(delay);
    delay = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(delay.count()) * policy_.multiplier));
  }
}

ScriptedClient::ScriptedClient(std::vector<std::string> script, TokenUsage usage_per_call, std::string model)
    : script_(std::move(script)), usage_(usage_per_call), model_(std::move(model)) {}

ChatReply ScriptedClient::complete(const std::vector<ChatMessage>& messages) {
  std::lock_guard lock(mu_);
  prompts_.push_back(join_messages(messages));
  if (next_ >= script_.size()) {
    throw TransportError("scripted client exhausted after " + std::to_string(script_.size()) + " responses");
  }
  return ChatReply{script_[next_++], usage_};
}

std::size_t ScriptedClient::calls() const {
  std::lock_guard lock(mu_);
  return prompts_.size();
}

std::size_t ScriptedClient::remaining() const {
  std::lock_guard lock(mu_);
  return script_.size() - next_;
}

std::vector<std::string> ScriptedClient::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

std::unique_ptr<ScriptedClient> ScriptFixture::client_for(int task_id, int repetition) const {
  const auto it = tasks.find(task_id);
  const auto& scripts = it != tasks.end() ? it->second : repetitions;
  if (scripts.empty()) {
    throw std::invalid_argument("script fixture has no responses for task " + std::to_string(task_id));
  }
  const auto& script = scripts[static_cast<std::size_t>(repetition) % scripts.size()];
  return std::make_unique<ScriptedClient>(script, usage, model);
}

namespace {

std::vector<std::vector<std::string>> read_scripts(const json& j) {
  std::vector<std::vector<std::string>> out;
  if (j.contains("responses")) out.push_back(j["responses"].get<std::vector<std::string>>());
  if (j.contains("repetitions")) {
    for (const auto& r : j["repetitions"]) out.push_back(r.get<std::vector<std::string>>());
  }
  return out;
}

}  // namespace

ScriptFixture parse_script_fixture(const std::string& json_text) {
  const json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("script fixture is not a JSON object");
  ScriptFixture f;
  try {
    f.model = j.value("model", std::string("scripted"));
    if (j.contains("usage")) {
      f.usage.prompt = j["usage"].value("prompt", 0LL);
      f.usage.completion = j["usage"].value("completion", 0LL);
    }
    f.repetitions = read_scripts(j);
    if (j.contains("tasks")) {
      for (const auto& [key, value] : j["tasks"].items()) {
        const int id = tasks::parse_task_id(key).value_or(0);
        if (id == 0) throw std::invalid_argument("script fixture: unknown task '" + key + "'");
        f.tasks[id] = read_scripts(value);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("script fixture: ") + e.what());
  }
  if (f.repetitions.empty() && f.tasks.empty()) {
    throw std::invalid_argument("script fixture needs 'responses', 'repetitions' or 'tasks'");
  }
  return f;
}

ScriptFixture load_script_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read script fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script_fixture(ss.str());
}

TranscriptClient::TranscriptClient(std::shared_ptr<ChatClient> inner, std::string path)
    : inner_(std::move(inner)), path_(std::move(path)) {
  std::ofstream probe(path_, std::ios::app);
  if (!probe) throw std::invalid_argument("cannot open transcript file " + path_);
}

ChatReply TranscriptClient::complete(const std::vector<ChatMessage>& messages) {
  json line;
  line["messages"] = json::array();
  for (const auto& m : messages) line["messages"].push_back({{"role", m.role}, {"content", m.content}});
  auto write = [&] {
    std::ofstream out(path_, std::ios::app);
    out << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  };
  try {
    ChatReply reply = inner_->complete(messages);
    line["reply"] = reply.text;
    line["usage"] = {{"prompt", reply.usage.prompt}, {"completion", reply.usage.completion}};
    write();
    return reply;
  } catch (const TransportError& e) {
    line["error"] = e.what();
    write();
    throw;
  }
}

}  // namespace qctrl::agents

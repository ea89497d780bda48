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

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qctrl::agents {

struct TokenUsage {
  long long prompt = 0;
  long long completion = 0;

  long long total() const { return prompt + completion; }
  TokenUsage& operator+=(const TokenUsage& o) {
    prompt += o.prompt;
    completion += o.completion;
    return *this;
  }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

struct ChatReply {
  std::string text;
  TokenUsage usage;
};

/// Network failures, bad HTTP status, malformed responses, and scripted
/// clients running out of responses.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;

  /// Throws TransportError.
  virtual ChatReply complete(const std::vector<ChatMessage>& messages) = 0;

  virtual std::string model_name() const = 0;
};

struct Endpoint {
  std::string base_url = "https://api.openai.com/v1";
  std::string model;
  std::string token_env = "QCTRL_API_KEY";
  double timeout_seconds = 300.0;
  double temperature = -1.0;  // negative: let the server choose
};

/// OpenAI-style chat-completions client: POST {base_url}/chat/completions.
/// The bearer token is read from the environment variable named in the
/// endpoint at construction; a missing token throws std::invalid_argument.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(Endpoint endpoint);

  ChatReply complete(const std::vector<ChatMessage>& messages) override;
  std::string model_name() const override { return endpoint_.model; }

  /// Request body as sent on the wire.
  static std::string request_body(const Endpoint& endpoint, const std::vector<ChatMessage>& messages);

  /// Parses a chat-completions response body. Throws TransportError.
  static ChatReply parse_response(const std::string& body);

 private:
  Endpoint endpoint_;
  std::string token_;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
};

/// Retries TransportError with exponential backoff and rethrows the last
/// one once attempts are exhausted.
class RetryingClient final : public ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingClient(std::shared_ptr<ChatClient> inner, RetryPolicy policy = {}, Sleeper sleeper = {});

  ChatReply complete(const std::vector<ChatMessage>& messages) override;
  std::string model_name() const override { return inner_->model_name(); }

 private:
  std::shared_ptr<ChatClient> inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

/// Replays a fixed list of responses in order, recording every request.
class ScriptedClient final : public ChatClient {
 public:
  explicit ScriptedClient(std::vector<std::string> script, TokenUsage usage_per_call = {},
                          std::string model = "scripted");

  ChatReply complete(const std::vector<ChatMessage>& messages) override;
  std::string model_name() const override { return model_; }

  std::size_t calls() const;
  std::size_t remaining() const;
  /// Concatenated message contents of each call, in call order.
  std::vector<std::string> prompts() const;

 private:
  std::vector<std::string> script_;
  TokenUsage usage_;
  std::string model_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
  std::vector<std::string> prompts_;
};

/// Offline fixture for scripted runs:
///   {"model": "...", "usage": {"prompt": n, "completion": m},
///    "responses": [...] | "repetitions": [[...], ...],
///    "tasks": {"I": {"responses": ...} | {"repetitions": ...}, ...}}
/// A task entry overrides the top-level scripts for that task. Repetition r
/// uses script r mod (number of scripts).
struct ScriptFixture {
  std::string model = "scripted";
  TokenUsage usage;
  std::vector<std::vector<std::string>> repetitions;
  std::map<int, std::vector<std::vector<std::string>>> tasks;

  /// Throws std::invalid_argument when no script covers the task.
  std::unique_ptr<ScriptedClient> client_for(int task_id, int repetition) const;
};

ScriptFixture parse_script_fixture(const std::string& json_text);
ScriptFixture load_script_fixture(const std::string& path);

/// Appends one JSON line per call (messages, reply or error) to a file.
class TranscriptClient final : public ChatClient {
 public:
  TranscriptClient(std::shared_ptr<ChatClient> inner, std::string path);

  ChatReply complete(const std::vector<ChatMessage>& messages) override;
  std::string model_name() const override { return inner_->model_name(); }

 private:
  std::shared_ptr<ChatClient> inner_;
  std::string path_;
};

}  // namespace qctrl::agents

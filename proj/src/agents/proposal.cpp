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


#include "qctrl/agents/proposal.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "qctrl/agents/prompt.hpp"

namespace qctrl::agents {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxScanBytes = 1 << 20;

/// End (one past the closing brace) of the block opening at `start`, or npos.
std::size_t match_brace(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_string) {
      if (ch == '\\') {
        ++i;
      } else if (ch == '"') {
        in_string = false;
      }
      continue;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '{') {
      ++depth;
    } else if (ch == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

Rejection reject(RejectCode code, std::string message, std::string channel = {}) {
  return Rejection{code, std::move(message), Span{}, std::move(channel)};
}

std::string cut_utf8(std::string s, std::size_t limit) {
  if (s.size() <= limit) return s;
  std::size_t end = limit;
  while (end > 0 && (static_cast<unsigned char>(s[end]) & 0xC0) == 0x80) --end;
  s.resize(end);
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Strips a list marker; nullopt when the line has none.
std::optional<std::string_view> strip_marker(std::string_view line) {
  if (line.empty()) return std::nullopt;
  if (line.front() == '-' || line.front() == '*' || line.front() == '+') return trim(line.substr(1));
  if (line.rfind("\xE2\x80\xA2", 0) == 0) return trim(line.substr(3));
  std::size_t digits = 0;
  while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) ++digits;
  if (digits > 0 && digits < line.size() && (line[digits] == '.' || line[digits] == ')')) {
    return trim(line.substr(digits + 1));
  }
  return std::nullopt;
}

Result<ProposalResponse, Rejection> parse_payload(const json& payload, ProposalKind kind,
                                                  const tasks::TaskSpec& spec) {
  ProposalResponse out;
  out.kind = kind;
  for (const auto& [key, value] : payload.items()) {
    if (key == "notes") {
      if (value.is_string()) out.notes = value.get<std::string>();
      continue;
    }
    if (spec.channel_index(key) < 0) {
      return reject(RejectCode::kUnknownChannel, "task has no control channel '" + key + "'", key);
    }
  }
  const int n = spec.grid.n_slices();
  if (kind == ProposalKind::kNumeric) out.amplitudes = RealMatrix::Zero(spec.n_channels(), n);
  for (int c = 0; c < spec.n_channels(); ++c) {
    const std::string& name = spec.channels[c].name;
    if (!payload.contains(name)) {
      return reject(RejectCode::kMissingChannel, "channel '" + name + "' is missing", name);
    }
    const json& entry = payload[name];
    if (kind == ProposalKind::kNumeric) {
      if (!entry.is_array()) {
        return reject(RejectCode::kUnparseablePayload, "channel '" + name + "' must be a list of numbers", name);
      }
      if (entry.size() != static_cast<std::size_t>(n)) {
        return reject(RejectCode::kWrongLength,
                      fmt::format("channel '{}' has {} values, expected {}", name, entry.size(), n), name);
      }
      for (int k = 0; k < n; ++k) {
        const json& v = entry[static_cast<std::size_t>(k)];
        if (!v.is_number()) {
          return reject(RejectCode::kUnparseablePayload,
                        fmt::format("channel '{}' value {} is not a number", name, k), name);
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
          return reject(RejectCode::kNonFiniteAmplitude,
                        fmt::format("channel '{}' value {} is not finite", name, k), name);
        }
        out.amplitudes(c, k) = x;
      }
      continue;
    }
    if (!entry.is_object() || !entry.contains("expression") || !entry["expression"].is_string()) {
      return reject(RejectCode::kUnparseablePayload,
                    "channel '" + name + "' needs an \"expression\" string", name);
    }
    symbolic::ChannelAnsatz ch;
    ch.channel = name;
    auto parsed = symbolic::parse(entry["expression"].get<std::string>());
    if (!parsed) {
      Rejection r = parsed.error();
      r.channel = name;
      return r;
    }
    ch.expression = std::move(parsed).value();
    if (entry.contains("parameters")) {
      const json& params = entry["parameters"];
      if (!params.is_object()) {
        return reject(RejectCode::kUnparseablePayload,
                      "channel '" + name + "' parameters must be an object of numbers", name);
      }
      for (const auto& [pname, pvalue] : params.items()) {
        if (!pvalue.is_number()) {
          return reject(RejectCode::kUnparseablePayload,
                        "parameter '" + pname + "' of channel '" + name + "' is not a number", name);
        }
        ch.parameters.emplace_back(pname, pvalue.get<double>());
      }
    }
    out.ansatz.channels.push_back(std::move(ch));
  }
  if (kind == ProposalKind::kAnsatz) {
    if (auto bad = symbolic::validate(out.ansatz)) return *bad;
  }
  return out;
}

}  // namespace

std::optional<std::string> extract_json_object(std::string_view text) {
  if (text.size() > kMaxScanBytes) text = text.substr(0, kMaxScanBytes);
  for (std::size_t i = text.find('{'); i != std::string_view::npos; i = text.find('{', i + 1)) {
    const std::size_t end = match_brace(text, i);
    if (end == std::string_view::npos) continue;
    const std::string candidate(text.substr(i, end - i));
    const json j = json::parse(candidate, nullptr, false);
    if (!j.is_discarded() && j.is_object()) return candidate;
  }
  return std::nullopt;
}

Result<ProposalResponse, Rejection> parse_proposal(std::string_view raw, ProposalKind kind,
                                                   const tasks::TaskSpec& spec) {
  try {
    if (trim(raw).empty()) return reject(RejectCode::kUnparseablePayload, "response is empty");
    const auto block = extract_json_object(raw);
    if (!block) return reject(RejectCode::kUnparseablePayload, "response contains no JSON object");
    auto result = parse_payload(json::parse(*block), kind, spec);
    if (!result) return result;
    ProposalResponse out = std::move(result).value();
    out.raw = std::string(raw);
    return out;
  } catch (const std::exception& e) {
    return reject(RejectCode::kUnparseablePayload, std::string("payload could not be read: ") + e.what());
  }
}

std::vector<std::string> parse_bullets(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  std::vector<std::string> marked, plain;
  for (auto line : lines) {
    if (auto body = strip_marker(line)) {
      if (!body->empty()) marked.emplace_back(*body);
    } else {
      plain.emplace_back(line);
    }
  }
  std::vector<std::string> out = marked.empty() ? plain : marked;
  if (out.size() > kMaxReflectionBullets) out.resize(kMaxReflectionBullets);
  for (auto& b : out) b = cut_utf8(std::move(b), kMaxBulletBytes);
  return out;
}

Reflection reflect(ChatClient& client, std::string_view previous_reasoning, double fidelity_delta,
                   double fidelity) {
  const std::map<std::string, std::string> slots{
      {"delta", fmt::format("{:+.6e}", fidelity_delta)},
      {"fidelity", format_fidelity(fidelity)},
      {"attempt", std::string(previous_reasoning)},
  };
  Reflection out;
  try {
    const std::string prompt = fill_template(prompt_asset("reflection.md"), slots);
    const ChatReply reply = client.complete({{"user", prompt}});
    out.usage = reply.usage;
    out.bullets = parse_bullets(reply.text);
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    out.bullets.clear();
    spdlog::warn("reflection skipped: {}", e.what());
  }
  return out;
}

}  // namespace qctrl::agents

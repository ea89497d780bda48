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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qctrl/agents/client.hpp"
#include "qctrl/result.hpp"
#include "qctrl/symbolic/ansatz.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::agents {

enum class ProposalKind { kAnsatz, kNumeric };

struct ProposalResponse {
  ProposalKind kind = ProposalKind::kAnsatz;
  symbolic::ControlAnsatz ansatz;  // channels in task order
  RealMatrix amplitudes;           // numeric mode: channels x n_slices
  std::string notes;               // optional "notes" string of the payload
  std::string raw;
};

/// First balanced {...} block of `text` that parses as a JSON object.
std::optional<std::string> extract_json_object(std::string_view text);

/// Never throws. Ansatz payload: {"<channel>": {"expression": "...",
/// "parameters": {"a": 1.0, ...}}, ...}. Numeric payload:
/// {"<channel>": [n_slices numbers], ...}. Either may carry "notes".
Result<ProposalResponse, Rejection> parse_proposal(std::string_view raw, ProposalKind kind,
                                                   const tasks::TaskSpec& spec);

inline constexpr std::size_t kMaxReflectionBullets = 10;
inline constexpr std::size_t kMaxBulletBytes = 200;

/// Lines starting with "-", "*", "+" or "1." style markers; when none carry
/// a marker, every non-empty line. At most 10 bullets, each cut to 200 bytes
/// on a UTF-8 boundary.
std::vector<std::string> parse_bullets(std::string_view text);

struct Reflection {
  std::vector<std::string> bullets;
  TokenUsage usage;
  bool ok = true;
  std::string error;
};

/// Asks the reflection agent for feedback on the previous attempt. Client
/// failures give an empty, not-ok result and a logged warning.
Reflection reflect(ChatClient& client, std::string_view previous_reasoning, double fidelity_delta,
                   double fidelity);

}  // namespace qctrl::agents

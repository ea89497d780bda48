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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qctrl/agents/client.hpp"
#include "qctrl/agents/memory.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::agents {

/// vf-qctrl asks for analytic expressions; hint and simple ask for amplitude
/// lists and differ in the guidance block.
enum class PromptMode { kVfQctrl, kHint, kSimple };

std::string_view to_string(PromptMode mode);

struct PromptBundle {
  std::string system_description;
  std::string hint_block;
  std::string memory_block;
  std::string trailing_instruction;

  /// Non-empty blocks in order, separated by blank lines.
  std::string text() const;
  /// System message with the task, user message with the rest. Joining the
  /// contents with a blank line gives text().
  std::vector<ChatMessage> messages() const;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

/// Text of an asset shipped in prompts/ (e.g. "hint.md"). Throws
/// std::out_of_range for unknown names.
std::string_view prompt_asset(std::string_view name);
std::vector<std::string> prompt_asset_names();

/// Replaces every {{slot}}. Throws std::invalid_argument when the template
/// names a slot missing from `slots`.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& slots);

/// Fidelity as printed in prompts.
std::string format_fidelity(double fidelity);

/// The line that reports the zero-amplitude fidelity.
std::string warm_start_line(double fidelity);

/// Simple mode ignores `memory`. `inner_budget` is the coefficient
/// optimizer's step count quoted in the vf-qctrl template.
PromptBundle build_prompt(const tasks::TaskSpec& spec, PromptMode mode, const FeedbackMemory& memory,
                          double warm_start_fidelity, int inner_budget = 1000);

}  // namespace qctrl::agents

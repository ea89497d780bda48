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


#include "qctrl/agents/prompt.hpp"

#include <stdexcept>
#include <fmt/format.h>

#include "prompt_assets.hpp"
#include "qctrl/agents/describe.hpp"

namespace qctrl::agents {

namespace {

std::string trim_trailing_newlines(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

std::string asset(std::string_view name) { return trim_trailing_newlines(prompt_asset(name)); }

std::string ansatz_schema(const tasks::TaskSpec& spec) {
  std::string out = "{\n";
  for (int c = 0; c < spec.n_channels(); ++c) {
    out += fmt::format(R"(  "{}": {{"expression": "<expression in t>", "parameters": {{"<name>": <initial value>, ...}}}})",
                       spec.channels[c].name);
    out += c + 1 < spec.n_channels() ? ",\n" : "\n";
  }
  return out + "}";
}

std::string numeric_schema(const tasks::TaskSpec& spec) {
  const int last = spec.grid.n_slices() - 1;
  std::string out = "{\n";
  for (int c = 0; c < spec.n_channels(); ++c) {
    const auto& name = spec.channels[c].name;
    out += fmt::format(R"(  "{0}": [{0}[0], {0}[1], ..., {0}[{1}]])", name, last);
    out += c + 1 < spec.n_channels() ? ",\n" : "\n";
  }
  return out + "}";
}

}  // namespace

std::string_view to_string(PromptMode mode) {
  switch (mode) {
    case PromptMode::kVfQctrl: return "vf-qctrl";
    case PromptMode::kHint: return "hint";
    case PromptMode::kSimple: return "simple";
  }
  return "?";
}

std::string PromptBundle::text() const {
  std::string out;
  for (const std::string* block : {&system_description, &hint_block, &memory_block, &trailing_instruction}) {
    if (block->empty()) continue;
    if (!out.empty()) out += "\n\n";
    out += *block;
  }
  return out;
}

std::vector<ChatMessage> PromptBundle::messages() const {
  PromptBundle rest = *this;
  rest.system_description.clear();
  return {{"system", system_description}, {"user", rest.text()}};
}

std::string_view prompt_asset(std::string_view name) {
  for (std::size_t i = 0; i < detail::kPromptAssetCount; ++i) {
    if (detail::kPromptAssets[i].name == name) return detail::kPromptAssets[i].text;
  }
  throw std::out_of_range("unknown prompt asset '" + std::string(name) + "'");
}

std::vector<std::string> prompt_asset_names() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < detail::kPromptAssetCount; ++i) out.emplace_back(detail::kPromptAssets[i].name);
  return out;
}

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& slots) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    const std::string key(tmpl.substr(open + 2, close - open - 2));
    const auto it = slots.find(key);
    if (it == slots.end()) throw std::invalid_argument("template slot '" + key + "' has no value");
    out.append(tmpl.substr(pos, open - pos));
    out += it->second;
    pos = close + 2;
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::string format_fidelity(double fidelity) { return fmt::format("{:.10f}", fidelity); }

std::string warm_start_line(double fidelity) {
  return "With every control amplitude set to zero the fidelity is F = " + format_fidelity(fidelity) + ".";
}

PromptBundle build_prompt(const tasks::TaskSpec& spec, PromptMode mode, const FeedbackMemory& memory,
                          double warm_start_fidelity, int inner_budget) {
  const bool ansatz = mode == PromptMode::kVfQctrl;
  const std::map<std::string, std::string> slots{
      {"task", describe_task(spec)},
      {"warm_start", warm_start_line(warm_start_fidelity)},
      {"budget", std::to_string(inner_budget)},
      {"total_time", fmt::format("{:.6g}", spec.grid.total_time())},
      {"n_slices", std::to_string(spec.grid.n_slices())},
      {"last_slice", std::to_string(spec.grid.n_slices() - 1)},
      {"schema", ansatz ? ansatz_schema(spec) : numeric_schema(spec)},
  };
  PromptBundle b;
  b.system_description = trim_trailing_newlines(
      fill_template(prompt_asset(ansatz ? "system_function_class.md" : "system_numeric.md"), slots));
  b.hint_block = asset(mode == PromptMode::kSimple ? "simple.md" : "hint.md");
  if (mode != PromptMode::kSimple) b.memory_block = memory.render();
  b.trailing_instruction = asset(ansatz ? "instruction_function_class.md" : "instruction_numeric.md");
  return b;
}

}  // namespace qctrl::agents

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


#include "qctrl/agents/memory.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace qctrl::agents {

namespace {

bool better(const MemoryEntry* a, const MemoryEntry* b) {
  if (*a->infidelity != *b->infidelity) return *a->infidelity < *b->infidelity;
  return a->iteration < b->iteration;
}

}  // namespace

void FeedbackMemory::add(MemoryEntry entry) { entries_.push_back(std::move(entry)); }

void FeedbackMemory::attach_feedback(int iteration, std::vector<std::string> bullets) {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->iteration == iteration) {
      it->feedback = std::move(bullets);
      return;
    }
  }
}

std::vector<const MemoryEntry*> FeedbackMemory::view() const {
  std::vector<const MemoryEntry*> evaluated;
  for (const auto& e : entries_) {
    if (!e.rejected()) evaluated.push_back(&e);
  }
  std::sort(evaluated.begin(), evaluated.end(), better);
  std::vector<const MemoryEntry*> out(evaluated.begin(),
                                      evaluated.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(2, evaluated.size())));
  const std::size_t first_recent = entries_.size() > 2 ? entries_.size() - 2 : 0;
  for (std::size_t i = first_recent; i < entries_.size(); ++i) {
    const MemoryEntry* e = &entries_[i];
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

std::optional<double> FeedbackMemory::best_infidelity() const {
  std::optional<double> best;
  for (const auto& e : entries_) {
    if (!e.rejected() && (!best || *e.infidelity < *best)) best = e.infidelity;
  }
  return best;
}

std::string FeedbackMemory::render() const {
  if (entries_.empty()) return {};
  std::string out = "PREVIOUS REPETITIONS\n";
  for (const MemoryEntry* e : view()) {
    if (e->rejected()) {
      out += fmt::format("[iteration {}] rejected: {}\n", e->iteration, e->rejection);
    } else {
      out += fmt::format("[iteration {}] infidelity 1 - F = {:.6e}\n", e->iteration, *e->infidelity);
    }
    if (!e->rendered.empty()) out += e->rendered + "\n";
  }
  if (const auto best = best_infidelity()) {
    out += fmt::format("\nBEST SO FAR\ninfidelity 1 - F = {:.6e}\n", *best);
  }
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->feedback.empty()) continue;
    out += "\nFEEDBACK\n";
    for (const auto& b : it->feedback) out += "- " + b + "\n";
    break;
  }
  out.pop_back();
  return out;
}

FeedbackMemory update_memory(FeedbackMemory memory, MemoryEntry entry) {
  memory.add(std::move(entry));
  return memory;
}

}  // namespace qctrl::agents

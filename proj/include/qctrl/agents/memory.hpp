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
#include <vector>

namespace qctrl::agents {

struct MemoryEntry {
  int iteration = 0;
  /// Expression lines or amplitude lists, as shown to the proposer.
  std::string rendered;
  /// 1 - F after optimization; empty for rejected proposals.
  std::optional<double> infidelity;
  /// Rejection::describe() text for rejected proposals.
  std::string rejection;
  /// Reflection bullets attached after the iteration.
  std::vector<std::string> feedback;

  bool rejected() const { return !infidelity.has_value(); }
};

/// Full history of a repetition. Prompts only ever see view(): the best two
/// evaluated entries and the two most recent entries, deduplicated, best
/// first and the rest in iteration order.
class FeedbackMemory {
 public:
  void add(MemoryEntry entry);
  /// Attaches bullets to the entry of `iteration`; ignored when absent.
  void attach_feedback(int iteration, std::vector<std::string> bullets);

  const std::vector<MemoryEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::vector<const MemoryEntry*> view() const;
  /// Best infidelity among evaluated entries.
  std::optional<double> best_infidelity() const;

  /// The memory block of a prompt; empty when there are no entries.
  std::string render() const;

 private:
  std::vector<MemoryEntry> entries_;
};

FeedbackMemory update_memory(FeedbackMemory memory, MemoryEntry entry);

}  // namespace qctrl::agents

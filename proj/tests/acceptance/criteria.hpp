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

#include <json.hpp>

#include "qctrl/tasks/reference.hpp"

namespace qctrl::acceptance {

enum class Level { kFast, kFull };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;  // only parts of a criterion are ever skipped; see detail
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  Level level = Level::kFast;
  /// Replaces the Task I field constants (negative control).
  std::optional<tasks::CdParams> cd_override;
  /// Scratch space for result files; a fresh temporary directory when empty.
  std::string scratch_dir;
};

inline constexpr int kCriterionCount = 12;

/// Never throws: an exception inside a check becomes a failed result.
CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const Options& options);

/// "PASS  C1  name  (0.12 s)  detail"
std::string format_line(const CriterionResult& result);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace qctrl::acceptance

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

#include <string>
#include <vector>

#include <json.hpp>

namespace qctrl::harness {

struct ResultFile {
  std::string path;
  nlohmann::json header;
  std::vector<nlohmann::json> rows;
  std::vector<nlohmann::json> runs;
};

/// Throws std::runtime_error for unreadable files, malformed lines, a
/// missing header or a schema version other than kSchemaVersion.
ResultFile read_result_file(const std::string& path);
ResultFile parse_result_text(const std::string& text, const std::string& name = "<memory>");

/// Tab-separated tables keyed by file name.
struct Summary {
  std::string best_fidelity;    // per task/method/model/sigma, best repetition
  std::string distributions;    // per repetition best fidelity
  std::string convergence;      // 1 - best F per iteration and repetition
  std::string threshold;        // first iteration with best F >= threshold
  std::string tokens;           // per repetition
  std::string token_totals;     // best-run tokens per method/model/sigma over tasks

  std::vector<std::pair<std::string, std::string>> tables() const;
};

Summary aggregate(const std::vector<ResultFile>& files, double threshold_fidelity = 0.999);

/// Writes every table of `summary` into `directory` (created if needed).
void write_summary(const Summary& summary, const std::string& directory);

}  // namespace qctrl::harness

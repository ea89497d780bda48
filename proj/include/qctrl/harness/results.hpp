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

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "qctrl/loop/loop.hpp"

namespace qctrl::harness {

inline constexpr int kSchemaVersion = 1;

/// FNV-1a 64 over the IEEE-754 bit patterns of the amplitudes, row-major,
/// each value fed least-significant byte first. "" for an empty matrix.
std::string amplitude_digest(const RealMatrix& amplitudes);

nlohmann::json config_to_json(const loop::RunConfig& config);

/// First line of every result file.
nlohmann::json header_record(const nlohmann::json& effective_config);

/// One row per (repetition, iteration).
nlohmann::json row_record(const loop::RunRecord& run, const loop::IterationRecord& it);

/// Summary line written when a repetition ends.
nlohmann::json run_record(const loop::RunRecord& run);

/// Line-delimited JSON file: a header, then rows and run summaries. Every
/// line is flushed as it is written.
class JsonlWriter {
 public:
  /// Throws std::runtime_error when the file cannot be opened.
  JsonlWriter(const std::string& path, const nlohmann::json& effective_config);

  void write(const nlohmann::json& record);

 private:
  std::ofstream out_;
  std::mutex mu_;
};

/// Accepts rows from concurrently running repetitions and hands them to the
/// writer in (group, repetition, iteration) order. Rows of the lowest
/// unfinished repetition pass straight through; the others are held until
/// every earlier repetition of the group has finished.
class OrderedRowSink {
 public:
  OrderedRowSink(JsonlWriter& writer, int repetitions);

  void on_iteration(const loop::RunRecord& run, const loop::IterationRecord& it);
  void on_run_finished(const loop::RunRecord& run);
  /// Repetition r failed without a run record; releases its held rows.
  void on_run_aborted(int repetition);

 private:
  void drain_locked();

  JsonlWriter& writer_;
  std::mutex mu_;
  int head_ = 0;
  int count_;
  std::map<int, std::vector<nlohmann::json>> held_;
  std::map<int, bool> finished_;
};

}  // namespace qctrl::harness

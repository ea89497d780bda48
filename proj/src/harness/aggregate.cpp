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


#include "qctrl/harness/aggregate.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <fmt/format.h>

#include "qctrl/harness/results.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::harness {

using nlohmann::json;

namespace {

struct GroupKey {
  int task = 0;
  std::string method, model;
  double sigma = 0.0;
  auto tie() const { return std::tie(task, method, model, sigma); }
  bool operator<(const GroupKey& o) const { return tie() < o.tie(); }
};

struct RepKey {
  GroupKey group;
  std::size_t file = 0;
  int repetition = 0;
  bool operator<(const RepKey& o) const {
    return std::tie(group, file, repetition) < std::tie(o.group, o.file, o.repetition);
  }
};

struct RepData {
  std::map<int, double> best_by_iteration;
  double best = -std::numeric_limits<double>::infinity();
  long long prompt = 0, completion = 0;
};

std::string g(double v) { return fmt::format("{:.12g}", v); }

std::string group_cols(const GroupKey& k) {
  return fmt::format("{}\t{}\t{}\t{}", tasks::roman(k.task), k.method, k.model, g(k.sigma));
}

}  // namespace

ResultFile parse_result_text(const std::string& text, const std::string& name) {
  ResultFile f;
  f.path = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("type")) {
      throw std::runtime_error(fmt::format("{}:{}: not a result record", name, lineno));
    }
    const std::string type = j["type"].get<std::string>();
    if (f.header.is_null()) {
      if (type != "header") throw std::runtime_error(name + ": first record is not a header");
      const int version = j.value("schema_version", -1);
      if (version != kSchemaVersion) {
        throw std::runtime_error(fmt::format("{}: schema version {} is not supported (expected {})", name, version,
                                             kSchemaVersion));
      }
      f.header = std::move(j);
    } else if (type == "row") {
      f.rows.push_back(std::move(j));
    } else if (type == "run") {
      f.runs.push_back(std::move(j));
    } else {
      throw std::runtime_error(fmt::format("{}:{}: unknown record type '{}'", name, lineno, type));
    }
  }
  if (f.header.is_null()) throw std::runtime_error(name + ": empty result file");
  return f;
}

ResultFile read_result_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_result_text(ss.str(), path);
}

std::vector<std::pair<std::string, std::string>> Summary::tables() const {
  return {{"best_fidelity.tsv", best_fidelity},
          {"distributions.tsv", distributions},
          {"convergence.tsv", convergence},
          {"threshold.tsv", threshold},
          {"tokens.tsv", tokens},
          {"token_totals.tsv", token_totals}};
}

Summary aggregate(const std::vector<ResultFile>& files, double threshold_fidelity) {
  std::map<RepKey, RepData> reps;
  for (std::size_t fi = 0; fi < files.size(); ++fi) {
    for (const auto& row : files[fi].rows) {
      RepKey key;
      key.group.task = tasks::parse_task_id(row.at("task").get<std::string>()).value_or(0);
      key.group.method = row.at("method").get<std::string>();
      key.group.model = row.value("model", std::string());
      key.group.sigma = row.at("sigma").get<double>();
      key.file = fi;
      key.repetition = row.at("repetition").get<int>();
      RepData& d = reps[key];
      const double best = row.at("best_fidelity_so_far").get<double>();
      d.best_by_iteration[row.at("iteration").get<int>()] = best;
      d.best = std::max(d.best, best);
      d.prompt += row.value("prompt_tokens", 0LL);
      d.completion += row.value("completion_tokens", 0LL);
    }
  }

  Summary s;
  s.best_fidelity = "task\tmethod\tmodel\tsigma\trepetitions\tbest_fidelity\tbest_repetition\n";
  s.distributions = "task\tmethod\tmodel\tsigma\tfile\trepetition\tbest_fidelity\n";
  s.convergence = "task\tmethod\tmodel\tsigma\tfile\trepetition\titeration\tbest_fidelity\tinfidelity\n";
  s.threshold = fmt::format("task\tmethod\tmodel\tsigma\tfile\trepetition\tcrossing_iteration_F>={}\n",
                            g(threshold_fidelity));
  s.tokens = "task\tmethod\tmodel\tsigma\tfile\trepetition\tprompt_tokens\tcompletion_tokens\ttotal_tokens\n";

  struct Best {
    int count = 0;
    double fidelity = -std::numeric_limits<double>::infinity();
    const RepKey* key = nullptr;
  };
  std::map<GroupKey, Best> best;
  for (const auto& [key, d] : reps) {
    Best& b = best[key.group];
    ++b.count;
    if (d.best > b.fidelity) {
      b.fidelity = d.best;
      b.key = &key;
    }
    const std::string cols = group_cols(key.group) + fmt::format("\t{}\t{}", key.file, key.repetition);
    s.distributions += cols + "\t" + g(d.best) + "\n";
    std::string crossing = "NA";
    for (const auto& [iteration, f] : d.best_by_iteration) {
      s.convergence += cols + fmt::format("\t{}\t{}\t{}\n", iteration, g(f), g(1.0 - f));
      if (crossing == "NA" && f >= threshold_fidelity) crossing = std::to_string(iteration);
    }
    s.threshold += cols + "\t" + crossing + "\n";
    s.tokens += cols + fmt::format("\t{}\t{}\t{}\n", d.prompt, d.completion, d.prompt + d.completion);
  }
  std::map<std::tuple<std::string, std::string, double>, std::pair<int, long long>> totals;
  for (const auto& [group, b] : best) {
    s.best_fidelity += group_cols(group) + fmt::format("\t{}\t{}\t{}:{}\n", b.count, g(b.fidelity), b.key->file,
                                                       b.key->repetition);
    const RepData& d = reps.at(*b.key);
    auto& t = totals[{group.method, group.model, group.sigma}];
    ++t.first;
    t.second += d.prompt + d.completion;
  }
  s.token_totals = "method\tmodel\tsigma\ttasks\tbest_run_tokens_total\tbest_run_tokens_mean\n";
  for (const auto& [k, t] : totals) {
    s.token_totals += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", std::get<0>(k), std::get<1>(k), g(std::get<2>(k)), t.first,
                                  t.second, g(static_cast<double>(t.second) / t.first));
  }
  return s;
}

void write_summary(const Summary& summary, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& [name, text] : summary.tables()) {
    const auto path = std::filesystem::path(directory) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  }
}

}  // namespace qctrl::harness

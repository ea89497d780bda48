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

#include "qctrl/tasks/fixtures.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qctrl::tasks {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::array<double, 4> draw_drift_coefficients(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::array<double, 4> out{};
  for (auto& v : out) v = unit_uniform(rng);
  return out;
}

std::array<double, 2> draw_euler_angles(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double phi = 2.0 * std::numbers::pi * unit_uniform(rng);
  const double theta = std::numbers::pi * unit_uniform(rng);
  return {phi, theta};
}

std::vector<int> draw_noise_signs(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<int> out(count);
  for (auto& s : out) s = (rng() >> 63) ? 1 : -1;
  return out;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr std::size_t kSignColumns = 8;

}  // namespace

std::string fixture_table(const std::vector<std::uint64_t>& seeds) {
  std::ostringstream os;
  os << "# qctrl-bench task fixtures\n";
  os << "# generator: std::mt19937_64(seed); uniform u = (draw >> 11) * 2^-53; sign = +1 if draw >> 63\n";
  os << "version\t" << kFixtureVersion << "\n";
  os << "table\tseed\tkey\tvalue\n";
  for (auto seed : seeds) {
    const auto drift = draw_drift_coefficients(seed);
    const char* names[] = {"alpha1", "beta1", "alpha2", "beta2"};
    for (int i = 0; i < 4; ++i) os << "task_V\t" << seed << "\t" << names[i] << "\t" << g17(drift[i]) << "\n";
    const auto euler = draw_euler_angles(seed);
    os << "task_X\t" << seed << "\tphi\t" << g17(euler[0]) << "\n";
    os << "task_X\t" << seed << "\ttheta\t" << g17(euler[1]) << "\n";
    std::string signs;
    for (int s : draw_noise_signs(seed, kSignColumns)) signs += s > 0 ? '+' : '-';
    os << "noise_signs\t" << seed << "\tfirst" << kSignColumns << "\t" << signs << "\n";
  }
  return os.str();
}

std::vector<FixtureRow> parse_fixture_table(std::string_view text) {
  std::vector<FixtureRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool versioned = false;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (!versioned) {
      if (cols.size() != 2 || cols[0] != "version") {
        throw std::runtime_error("fixture table: missing version line");
      }
      if (std::stoi(cols[1]) != kFixtureVersion) {
        throw std::runtime_error("fixture table: version " + cols[1] + " is not supported");
      }
      versioned = true;
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    if (cols.size() != 4) {
      throw std::runtime_error("fixture table: line " + std::to_string(lineno) +
                               " does not have 4 columns");
    }
    rows.push_back(FixtureRow{cols[0], std::stoull(cols[1]), cols[2], cols[3]});
  }
  if (!versioned) throw std::runtime_error("fixture table: empty");
  return rows;
}

}  // namespace qctrl::tasks

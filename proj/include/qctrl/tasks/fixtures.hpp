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

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qctrl::tasks {

inline constexpr int kFixtureVersion = 1;

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
/// mt19937_64 output is fixed by the standard, so this is identical on
/// every conforming platform (unlike std::uniform_real_distribution).
double unit_uniform(std::mt19937_64& rng);

/// Task V drift coefficients in draw order: alpha1, beta1, alpha2, beta2.
std::array<double, 4> draw_drift_coefficients(std::uint64_t seed);

/// Task X target angles: phi in [0, 2pi), theta in [0, pi).
std::array<double, 2> draw_euler_angles(std::uint64_t seed);

/// Noise signs (+1/-1) exactly as apply_noise draws them.
std::vector<int> draw_noise_signs(std::uint64_t seed, std::size_t count);

struct FixtureRow {
  std::string table;  // "task_V", "task_X" or "noise_signs"
  std::uint64_t seed = 0;
  std::string key;
  std::string value;
};

/// Versioned TSV text of the drawn values for the given seeds.
std::string fixture_table(const std::vector<std::uint64_t>& seeds);

/// Throws std::runtime_error on a malformed table or a version mismatch.
std::vector<FixtureRow> parse_fixture_table(std::string_view text);

}  // namespace qctrl::tasks

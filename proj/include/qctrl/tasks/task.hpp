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
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qctrl/linalg.hpp"

namespace qctrl::tasks {

inline constexpr int kTaskCount = 16;

/// "I".."XVI" for 1..16.
std::string roman(int id);

/// Accepts "I".."XVI" (any case) or "1".."16".
std::optional<int> parse_task_id(std::string_view text);

enum class BoundPolicy { kNone, kClip, kPenalty };
enum class EvolutionKind { kUnitary, kLindblad, kEffective, kSymplectic, kConjugation };
enum class FidelityKind { kState, kGate, kSuperop, kTransfer };

std::string_view to_string(BoundPolicy p);
std::string_view to_string(EvolutionKind k);
std::string_view to_string(FidelityKind k);

struct Channel {
  std::string name;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  BoundPolicy policy = BoundPolicy::kNone;

  bool bounded() const { return policy != BoundPolicy::kNone; }
};

struct Parameter {
  std::string name;
  double value = 0.0;    // value the oracle uses (perturbed under noise)
  double nominal = 0.0;  // value targets and references are built from
  bool noise_sensitive = false;
  bool benchmark_fixed = false;
  std::string unit;
  /// Parameters sharing a non-empty group share one noise sign.
  std::string noise_group;
};

/// Operators that depend only on the task structure, shared between a spec
/// and its perturbed copies.
struct TaskOperators;

struct TaskSpec {
  int id = 0;
  std::string title;
  int hilbert_dim = 0;
  std::vector<Channel> channels;
  TimeGrid grid{1, 1.0};
  bool grid_benchmark_fixed = false;
  EvolutionKind evolution = EvolutionKind::kUnitary;
  FidelityKind fidelity = FidelityKind::kState;
  /// Multiplies H * dt inside every exponential (unit conversion).
  double time_scale = 1.0;
  std::string time_unit;
  std::string amplitude_unit;
  std::vector<Parameter> params;
  std::uint64_t fixture_seed = 0;  // Tasks V and X

  // Targets are fixed at build time from nominal parameters.
  Vector initial_state;
  Vector target_state;
  Matrix target_unitary;
  Matrix target_superop;
  Matrix initial_operator;
  Matrix target_operator;
  RealMatrix target_symplectic;
  Matrix logical_basis;

  std::shared_ptr<const TaskOperators> ops;

  int n_channels() const { return static_cast<int>(channels.size()); }
  const Parameter& param(std::string_view name) const;
  double value(std::string_view name) const { return param(name).value; }
  double nominal(std::string_view name) const { return param(name).nominal; }
  std::vector<std::string> noise_sensitive_params() const;
  /// Number of independent noise signs (grouped parameters count once).
  std::size_t noise_sign_count() const;
  int channel_index(std::string_view name) const;
};

struct TaskOverrides {
  std::optional<int> n_slices;
  std::optional<double> total_time;
  std::map<std::string, double> params;
  std::optional<std::uint64_t> fixture_seed;
  /// Reject grid overrides on tasks whose grid is fixed by the benchmark
  /// definition (runs that reproduce published numbers).
  bool strict = false;
};

/// Throws std::invalid_argument for an unknown id, an unknown parameter, or
/// an override of a fixed field.
TaskSpec build_task(int id, const TaskOverrides& overrides = {});

enum class Provenance { kAnsatz, kNumeric, kBaseline, kReference };
std::string_view to_string(Provenance p);

struct Protocol {
  RealMatrix amplitudes;  // channels x n_slices
  Provenance provenance = Provenance::kNumeric;
};

/// All-zero amplitudes of the right shape.
Protocol zero_protocol(const TaskSpec& spec);

struct NoiseAssignment {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  /// delta_p per noise-sensitive parameter, in declaration order. Empty when
  /// sigma is zero.
  std::vector<std::pair<std::string, double>> deltas;

  std::string signs() const;  // e.g. "+-+"
  friend bool operator==(const NoiseAssignment&, const NoiseAssignment&) = default;
};

/// Signs come from mt19937_64(seed): the top bit of one draw per parameter
/// or parameter group (1 -> +sigma, 0 -> -sigma). Throws on negative sigma.
std::pair<TaskSpec, NoiseAssignment> apply_noise(const TaskSpec& spec, double sigma,
                                                 std::uint64_t seed);

/// Explicit signs (each +1 or -1), one per independent draw in declaration
/// order (see TaskSpec::noise_sign_count).
std::pair<TaskSpec, NoiseAssignment> apply_noise(const TaskSpec& spec, double sigma,
                                                 const std::vector<int>& signs);

/// The fidelity oracle. Out-of-bound amplitudes are clipped or penalized
/// with 0 according to the channel policy; non-finite amplitudes and any
/// numerical failure give 0. Throws std::invalid_argument only when the
/// amplitude shape does not match the spec.
double evaluate_protocol(const TaskSpec& spec, const RealMatrix& amplitudes);
inline double evaluate_protocol(const TaskSpec& spec, const Protocol& protocol) {
  return evaluate_protocol(spec, protocol.amplitudes);
}

/// Total propagator for closed-system tasks (I-VI, VIII, X, XII-XVI). Applies
/// the bound policy by clipping only. Throws for other tasks.
Matrix propagator(const TaskSpec& spec, const RealMatrix& amplitudes);

}  // namespace qctrl::tasks

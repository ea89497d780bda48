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
#include <vector>

#include "qctrl/optim/objective.hpp"

namespace qctrl::optim {

struct SpsaConfig {
  double a = 0.1;
  double c = 0.1;
  double A = 50.0;
  double alpha = 0.602;
  double gamma = 0.101;
  int budget = 1000;  // steps; each step costs exactly two evaluations
  RealVector lower;   // empty = unbounded
  RealVector upper;
  std::uint64_t seed = 0;
  bool record_iterates = false;

  double gain_a(int k) const;
  double gain_c(int k) const;
};

/// a = 0.2 * max(1, mean |theta0|).
double default_spsa_a(const RealVector& theta0);

struct SpsaResult : OptimizeResult {
  std::vector<RealVector> iterates;              // theta_k, when recorded
  std::vector<std::vector<int>> perturbations;   // Delta_k, when recorded
};

/// Minimizes with simultaneous-perturbation stochastic approximation.
///
/// Delta_k draws one mt19937_64(seed) output per component (top bit set ->
/// +1). Both probes theta_k +- c_k Delta_k are clipped before evaluation and
/// the update is clipped. The returned point is the best probe seen; with a
/// zero budget theta0 is evaluated once and returned. trace.values holds
/// min(y+, y-) per step.
///
/// Throws std::invalid_argument for an empty or out-of-bounds theta0 and
/// std::domain_error when the objective returns a non-finite value.
SpsaResult spsa_minimize(const Objective& objective, const RealVector& theta0, const SpsaConfig& config);

}  // namespace qctrl::optim

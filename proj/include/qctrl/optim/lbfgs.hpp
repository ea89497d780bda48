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

#include "qctrl/optim/objective.hpp"

namespace qctrl::optim {

using Gradient = std::function<RealVector(const RealVector&)>;

struct LbfgsConfig {
  int max_iterations = 2000;
  int memory = 10;
  double tolerance = 1e-10;          // stop when the objective is at or below this
  double projected_gradient_tol = 1e-9;
  double relative_decrease_tol = 1e-14;
  int max_backtracks = 40;
};

struct LbfgsResult : OptimizeResult {
  int iterations = 0;
  bool converged = false;
};

/// Box-constrained quasi-Newton minimization: L-BFGS directions restricted
/// to the free variables, projected Armijo backtracking, and a steepest
/// descent restart whenever the direction fails to descend. trace.values
/// holds the objective after each accepted step, so it never increases.
/// Empty bounds mean unbounded.
LbfgsResult lbfgs_minimize(const Objective& f, const Gradient& grad, const RealVector& x0,
                           const RealVector& lower, const RealVector& upper, const LbfgsConfig& config);

}  // namespace qctrl::optim

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

struct NelderMeadConfig {
  int max_iterations = 2000;
  int max_evaluations = 0;  // 0 = no limit
  double xatol = 1e-4;
  double fatol = 1e-4;
};

/// Simplex minimization with the standard coefficients (1, 2, 1/2, 1/2).
/// The initial simplex perturbs each coordinate by 5% (0.00025 for zero
/// entries). Returns the best vertex; trace.values holds the best vertex
/// value after every iteration. Throws std::invalid_argument for dimension 0.
OptimizeResult nelder_mead_minimize(const Objective& f, const RealVector& x0, const NelderMeadConfig& config = {});

}  // namespace qctrl::optim

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

#include "qctrl/optim/lbfgs.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::optim {

struct GrapeConfig {
  int max_iterations = 2000;
  double fd_step = 1e-6;
  double tolerance = 1e-10;  // target infidelity
  int memory = 10;
};

struct GrapeResult {
  tasks::Protocol protocol;
  double fidelity = 0.0;
  OptimizationTrace trace;  // infidelity after every accepted step; evaluations include gradients
  int iterations = 0;
};

/// Amplitudes flattened channel-major: index c * n_slices + k.
RealVector flatten(const RealMatrix& amplitudes);
RealMatrix unflatten(const RealVector& flat, int channels, int n_slices);

/// Box bounds of the flat amplitude vector from the channel bounds
/// (infinite for unbounded channels).
std::pair<RealVector, RealVector> amplitude_bounds(const tasks::TaskSpec& spec);

/// Central finite-difference gradient of 1 - F. Near a bound the stencil is
/// shortened to stay inside the box (one-sided at the bound itself). Adds
/// the number of oracle evaluations to `evaluations` when given.
RealVector grape_gradient(const tasks::TaskSpec& spec, const RealVector& flat, double step = 1e-6,
                          long long* evaluations = nullptr);

/// Minimizes 1 - F over the amplitudes with the box-constrained
/// quasi-Newton solver. The input protocol is clipped into the box first.
GrapeResult grape_optimize(const tasks::TaskSpec& spec, const tasks::Protocol& initial,
                           const GrapeConfig& config = {});

}  // namespace qctrl::optim

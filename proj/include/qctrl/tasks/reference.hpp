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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qctrl/tasks/task.hpp"

namespace qctrl::tasks {

/// Constants of the Task I counter-diabatic field. Taken from nominal
/// parameters by default; tests corrupt them on purpose.
struct CdParams {
  double delta0 = 1.0;
  double h0 = 2.0;
  double hf = -2.0;
  double total_time = 1.2;
};

CdParams cd_params(const TaskSpec& spec);

/// g(t) = (Delta nu' - nu Delta') / (2 (Delta^2 + nu^2)).
double cd_field(const CdParams& p, double t);

/// cd_field sampled at the slice midpoints of spec.grid.
Protocol cd_protocol(const TaskSpec& spec, const CdParams& p);

/// Gaussian envelope with derivative (DRAG) quadrature for Task XIV.
struct DragShape {
  double amplitude = 0.0;  // peak of Omega_x in GHz
  double beta = 0.0;       // DRAG weight on -dOmega_x/dt / (4 pi alpha)
  double detuning = 0.0;   // constant delta in GHz
  double width_fraction = 1.0 / 6.0;  // sigma = width_fraction * T
};

/// Calibrated at sigma = 0 on the default grid.
DragShape default_drag_shape();

Protocol drag_protocol(const TaskSpec& spec, const DragShape& shape);

/// Names of the closed-form references a task offers; the first is the
/// default. Empty when the task has none.
std::vector<std::string> reference_variants(int task_id);

/// nullopt when the task has no reference. Throws std::invalid_argument for
/// an unknown variant name.
std::optional<Protocol> reference_protocol(const TaskSpec& spec, std::string_view variant = {});

/// Task XV transfer with instantaneous pulses between exact free-evolution
/// propagators. Variants: "half-j" (two 1/(2J) delays around a pi/2 pair),
/// "quarter-j" (four 1/(4J) delays with refocusing pi pairs) and "literal"
/// (two 1/(4J) delays around a pi/2 pair).
double inept_delta_transfer(const TaskSpec& spec, std::string_view variant = "half-j");

/// Truncated Fourier series on the slice midpoints. Row c of `coefficients`
/// holds a_1..a_H followed by b_1..b_H for u_c(t) = sum a_h cos(2 pi h t/T)
/// + b_h sin(2 pi h t/T).
RealMatrix fourier_amplitudes(const RealMatrix& coefficients, const TimeGrid& grid);

}  // namespace qctrl::tasks

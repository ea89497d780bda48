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

#include "qctrl/linalg.hpp"

namespace qctrl {

/// |<target|actual>|^2, capped at 1 against rounding. Throws
/// std::invalid_argument on dimension mismatch.
double state_fidelity(const Vector& target, const Vector& actual);

/// |Tr(target^+ actual)|^2 / d^2 for unitaries of dimension d. Throws if the
/// shapes disagree with d or either input is not unitary to 1e-8.
double gate_fidelity(const Matrix& target, const Matrix& actual, int d);

/// The same trace overlap without the unitarity check (for blocks of a
/// larger propagator, which need not be unitary).
double gate_overlap(const Matrix& target, const Matrix& actual, int d);

/// 1 - Tr[(E_t - E)^+ (E_t - E)] / (2 d^2). Deliberately not clamped; the
/// value is negative for maps far from the target.
double superop_fidelity(const Matrix& target, const Matrix& actual, int d);
double superop_fidelity(const RealMatrix& target, const RealMatrix& actual, int d);

/// Re Tr(target_op rho). Throws if the imaginary part exceeds 1e-8.
double transfer_efficiency(const Matrix& rho_final, const Matrix& target_op);

}  // namespace qctrl

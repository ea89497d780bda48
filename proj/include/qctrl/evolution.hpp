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

#include <vector>

#include "qctrl/linalg.hpp"

namespace qctrl {

// All propagators take one operator per slice of `grid` and apply
// exp(-i H_k dt * time_scale) (or the real/superoperator analogue) in time
// order, so the result is U_N ... U_2 U_1. `time_scale` converts the product
// of Hamiltonian units and grid units into radians (2*pi for GHz x ns, 1e-3
// for rad/s x ms).

/// Throws std::invalid_argument on a slice count mismatch or a slice that is
/// not Hermitian to 1e-12.
Matrix propagate_unitary(const std::vector<Matrix>& hamiltonians, const TimeGrid& grid,
                         double time_scale = 1.0);

/// Row-major vectorization: vec(A B C) = (A kron C^T) vec(B).
Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, Eigen::Index dim);

/// Liouvillian of d rho/dt = -i[H, rho] + gamma (L rho L+ - {L+ L, rho}/2) in
/// the row-major convention above.
Matrix lindblad_generator(const Matrix& hamiltonian, const Matrix& jump, double gamma);

/// Amplitude damping with jump operator |0><1|. Returns the d^2 x d^2
/// superoperator starting from the identity map. Throws on gamma < 0.
Matrix propagate_lindblad(const std::vector<Matrix>& hamiltonians, double gamma,
                          const TimeGrid& grid, double time_scale = 1.0);

/// Unnormalized state under a non-Hermitian effective Hamiltonian.
Vector propagate_effective(const std::vector<Matrix>& hamiltonians, const TimeGrid& grid,
                           const Vector& initial, double time_scale = 1.0);

/// [[0, I], [-I, 0]] for `n_modes` modes in (q_1..q_n, p_1..p_n) ordering of
/// the blocks.
RealMatrix symplectic_form(int n_modes);

/// prod_k exp(Omega A_k dt) for real symmetric quadratic forms A_k.
RealMatrix propagate_symplectic(const std::vector<RealMatrix>& quadratic_forms,
                                const RealMatrix& form, const TimeGrid& grid);

/// Same product with an explicit slice length, used for the dt = 0 edge case.
RealMatrix propagate_symplectic(const std::vector<RealMatrix>& quadratic_forms,
                                const RealMatrix& form, double dt);

}  // namespace qctrl

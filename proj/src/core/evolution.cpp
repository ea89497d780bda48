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

#include "qctrl/evolution.hpp"

#include <stdexcept>
#include <string>

namespace qctrl {

namespace {

void check_slices(std::size_t got, const TimeGrid& grid) {
  if (got != static_cast<std::size_t>(grid.n_slices())) {
    throw std::invalid_argument("expected " + std::to_string(grid.n_slices()) +
                                " slice operators, got " + std::to_string(got));
  }
}

void check_square(const Matrix& m, Eigen::Index dim, std::size_t slice) {
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("slice " + std::to_string(slice) + " has shape " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

}  // namespace

Matrix propagate_unitary(const std::vector<Matrix>& hamiltonians, const TimeGrid& grid,
                         double time_scale) {
  check_slices(hamiltonians.size(), grid);
  const Eigen::Index dim = hamiltonians.front().rows();
  const complex step{0.0, -grid.dt() * time_scale};
  Matrix u = Matrix::Identity(dim, dim);
  for (std::size_t k = 0; k < hamiltonians.size(); ++k) {
    check_square(hamiltonians[k], dim, k);
    if (!is_hermitian(hamiltonians[k])) {
      throw std::invalid_argument("slice " + std::to_string(k) + " Hamiltonian is not Hermitian");
    }
    u = matrix_exponential(hamiltonians[k], step) * u;
  }
  return u;
}

Vector vectorize(const Matrix& rho) {
  Vector v(rho.size());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  }
  return v;
}

Matrix unvectorize(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: size is not dim^2");
  Matrix rho(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) rho(i, j) = v(i * dim + j);
  }
  return rho;
}

Matrix lindblad_generator(const Matrix& hamiltonian, const Matrix& jump, double gamma) {
  const Eigen::Index d = hamiltonian.rows();
  const Matrix ident = Matrix::Identity(d, d);
  Matrix gen = -kImag * (kron(hamiltonian, ident) - kron(ident, hamiltonian.transpose()));
  if (gamma != 0.0) {
    const Matrix ldl = jump.adjoint() * jump;
    gen += gamma * (kron(jump, jump.conjugate()) - 0.5 * kron(ldl, ident) -
                    0.5 * kron(ident, ldl.transpose()));
  }
  return gen;
}

Matrix propagate_lindblad(const std::vector<Matrix>& hamiltonians, double gamma,
                          const TimeGrid& grid, double time_scale) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("propagate_lindblad: gamma must be >= 0");
  check_slices(hamiltonians.size(), grid);
  const Eigen::Index d = hamiltonians.front().rows();
  if (d != 2) throw std::invalid_argument("propagate_lindblad: amplitude damping needs d = 2");
  const Matrix jump = pauli::lowering();
  const double step = grid.dt() * time_scale;
  Matrix e = Matrix::Identity(d * d, d * d);
  for (std::size_t k = 0; k < hamiltonians.size(); ++k) {
    check_square(hamiltonians[k], d, k);
    e = matrix_exponential(lindblad_generator(hamiltonians[k], jump, gamma), complex{step, 0.0}) * e;
  }
  return e;
}

Vector propagate_effective(const std::vector<Matrix>& hamiltonians, const TimeGrid& grid,
                           const Vector& initial, double time_scale) {
  check_slices(hamiltonians.size(), grid);
  const complex step{0.0, -grid.dt() * time_scale};
  Vector psi = initial;
  for (std::size_t k = 0; k < hamiltonians.size(); ++k) {
    check_square(hamiltonians[k], initial.size(), k);
    psi = matrix_exponential(hamiltonians[k], step) * psi;
  }
  return psi;
}

RealMatrix symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
  RealMatrix omega = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  omega.topRightCorner(n_modes, n_modes) = RealMatrix::Identity(n_modes, n_modes);
  omega.bottomLeftCorner(n_modes, n_modes) = -RealMatrix::Identity(n_modes, n_modes);
  return omega;
}

RealMatrix propagate_symplectic(const std::vector<RealMatrix>& quadratic_forms,
                                const RealMatrix& form, double dt) {
  if (quadratic_forms.empty()) throw std::invalid_argument("propagate_symplectic: no slices");
  const Eigen::Index n = form.rows();
  RealMatrix s = RealMatrix::Identity(n, n);
  for (const auto& a : quadratic_forms) {
    if (a.rows() != n || a.cols() != n) {
      throw std::invalid_argument("propagate_symplectic: quadratic form shape mismatch");
    }
    s = matrix_exponential(RealMatrix(form * a), dt) * s;
  }
  return s;
}

RealMatrix propagate_symplectic(const std::vector<RealMatrix>& quadratic_forms,
                                const RealMatrix& form, const TimeGrid& grid) {
  check_slices(quadratic_forms.size(), grid);
  return propagate_symplectic(quadratic_forms, form, grid.dt());
}

}  // namespace qctrl

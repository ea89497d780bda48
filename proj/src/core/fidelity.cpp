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

#include "qctrl/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qctrl {

double state_fidelity(const Vector& target, const Vector& actual) {
  if (target.size() != actual.size()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  return std::min(1.0, std::norm(target.dot(actual)));
}

double gate_overlap(const Matrix& target, const Matrix& actual, int d) {
  if (target.rows() != d || target.cols() != d || actual.rows() != d || actual.cols() != d) {
    throw std::invalid_argument("gate fidelity: inputs must both be d x d");
  }
  const complex tr = (target.adjoint() * actual).trace();
  return std::norm(tr) / (static_cast<double>(d) * d);
}

double gate_fidelity(const Matrix& target, const Matrix& actual, int d) {
  if (target.rows() == d && actual.rows() == d) {
    if (!is_unitary(target, 1e-8) || !is_unitary(actual, 1e-8)) {
      throw std::invalid_argument("gate_fidelity: inputs must be unitary to 1e-8");
    }
  }
  return gate_overlap(target, actual, d);
}

double superop_fidelity(const Matrix& target, const Matrix& actual, int d) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  if (target.rows() != n || target.cols() != n || actual.rows() != n || actual.cols() != n) {
    throw std::invalid_argument("superop_fidelity: inputs must both be d^2 x d^2");
  }
  // Tr(D^+ D) is the squared Frobenius norm.
  return 1.0 - (target - actual).squaredNorm() / (2.0 * d * d);
}

double superop_fidelity(const RealMatrix& target, const RealMatrix& actual, int d) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  if (target.rows() != n || target.cols() != n || actual.rows() != n || actual.cols() != n) {
    throw std::invalid_argument("superop_fidelity: inputs must both be d^2 x d^2");
  }
  return 1.0 - (target - actual).squaredNorm() / (2.0 * d * d);
}

double transfer_efficiency(const Matrix& rho_final, const Matrix& target_op) {
  if (rho_final.rows() != target_op.cols() || rho_final.cols() != target_op.rows()) {
    throw std::invalid_argument("transfer_efficiency: shape mismatch");
  }
  const complex tr = (target_op * rho_final).trace();
  if (std::abs(tr.imag()) > 1e-8) {
    throw std::invalid_argument("transfer_efficiency: trace has imaginary part " +
                                std::to_string(tr.imag()));
  }
  return tr.real();
}

}  // namespace qctrl

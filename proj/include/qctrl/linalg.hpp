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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qctrl {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr complex kImag{0.0, 1.0};

/// Largest matrix dimension the dense kernels accept.
inline constexpr Eigen::Index kMaxDimension = 64;

/// Uniform piecewise-constant time discretization.
///
/// Slice k covers [k*dt, (k+1)*dt) and is sampled at its midpoint
/// (k + 1/2)*dt. Every control in the project is discretized this way.
class TimeGrid {
 public:
  TimeGrid(int n_slices, double total_time);

  int n_slices() const { return n_slices_; }
  double total_time() const { return total_time_; }
  double dt() const { return total_time_ / n_slices_; }
  double midpoint(int k) const { return (k + 0.5) * dt(); }
  std::vector<double> midpoints() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  int n_slices_;
  double total_time_;
};

/// exp(scale * a) by scaling and squaring with Pade approximants of degree
/// 3, 5, 7, 9 or 13 (degree chosen from the 1-norm).
///
/// Throws std::invalid_argument for non-square, empty, oversized
/// (> kMaxDimension) or non-finite input.
Matrix matrix_exponential(const Matrix& a, complex scale = complex{1.0, 0.0});
RealMatrix matrix_exponential(const RealMatrix& a, double scale = 1.0);

Matrix kron(const Matrix& a, const Matrix& b);

/// Embeds a single-site operator at `site` of an n-site register of
/// equal local dimension (site 0 is the leftmost tensor factor).
Matrix embed(const Matrix& op, int site, int n_sites);

/// max_ij |a_ij|
double max_abs(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = 1e-12);
bool is_unitary(const Matrix& a, double tol = 1e-10);
bool all_finite(const Matrix& a);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
/// |0><1|, the lowering operator when |1> is the excited level.
Matrix lowering();
}  // namespace pauli

}  // namespace qctrl

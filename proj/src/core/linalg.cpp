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

#include "qctrl/linalg.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qctrl {

TimeGrid::TimeGrid(int n_slices, double total_time)
    : n_slices_(n_slices), total_time_(total_time) {
  if (n_slices < 1) {
    throw std::invalid_argument("TimeGrid: n_slices must be >= 1, got " + std::to_string(n_slices));
  }
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw std::invalid_argument("TimeGrid: total_time must be finite and > 0");
  }
}

std::vector<double> TimeGrid::midpoints() const {
  std::vector<double> out(static_cast<std::size_t>(n_slices_));
  for (int k = 0; k < n_slices_; ++k) out[static_cast<std::size_t>(k)] = midpoint(k);
  return out;
}

namespace {

// Pade coefficients and 1-norm thresholds from Higham, "The scaling and
// squaring method for the matrix exponential revisited" (2005).
constexpr std::array<double, 4> kB3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                    25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kB9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                     30270240.0,    2162160.0,    110880.0,     3960.0,
                                     90.0,          1.0};
constexpr std::array<double, 14> kB13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <class M>
double one_norm(const M& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Low-degree approximant: U = A * sum b_odd A^(2j), V = sum b_even A^(2j).
template <class M, std::size_t N>
M pade_low(const M& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const M ident = M::Identity(n, n);
  const M a2 = a * a;
  M power = ident;
  M u_inner = M::Zero(n, n);
  M v = M::Zero(n, n);
  for (std::size_t j = 0; 2 * j + 1 < N; ++j) {
    v += b[2 * j] * power;
    u_inner += b[2 * j + 1] * power;
    power = power * a2;
  }
  const M u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

template <class M>
M pade13(const M& a) {
  const auto n = a.rows();
  const M ident = M::Identity(n, n);
  const M a2 = a * a;
  const M a4 = a2 * a2;
  const M a6 = a4 * a2;
  const auto& b = kB13;
  const M u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                   b[3] * a2 + b[1] * ident);
  const M v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
              b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

template <class M>
M expm(const M& a) {
  const double norm = one_norm(a);
  if (norm <= kTheta3) return pade_low(a, kB3);
  if (norm <= kTheta5) return pade_low(a, kB5);
  if (norm <= kTheta7) return pade_low(a, kB7);
  if (norm <= kTheta9) return pade_low(a, kB9);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  M result = pade13(M(a * std::ldexp(1.0, -squarings)));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

template <class M>
void check_exp_input(const M& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential: input must be square and non-empty (got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
  }
  if (a.rows() > kMaxDimension) {
    throw std::invalid_argument("matrix_exponential: dimension " + std::to_string(a.rows()) +
                                " exceeds " + std::to_string(kMaxDimension));
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  }
}

}  // namespace

Matrix matrix_exponential(const Matrix& a, complex scale) {
  check_exp_input(a);
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    throw std::invalid_argument("matrix_exponential: non-finite scale");
  }
  Matrix scaled = a * scale;
  if (!scaled.allFinite()) throw std::invalid_argument("matrix_exponential: scaled input overflows");
  return expm(scaled);
}

RealMatrix matrix_exponential(const RealMatrix& a, double scale) {
  check_exp_input(a);
  if (!std::isfinite(scale)) throw std::invalid_argument("matrix_exponential: non-finite scale");
  RealMatrix scaled = a * scale;
  if (!scaled.allFinite()) throw std::invalid_argument("matrix_exponential: scaled input overflows");
  return expm(scaled);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix embed(const Matrix& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) throw std::out_of_range("embed: site out of range");
  const auto local = op.rows();
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    out = kron(out, s == site ? op : Matrix(Matrix::Identity(local, local)));
  }
  return out;
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= tol;
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0.0, -kImag, kImag, 0.0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix lowering() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

}  // namespace pauli

}  // namespace qctrl

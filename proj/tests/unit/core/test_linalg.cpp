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


#include <doctest.h>

#include <cmath>
#include <random>

#include "qctrl/linalg.hpp"

using namespace qctrl;

namespace {

// Reference exponential: Taylor series of a / 2^s, then squaring.
Matrix taylor_exp(const Matrix& a) {
  int s = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++s;
  }
  const Matrix b = a / std::pow(2.0, s);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

Matrix random_matrix(std::mt19937_64& rng, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = complex{u(rng), u(rng)};
  return m;
}

}  // namespace

TEST_CASE("matrix_exponential matches a Taylor reference across norms") {
  std::mt19937_64 rng(1);
  for (double scale : {1e-6, 0.01, 0.3, 1.0, 5.0, 30.0}) {
    for (int d : {1, 2, 3, 5, 8}) {
      const Matrix a = random_matrix(rng, d, scale);
      const Matrix ref = taylor_exp(a);
      const Matrix got = matrix_exponential(a);
      CAPTURE(scale);
      CAPTURE(d);
      CHECK((got - ref).norm() <= 1e-11 * std::max(1.0, ref.norm()));
    }
  }
}

TEST_CASE("matrix_exponential of a Pauli rotation is closed form") {
  const double theta = 0.731;
  const Matrix u = matrix_exponential(pauli::x(), complex{0.0, -theta});
  Matrix expected = std::cos(theta) * pauli::identity() - kImag * std::sin(theta) * pauli::x();
  CHECK(max_abs(u - expected) < 1e-15);
  CHECK(is_unitary(u));
}

TEST_CASE("matrix_exponential applies the scale before exponentiating") {
  std::mt19937_64 rng(2);
  const Matrix h = random_matrix(rng, 4, 1.0);
  const complex s{0.2, -1.3};
  CHECK(max_abs(matrix_exponential(h, s) - matrix_exponential(Matrix(s * h))) < 1e-13);
}

TEST_CASE("real matrix_exponential of a rotation generator") {
  RealMatrix g(2, 2);
  g << 0, 1, -1, 0;
  const RealMatrix r = matrix_exponential(g, 0.4);
  CHECK(r(0, 0) == doctest::Approx(std::cos(0.4)).epsilon(1e-15));
  CHECK(r(0, 1) == doctest::Approx(std::sin(0.4)).epsilon(1e-15));
}

TEST_CASE("matrix_exponential rejects bad input") {
  CHECK_THROWS_AS(matrix_exponential(Matrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(matrix_exponential(Matrix(0, 0)), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exponential(bad), std::invalid_argument);
  CHECK_THROWS_AS(matrix_exponential(Matrix(Matrix::Zero(kMaxDimension + 1, kMaxDimension + 1))),
                  std::invalid_argument);
}

TEST_CASE("TimeGrid samples slice midpoints") {
  const TimeGrid g(4, 2.0);
  CHECK(g.dt() == 0.5);
  const auto m = g.midpoints();
  REQUIRE(m.size() == 4);
  CHECK(m[0] == 0.25);
  CHECK(m[3] == 1.75);
}

TEST_CASE("kron and embed") {
  const Matrix zx = kron(pauli::z(), pauli::x());
  CHECK(zx.rows() == 4);
  CHECK(zx(0, 1) == complex{1, 0});
  CHECK(zx(2, 3) == complex{-1, 0});
  const Matrix e = embed(pauli::z(), 1, 3);
  CHECK(max_abs(e - kron(kron(pauli::identity(), pauli::z()), pauli::identity())) == 0.0);
  CHECK(max_abs(pauli::lowering() * pauli::lowering()) == 0.0);
  CHECK(pauli::lowering()(0, 1) == complex{1, 0});
}

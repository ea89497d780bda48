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

#include "qctrl/optim/lbfgs.hpp"
#include "qctrl/optim/nelder_mead.hpp"

using namespace qctrl;
using namespace qctrl::optim;

namespace {

double rosenbrock(const RealVector& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(1.0 - x(i), 2);
  }
  return s;
}

RealVector rosenbrock_grad(const RealVector& x) {
  RealVector g = RealVector::Zero(x.size());
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double r = x(i + 1) - x(i) * x(i);
    g(i) += -400.0 * x(i) * r - 2.0 * (1.0 - x(i));
    g(i + 1) += 200.0 * r;
  }
  return g;
}

const RealVector kNone;

}  // namespace

TEST_CASE("L-BFGS solves Rosenbrock") {
  RealVector x0(4);
  x0 << -1.2, 1.0, -1.2, 1.0;
  LbfgsConfig c;
  c.tolerance = 1e-18;
  const auto r = lbfgs_minimize(rosenbrock, rosenbrock_grad, x0, kNone, kNone, c);
  CHECK(r.value < 1e-12);
  CHECK(r.theta.isApprox(RealVector::Ones(4), 1e-5));
  for (std::size_t i = 1; i < r.trace.values.size(); ++i) CHECK(r.trace.values[i] <= r.trace.values[i - 1]);
  CHECK(r.trace.evaluations > r.iterations);
}

TEST_CASE("L-BFGS stops at the objective tolerance") {
  RealVector x0(2);
  x0 << 3.0, -4.0;
  LbfgsConfig c;
  c.tolerance = 1e-2;
  auto f = [](const RealVector& x) { return x.squaredNorm(); };
  auto g = [](const RealVector& x) { return RealVector(2.0 * x); };
  const auto r = lbfgs_minimize(f, g, x0, kNone, kNone, c);
  CHECK(r.converged);
  CHECK(r.value <= 1e-2);
}

TEST_CASE("projected L-BFGS lands on the active bound") {
  RealVector x0(2), lo(2), hi(2);
  x0 << 0.5, 0.5;
  lo << 0.2, -1.0;
  hi << 1.0, 1.0;
  auto f = [](const RealVector& x) { return std::pow(x(0) + 1.0, 2) + std::pow(x(1) - 0.3, 2); };
  auto g = [](const RealVector& x) {
    RealVector out(2);
    out << 2.0 * (x(0) + 1.0), 2.0 * (x(1) - 0.3);
    return out;
  };
  const auto r = lbfgs_minimize(f, g, x0, lo, hi, LbfgsConfig{});
  CHECK(r.theta(0) == doctest::Approx(0.2));
  CHECK(r.theta(1) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r.converged);
}

TEST_CASE("Nelder-Mead on a shifted quadratic") {
  RealVector x0 = RealVector::Zero(3);
  RealVector target(3);
  target << 1.0, -2.0, 0.5;
  auto f = [&](const RealVector& x) { return (x - target).squaredNorm(); };
  NelderMeadConfig c;
  c.xatol = 1e-10;
  c.fatol = 1e-14;
  const auto r = nelder_mead_minimize(f, x0, c);
  CHECK(r.theta.isApprox(target, 1e-5));
  CHECK(r.trace.evaluations > 0);
  for (std::size_t i = 1; i < r.trace.best_so_far.size(); ++i) {
    CHECK(r.trace.best_so_far[i] <= r.trace.best_so_far[i - 1]);
  }
}

TEST_CASE("Nelder-Mead honours the evaluation cap") {
  int calls = 0;
  auto f = [&](const RealVector& x) {
    ++calls;
    return rosenbrock(x);
  };
  NelderMeadConfig c;
  c.max_evaluations = 60;
  const auto r = nelder_mead_minimize(f, RealVector::Zero(2), c);
  CHECK(calls <= 60 + 3);
  CHECK(r.trace.evaluations == calls);
}

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

#include "qctrl/optim/crab.hpp"
#include "qctrl/optim/grape.hpp"

using namespace qctrl;
using namespace qctrl::optim;
using qctrl::tasks::build_task;
using qctrl::tasks::evaluate_protocol;

TEST_CASE("flatten is row-major and invertible") {
  RealMatrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const RealVector f = flatten(m);
  CHECK(f(1) == 2.0);
  CHECK(f(3) == 4.0);
  CHECK(unflatten(f, 2, 3) == m);
  CHECK_THROWS(unflatten(f, 4, 3));
}

TEST_CASE("amplitude bounds follow the channel policies") {
  const auto s = build_task(2);
  const auto [lo, hi] = amplitude_bounds(s);
  CHECK(lo.size() == 2 * s.grid.n_slices());
  CHECK(lo(0) == doctest::Approx(-M_PI));
  CHECK(hi(0) == doctest::Approx(M_PI));
  const auto free = amplitude_bounds(build_task(1));
  CHECK(std::isinf(free.first(0)));
}

TEST_CASE("finite-difference gradient against a tighter stencil") {
  const auto s = build_task(10);
  const RealVector x = flatten(random_amplitudes(s, 4));
  long long evals = 0;
  const RealVector g = grape_gradient(s, x, 1e-6, &evals);
  CHECK(evals >= x.size());
  CHECK(evals <= 2 * x.size() + 1);
  auto loss = [&](const RealVector& v) { return 1.0 - evaluate_protocol(s, unflatten(v, s.n_channels(), s.grid.n_slices())); };
  for (Eigen::Index i : {0, 7, 60, 149}) {
    const double h = 1e-5;
    RealVector p = x, m = x;
    p(i) += h;
    m(i) -= h;
    CHECK(g(i) == doctest::Approx((loss(p) - loss(m)) / (2 * h)).epsilon(1e-4));
  }
}

TEST_CASE("GRAPE reaches a Task X gate") {
  const auto s = build_task(10);
  GrapeConfig c;
  c.max_iterations = 300;
  const auto r = grape_optimize(s, tasks::Protocol{random_amplitudes(s, 61)}, c);
  CHECK(r.fidelity >= 0.9999);
  CHECK(r.fidelity == evaluate_protocol(s, r.protocol));
  CHECK(r.trace.evaluations > r.iterations * s.n_channels() * s.grid.n_slices());
  for (std::size_t i = 1; i < r.trace.values.size(); ++i) CHECK(r.trace.values[i] <= r.trace.values[i - 1]);
}

TEST_CASE("GRAPE with zero iterations returns the start") {
  const auto s = build_task(3);
  GrapeConfig c;
  c.max_iterations = 0;
  const auto start = tasks::zero_protocol(s);
  const auto r = grape_optimize(s, start, c);
  CHECK(r.protocol.amplitudes == start.amplitudes);
  CHECK(r.fidelity == evaluate_protocol(s, start));
}

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

#include "qctrl/optim/nelder_mead.hpp"
#include "qctrl/tasks/reference.hpp"

using namespace qctrl;
using namespace qctrl::tasks;

TEST_CASE("Task I counter-diabatic field") {
  const auto s = build_task(1);
  const double f40 = evaluate_protocol(s, *reference_protocol(s));
  CHECK(f40 == doctest::Approx(0.9999999491).epsilon(1e-9));
  TaskOverrides dense;
  dense.n_slices = 4000;
  const auto d = build_task(1, dense);
  CHECK(1.0 - evaluate_protocol(d, *reference_protocol(d)) < 1e-12);
  // Both sweeps start with zero slope.
  const CdParams p = cd_params(s);
  CHECK(cd_field(p, 0.0) == 0.0);
  CdParams wrong = p;
  wrong.hf = 2.0;
  CHECK(evaluate_protocol(s, cd_protocol(s, wrong)) < 0.995);
  CHECK_THROWS_AS(cd_params(build_task(2)), std::invalid_argument);
}

TEST_CASE("INEPT sequences") {
  const auto s = build_task(15);
  CHECK(inept_delta_transfer(s, "half-j") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inept_delta_transfer(s, "quarter-j") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inept_delta_transfer(s, "literal") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(inept_delta_transfer(s, "other"), std::invalid_argument);
  CHECK(evaluate_protocol(s, *reference_protocol(s, "half-j")) == doctest::Approx(0.9984895409).epsilon(1e-9));
  CHECK(evaluate_protocol(s, *reference_protocol(s, "quarter-j")) > 0.9);
}

TEST_CASE("Task XVI refocusing pair") {
  const auto s = build_task(16);
  const auto ref = reference_protocol(s);
  REQUIRE(ref);
  int pulses = 0;
  for (Eigen::Index k = 0; k < ref->amplitudes.cols(); ++k) pulses += ref->amplitudes(0, k) != 0.0;
  CHECK(pulses == 2);
  CHECK(evaluate_protocol(s, *ref) == doctest::Approx(0.99976).epsilon(1e-5));
}

TEST_CASE("DRAG constants are reproduced by calibration") {
  const auto s = build_task(14);
  const DragShape frozen = default_drag_shape();
  const double f_frozen = evaluate_protocol(s, drag_protocol(s, frozen));
  CHECK(1.0 - f_frozen < 1e-9);
  auto loss = [&](const RealVector& x) {
    DragShape d = frozen;
    d.amplitude = x(0);
    d.beta = x(1);
    d.detuning = x(2) * 1e-4;
    return 1.0 - evaluate_protocol(s, drag_protocol(s, d));
  };
  RealVector x0(3);
  x0 << frozen.amplitude * 1.02, frozen.beta * 0.9, 0.2;
  optim::NelderMeadConfig cfg;
  cfg.max_iterations = 4000;
  cfg.xatol = 1e-12;
  cfg.fatol = 1e-15;
  const auto r = optim::nelder_mead_minimize(loss, x0, cfg);
  CHECK(r.value <= (1.0 - f_frozen) + 1e-9);
  CHECK(r.theta(0) == doctest::Approx(frozen.amplitude).epsilon(1e-3));
}

TEST_CASE("reference lookup") {
  CHECK(reference_variants(15) == std::vector<std::string>{"half-j", "quarter-j"});
  CHECK(reference_variants(3) == std::vector<std::string>{"linear-sweep"});
  CHECK(reference_variants(2).empty());
  CHECK_FALSE(reference_protocol(build_task(2)));
  CHECK_THROWS_AS(reference_protocol(build_task(2), "cd"), std::invalid_argument);
  CHECK_THROWS_AS(reference_protocol(build_task(1), "drag"), std::invalid_argument);
}

TEST_CASE("Fourier helper") {
  RealMatrix c(1, 4);
  c << 1.0, 0.0, 0.0, 2.0;  // a1, a2, b1, b2
  const TimeGrid g(8, 1.0);
  const RealMatrix u = fourier_amplitudes(c, g);
  for (int k = 0; k < 8; ++k) {
    const double t = g.midpoint(k);
    CHECK(u(0, k) == doctest::Approx(std::cos(2 * M_PI * t) + 2 * std::sin(4 * M_PI * t)));
  }
  CHECK_THROWS_AS(fourier_amplitudes(RealMatrix(1, 3), g), std::invalid_argument);
}

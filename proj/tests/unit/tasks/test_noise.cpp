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

#include "qctrl/tasks/fixtures.hpp"
#include "qctrl/tasks/reference.hpp"
#include "qctrl/tasks/task.hpp"

using namespace qctrl;
using namespace qctrl::tasks;

TEST_CASE("sigma zero is the identity") {
  for (int id = 1; id <= kTaskCount; ++id) {
    const auto s = build_task(id);
    const auto [t, n] = apply_noise(s, 0.0, 42);
    CHECK(n.deltas.empty());
    CHECK(n.signs().empty());
    for (std::size_t i = 0; i < s.params.size(); ++i) CHECK(t.params[i].value == s.params[i].value);
  }
}

TEST_CASE("signs follow the top bit of mt19937_64") {
  for (int id = 1; id <= kTaskCount; ++id) {
    const auto s = build_task(id);
    for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
      const auto [t, n] = apply_noise(s, 0.02, seed);
      const auto expected = draw_noise_signs(seed, s.noise_sign_count());
      std::string sg;
      for (int v : expected) sg += v > 0 ? '+' : '-';
      if (id == 16) sg = std::string(3, sg[0]);
      CHECK(n.signs() == sg);
    }
  }
}

TEST_CASE("perturbed values scale the nominal value") {
  const auto s = build_task(1);
  const auto [t, n] = apply_noise(s, 0.02, 0);
  CHECK(n.signs() == "-+-");
  CHECK(t.value("Delta0") == doctest::Approx(0.98));
  CHECK(t.value("h0") == doctest::Approx(2.04));
  CHECK(t.value("hf") == doctest::Approx(-2.0 * 0.98));
  CHECK(t.nominal("h0") == 2.0);
  CHECK(n.deltas.size() == 3);
  // Targets are built from nominal values and do not move.
  CHECK((t.target_state - s.target_state).norm() == 0.0);
}

TEST_CASE("Task XVI shares one sign across beta") {
  const auto s = build_task(16);
  CHECK(s.noise_sign_count() == 1);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto [t, n] = apply_noise(s, 0.02, seed);
    const double r0 = t.value("beta0") / s.nominal("beta0");
    CHECK(t.value("beta1") / s.nominal("beta1") == doctest::Approx(r0));
    CHECK(t.value("beta2") / s.nominal("beta2") == doctest::Approx(r0));
  }
}

TEST_CASE("explicit signs and validation") {
  const auto s = build_task(1);
  const auto [t, n] = apply_noise(s, 0.1, std::vector<int>{1, 1, 1});
  CHECK(n.signs() == "+++");
  CHECK(t.value("hf") == doctest::Approx(-2.2));
  CHECK_THROWS_AS(apply_noise(s, 0.1, std::vector<int>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(s, 0.1, std::vector<int>{1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(s, -0.1, 0), std::invalid_argument);
}

TEST_CASE("reference protocols lose fidelity under the default noise draw") {
  for (int id : {1, 14, 15, 16}) {
    CAPTURE(id);
    const auto s = build_task(id);
    const auto ref = reference_protocol(s);
    REQUIRE(ref);
    const double clean = evaluate_protocol(s, *ref);
    CHECK(evaluate_protocol(apply_noise(s, 0.02, 0).first, *ref) < clean);
  }
}

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

#include "qctrl/agents/memory.hpp"

using namespace qctrl::agents;

namespace {

MemoryEntry evaluated(int k, double infidelity) {
  MemoryEntry e;
  e.iteration = k;
  e.rendered = "g: expr" + std::to_string(k);
  e.infidelity = infidelity;
  return e;
}

MemoryEntry rejected(int k) {
  MemoryEntry e;
  e.iteration = k;
  e.rejection = "disallowed_function: abs";
  return e;
}

std::vector<int> iterations(const FeedbackMemory& m) {
  std::vector<int> out;
  for (const auto* e : m.view()) out.push_back(e->iteration);
  return out;
}

}  // namespace

TEST_CASE("empty memory renders nothing") {
  FeedbackMemory m;
  CHECK(m.empty());
  CHECK(m.render().empty());
  CHECK_FALSE(m.best_infidelity());
}

TEST_CASE("view is the best two then the latest two without duplicates") {
  FeedbackMemory m;
  m.add(evaluated(1, 0.5));
  CHECK(iterations(m) == std::vector<int>{1});
  m.add(evaluated(2, 0.01));
  CHECK(iterations(m) == std::vector<int>{2, 1});
  m.add(evaluated(3, 0.2));
  m.add(evaluated(4, 0.9));
  m.add(evaluated(5, 0.05));
  CHECK(iterations(m) == std::vector<int>{2, 5, 4});
  m.add(rejected(6));
  CHECK(iterations(m) == std::vector<int>{2, 5, 6});
  m.add(evaluated(7, 0.7));
  CHECK(iterations(m) == std::vector<int>{2, 5, 6, 7});
  CHECK(*m.best_infidelity() == 0.01);
}

TEST_CASE("ties go to the earlier iteration") {
  FeedbackMemory m;
  for (int k = 1; k <= 5; ++k) m.add(evaluated(k, 0.1));
  CHECK(iterations(m) == std::vector<int>{1, 2, 4, 5});
}

TEST_CASE("render format") {
  FeedbackMemory m;
  m.add(evaluated(1, 0.125));
  m.add(rejected(2));
  const std::string r = m.render();
  CHECK(r.rfind("PREVIOUS REPETITIONS\n", 0) == 0);
  CHECK(r.find("[iteration 1] infidelity 1 - F = 1.250000e-01\ng: expr1\n") != std::string::npos);
  CHECK(r.find("[iteration 2] rejected: disallowed_function: abs") != std::string::npos);
  CHECK(r.find("BEST SO FAR\ninfidelity 1 - F = 1.250000e-01") != std::string::npos);
  CHECK(r.find("FEEDBACK") == std::string::npos);
  CHECK(r.back() != '\n');
}

TEST_CASE("only the latest feedback is shown") {
  FeedbackMemory m;
  m.add(evaluated(1, 0.3));
  m.add(evaluated(2, 0.2));
  m.attach_feedback(1, {"old idea"});
  m.attach_feedback(2, {"raise amplitude", "try a sine"});
  m.attach_feedback(9, {"ignored"});
  const std::string r = m.render();
  CHECK(r.find("FEEDBACK\n- raise amplitude\n- try a sine") != std::string::npos);
  CHECK(r.find("old idea") == std::string::npos);
  CHECK(r.find("ignored") == std::string::npos);
}

TEST_CASE("update_memory leaves the input untouched") {
  FeedbackMemory a;
  const FeedbackMemory b = update_memory(a, evaluated(1, 0.4));
  CHECK(a.empty());
  CHECK(b.entries().size() == 1);
}

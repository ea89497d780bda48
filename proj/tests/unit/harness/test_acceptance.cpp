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

#include "criteria.hpp"

using namespace qctrl;
using namespace qctrl::acceptance;

TEST_CASE("corrupted field constants fail the counter-diabatic criterion") {
  Options o;
  tasks::CdParams wrong;
  wrong.hf = 2.0;
  o.cd_override = wrong;
  const auto r = run_criterion(1, o);
  CHECK_FALSE(r.passed);
  CHECK(r.id == 1);
  CHECK(r.detail.find("F") != std::string::npos);
  CHECK(format_line(r).rfind("FAIL C1 ", 0) == 0);
}

TEST_CASE("criterion ids") {
  CHECK_THROWS_AS(run_criterion(13, Options{}), std::out_of_range);
  CHECK_THROWS_AS(run_criterion(0, Options{}), std::out_of_range);
}

TEST_CASE("fast level criteria pass") {
  for (int id : {3, 8, 10}) {
    CAPTURE(id);
    const auto r = run_criterion(id, Options{});
    CHECK(r.passed);
    CHECK(format_line(r).rfind("PASS C", 0) == 0);
    const auto j = to_json({r});
    CHECK(j.dump().find(r.name) != std::string::npos);
  }
}

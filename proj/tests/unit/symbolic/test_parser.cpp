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

#include "qctrl/symbolic/expression.hpp"

using namespace qctrl;
using symbolic::parse;

namespace {

double eval(std::string_view src, double t = 0.0, double T = 1.0, std::vector<double> values = {}) {
  auto e = parse(src);
  REQUIRE_MESSAGE(e.ok(), (e.ok() ? "" : e.error().describe()));
  if (values.empty()) values.assign(e.value().coefficients().size(), 1.0);
  auto r = e.value().evaluate(t, T, values);
  REQUIRE(r.ok());
  return r.value();
}

RejectCode code_of(std::string_view src) {
  auto e = parse(src);
  REQUIRE_FALSE(e.ok());
  return e.error().code;
}

}  // namespace

TEST_CASE("operator precedence and associativity") {
  CHECK(eval("1+2*3") == 7.0);
  CHECK(eval("(1+2)*3") == 9.0);
  CHECK(eval("2^3^2") == 512.0);
  CHECK(eval("-2^2") == -4.0);
  CHECK(eval("8/4/2") == 1.0);
  CHECK(eval("10-4-3") == 3.0);
  CHECK(eval("2*-3") == -6.0);
  CHECK(eval("2^-1") == 0.5);
}

TEST_CASE("time, total time and pi") {
  CHECK(eval("t/T", 0.5, 2.0) == 0.25);
  CHECK(eval("pi") == doctest::Approx(3.141592653589793));
  CHECK(eval("1.5e-3*2") == doctest::Approx(3e-3));
}

TEST_CASE("the eight functions") {
  CHECK(eval("sin(pi/2)") == doctest::Approx(1.0));
  CHECK(eval("cos(0)") == 1.0);
  CHECK(eval("exp(1)") == doctest::Approx(std::exp(1.0)));
  CHECK(eval("log(exp(2))") == doctest::Approx(2.0));
  CHECK(eval("erf(0.5)") == doctest::Approx(std::erf(0.5)));
  CHECK(eval("tanh(0.3)") == doctest::Approx(std::tanh(0.3)));
  CHECK(eval("sinc(0)") == 1.0);
  CHECK(eval("sinc(2)") == doctest::Approx(std::sin(2.0) / 2.0));
  CHECK(eval("theta(0)") == 1.0);
  CHECK(eval("theta(-0.1)") == 0.0);
  CHECK(eval("Heaviside(2)") == 1.0);
  CHECK(eval("heaviside(-2)") == 0.0);
}

TEST_CASE("coefficients are collected in first-appearance order") {
  auto e = parse("b*sin(a*t) + c - b");
  REQUIRE(e.ok());
  CHECK(e.value().coefficients() == std::vector<std::string>{"b", "a", "c"});
  CHECK(e.value().coefficient_index("c") == 2);
  CHECK(e.value().coefficient_index("zz") == -1);
  const std::vector<double> v = {2.0, 3.0, 5.0};
  CHECK(e.value().evaluate(0.5, 1.0, v).value() == doctest::Approx(2 * std::sin(1.5) + 5 - 2));
  const std::map<std::string, double> named = {{"a", 3.0}, {"b", 2.0}, {"c", 5.0}};
  CHECK(e.value().evaluate(0.5, 1.0, named).value() == doctest::Approx(2 * std::sin(1.5) + 3));
}

TEST_CASE("undefined operations are faults, never non-finite values") {
  for (const char* src : {"log(0)", "log(-1)", "1/0", "0^-1", "(-8)^(1/3)", "exp(1000)", "a/(t-t)"}) {
    auto e = parse(src);
    REQUIRE(e.ok());
    const std::vector<double> v(e.value().coefficients().size(), 1.0);
    CAPTURE(src);
    CHECK_FALSE(e.value().evaluate(0.5, 1.0, v).ok());
  }
}

TEST_CASE("rejections carry codes and spans") {
  CHECK(code_of("abs(t)") == RejectCode::kDisallowedFunction);
  CHECK(code_of("sqrt(t)") == RejectCode::kDisallowedFunction);
  CHECK(code_of("") == RejectCode::kEmptySource);
  CHECK(code_of("sin()") == RejectCode::kEmptyArgument);
  CHECK(code_of("sin(t, t)") == RejectCode::kWrongArity);
  CHECK(code_of("(t") == RejectCode::kUnbalancedParentheses);
  CHECK(code_of("t)") != RejectCode::kEmptySource);
  CHECK(code_of("+t") == RejectCode::kDisallowedConstruct);
  CHECK(code_of("sin") == RejectCode::kDisallowedConstruct);
  CHECK(code_of(std::string(symbolic::kMaxSourceBytes + 1, 't')) == RejectCode::kSourceTooLong);
  CHECK(code_of(std::string(300, '(') + "t" + std::string(300, ')')) == RejectCode::kNestingTooDeep);
  auto e = parse("a*t + abs(t)");
  REQUIRE_FALSE(e.ok());
  CHECK(e.error().span.offset == 6);
  CHECK(e.error().describe().find("disallowed_function") != std::string::npos);
}

TEST_CASE("comparison and logical constructs are rejected") {
  for (const char* src : {"t < 1", "t > 1", "t <= 1", "t >= 1", "t == 1", "t != 1", "t && 1", "t || 1", "!t",
                          "t ? 1 : 0", "t; 1", "x[0]", "t = 1", "t % 2", "a***t"}) {
    CAPTURE(std::string(src));
    CHECK_FALSE(parse(src).ok());
  }
}

TEST_CASE("render round-trips structurally") {
  for (const char* src : {"a*sin(b*t) + c", "-(a - t)^2/(1 + t)", "a*exp(-((t-T/2)/b)^2)", "a - (b - t)",
                          "a/(b/t)", "(-a)^2", "a*2^-1", "theta(t - T/2)*a"}) {
    auto e = parse(src);
    REQUIRE(e.ok());
    auto again = parse(e.value().render());
    REQUIRE_MESSAGE(again.ok(), e.value().render());
    CAPTURE(e.value().render());
    CHECK(e.value().structurally_equal(again.value()));
    const std::vector<double> v(e.value().coefficients().size(), 0.7);
    CHECK(again.value().evaluate(0.3, 1.0, v).value() == e.value().evaluate(0.3, 1.0, v).value());
  }
}

TEST_CASE("render substitutes values") {
  auto e = parse("a*sin(b*t)");
  REQUIRE(e.ok());
  const std::vector<double> v = {1.23456789, -2.0};
  const std::string r = e.value().render(v);
  CHECK(r.find("1.23457") != std::string::npos);
  CHECK(r.find("-2") != std::string::npos);
}

TEST_CASE("parser is total on random input") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20000; ++i) {
    std::string s(rng() % 48, ' ');
    for (auto& ch : s) ch = static_cast<char>(rng() % 256);
    auto e = parse(s);
    if (e.ok()) {
      const std::vector<double> v(e.value().coefficients().size(), 1.0);
      auto r = e.value().evaluate(0.5, 1.0, v);
      if (r.ok()) CHECK(std::isfinite(r.value()));
    }
  }
}

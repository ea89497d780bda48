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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qctrl/result.hpp"

namespace qctrl::symbolic {

inline constexpr std::size_t kMaxSourceBytes = 16 * 1024;
inline constexpr std::size_t kMaxNodes = 10000;
inline constexpr int kMaxNesting = 200;
inline constexpr std::size_t kMaxCoefficients = 60;

enum class Op : std::uint8_t {
  kConst,
  kTime,
  kTotalTime,
  kCoeff,
  kNeg,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kSin,
  kCos,
  kExp,
  kLog,
  kErf,
  kTanh,
  kSinc,
  kTheta,
};

int arity(Op op);
bool is_function(Op op);
std::string_view function_name(Op op);

/// One AST node. Children always precede their parent in the arena, so the
/// arena is a post-order listing and the root is the last node.
struct Node {
  Op op = Op::kConst;
  double value = 0.0;  // kConst
  int coeff = -1;      // kCoeff: index into Expression::coefficients()
  int lhs = -1;        // first operand
  int rhs = -1;        // second operand of binary ops
  Span span;
};

struct EvalFault {
  int node = -1;
  std::string reason;
};

class Expression {
 public:
  Expression() = default;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& coefficients() const { return coefficients_; }
  const std::string& source() const { return source_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  std::size_t size() const { return nodes_.size(); }

  /// Index of `name` in coefficients(), or -1.
  int coefficient_index(std::string_view name) const;

  /// Evaluates at time t with coefficient values ordered as coefficients().
  /// Never returns a non-finite value; undefined operations are faults.
  Result<double, EvalFault> evaluate(double t, double total_time,
                                     std::span<const double> values) const;
  Result<double, EvalFault> evaluate(double t, double total_time,
                                     const std::map<std::string, double>& params) const;

  /// Canonical text: coefficients by name, constants with %.17g.
  std::string render() const;

  /// Text with coefficients replaced by their values at 6 significant digits.
  std::string render(std::span<const double> values) const;

  /// True when the trees match node for node (same ops, constants, and
  /// coefficient names).
  bool structurally_equal(const Expression& other) const;

  /// Indices of nodes that are top-level additive terms of the root.
  std::vector<int> additive_terms() const;

  /// Whether the subtree rooted at `node` references any coefficient.
  bool references_coefficient(int node) const;

 private:
  friend class Parser;
  std::vector<Node> nodes_;
  std::vector<std::string> coefficients_;
  std::string source_;
};

Result<Expression, Rejection> parse(std::string_view source);

}  // namespace qctrl::symbolic

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

#include "qctrl/result.hpp"

namespace qctrl {

std::string_view to_string(RejectCode code) {
  switch (code) {
    case RejectCode::kEmptySource: return "empty_source";
    case RejectCode::kSourceTooLong: return "source_too_long";
    case RejectCode::kUnexpectedCharacter: return "unexpected_character";
    case RejectCode::kUnexpectedToken: return "unexpected_token";
    case RejectCode::kUnexpectedEnd: return "unexpected_end";
    case RejectCode::kUnknownIdentifier: return "unknown_identifier";
    case RejectCode::kDisallowedFunction: return "disallowed_function";
    case RejectCode::kDisallowedConstruct: return "disallowed_construct";
    case RejectCode::kUnbalancedParentheses: return "unbalanced_parentheses";
    case RejectCode::kEmptyArgument: return "empty_argument";
    case RejectCode::kWrongArity: return "wrong_arity";
    case RejectCode::kInvalidNumber: return "invalid_number";
    case RejectCode::kNestingTooDeep: return "nesting_too_deep";
    case RejectCode::kTooManyNodes: return "too_many_nodes";
    case RejectCode::kNoCoefficients: return "no_coefficients";
    case RejectCode::kNoCoefficientTerm: return "no_coefficient_term";
    case RejectCode::kTooManyCoefficients: return "coefficient_limit";
    case RejectCode::kZeroInitialValue: return "zero_initial_value";
    case RejectCode::kNonFiniteInitialValue: return "non_finite_initial_value";
    case RejectCode::kUnboundCoefficient: return "unbound_coefficient";
    case RejectCode::kUnusedParameter: return "unused_parameter";
    case RejectCode::kDuplicateParameter: return "duplicate_parameter";
    case RejectCode::kUnparseablePayload: return "unparseable_payload";
    case RejectCode::kMissingChannel: return "missing_channel";
    case RejectCode::kUnknownChannel: return "unknown_channel";
    case RejectCode::kWrongLength: return "wrong_length";
    case RejectCode::kNonFiniteAmplitude: return "non_finite_amplitude";
    case RejectCode::kEvaluationFault: return "evaluation_fault";
  }
  return "unknown";
}

std::string Rejection::describe() const {
  std::string out(to_string(code));
  if (!channel.empty()) out += " [" + channel + "]";
  out += ": " + message;
  return out;
}

}  // namespace qctrl

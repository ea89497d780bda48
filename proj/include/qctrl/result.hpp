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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace qctrl {

/// Machine-readable reasons a proposal is refused. The string form (see
/// to_string) is what gets serialized into agent feedback and result files.
enum class RejectCode {
  kEmptySource,
  kSourceTooLong,
  kUnexpectedCharacter,
  kUnexpectedToken,
  kUnexpectedEnd,
  kUnknownIdentifier,
  kDisallowedFunction,
  kDisallowedConstruct,
  kUnbalancedParentheses,
  kEmptyArgument,
  kWrongArity,
  kInvalidNumber,
  kNestingTooDeep,
  kTooManyNodes,
  kNoCoefficients,
  kNoCoefficientTerm,
  kTooManyCoefficients,
  kZeroInitialValue,
  kNonFiniteInitialValue,
  kUnboundCoefficient,
  kUnusedParameter,
  kDuplicateParameter,
  kUnparseablePayload,
  kMissingChannel,
  kUnknownChannel,
  kWrongLength,
  kNonFiniteAmplitude,
  kEvaluationFault,
};

std::string_view to_string(RejectCode code);

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Rejection {
  RejectCode code;
  std::string message;
  Span span;
  std::string channel;

  /// "code: message" plus the channel when one is set.
  std::string describe() const;
};

/// Minimal value-or-error holder.
template <class T, class E>
class Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}  // NOLINT
  Result(E error) : data_(std::in_place_index<1>, std::move(error)) {}  // NOLINT

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Result::value() on an error");
    return std::get<0>(data_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result::value() on an error");
    return std::get<0>(std::move(data_));
  }
  const E& error() const {
    if (ok()) throw std::logic_error("Result::error() on a value");
    return std::get<1>(data_);
  }

 private:
  std::variant<T, E> data_;
};

}  // namespace qctrl

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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qctrl/linalg.hpp"
#include "qctrl/symbolic/expression.hpp"

namespace qctrl::symbolic {

/// One control channel's proposal: expression plus its named initial values,
/// in the order the proposer listed them.
struct ChannelAnsatz {
  std::string channel;
  Expression expression;
  std::vector<std::pair<std::string, double>> parameters;
};

/// A multi-channel ansatz. Coefficients of all channels are concatenated in
/// channel order (each channel in its expression's first-appearance order)
/// to form the flat vector the inner optimizer works on.
struct ControlAnsatz {
  std::vector<ChannelAnsatz> channels;

  std::size_t coefficient_count() const;

  /// Initial values in flat order. Assumes validate() passed.
  std::vector<double> initial_values() const;

  /// Flat-order names, "channel.name".
  std::vector<std::string> qualified_names() const;
};

/// nullopt when the ansatz is acceptable.
std::optional<Rejection> validate(const ControlAnsatz& ansatz);

/// Samples every channel at the midpoints of `grid`. Rows follow channel
/// order. The first evaluation fault aborts with a rejection naming the
/// channel and the failing sample time.
Result<RealMatrix, Rejection> discretize(const ControlAnsatz& ansatz,
                                         std::span<const double> flat_values,
                                         const TimeGrid& grid);

/// "expr" for one channel, "name(t) = expr" lines otherwise. Values are
/// substituted at 6 significant digits.
std::string render(const ControlAnsatz& ansatz, std::span<const double> flat_values);

/// Same layout with coefficient names left symbolic.
std::string render_symbolic(const ControlAnsatz& ansatz);

}  // namespace qctrl::symbolic

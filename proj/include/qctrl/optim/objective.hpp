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

#include <algorithm>
#include <functional>
#include <vector>

#include "qctrl/linalg.hpp"

namespace qctrl::optim {

using Objective = std::function<double(const RealVector&)>;

/// Per-step record shared by all optimizers.
struct OptimizationTrace {
  std::vector<double> values;       // objective value recorded at each step
  std::vector<double> best_so_far;  // running minimum of `values`
  int evaluations = 0;

  void record(double value) {
    values.push_back(value);
    best_so_far.push_back(best_so_far.empty() ? value : std::min(best_so_far.back(), value));
  }
};

struct OptimizeResult {
  RealVector theta;
  double value = 0.0;
  OptimizationTrace trace;
};

/// Clamps x into [lower, upper] component-wise; empty bounds mean unbounded.
RealVector clip(const RealVector& x, const RealVector& lower, const RealVector& upper);

}  // namespace qctrl::optim

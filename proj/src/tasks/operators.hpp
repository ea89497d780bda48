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

#include <vector>

#include "qctrl/linalg.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::tasks {

/// Parameter-free building blocks of a task Hamiltonian. Which entry means
/// what is private to the task's case in tasks.cpp.
struct TaskOperators {
  std::vector<Matrix> op;
  RealMatrix form;         // symplectic form (Task XI)
  RealMatrix control_real; // A_c (Task XI)
};

/// Hamiltonian (or effective Hamiltonian) of slice k after bound handling.
Matrix slice_hamiltonian(const TaskSpec& spec, const RealMatrix& amplitudes, int k);

/// Quadratic form A_0 + u_k A_c for Task XI.
RealMatrix slice_quadratic_form(const TaskSpec& spec, const RealMatrix& amplitudes, int k);

}  // namespace qctrl::tasks

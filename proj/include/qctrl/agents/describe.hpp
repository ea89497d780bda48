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

#include <string>

#include "qctrl/tasks/task.hpp"

namespace qctrl::agents {

/// Plain-text statement of a task as the proposal agent sees it: physics,
/// controls with bounds, start and goal, grid and units. Values are the
/// nominal ones; Task III omits the coupling Delta.
std::string describe_task(const tasks::TaskSpec& spec);

}  // namespace qctrl::agents

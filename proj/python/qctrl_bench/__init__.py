# Copyright 2026 The qctrl-bench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Python access to the quantum-control benchmark."""

from qctrl_bench._core import (
    TASK_COUNT,
    __version__,
    aggregate,
    evaluate,
    evaluate_expression,
    grape,
    noise_signs,
    parse_expression,
    parse_task_id,
    reference_protocol,
    roman,
    run_benchmark,
    spsa_minimize,
    task_info,
)

__all__ = [
    "TASK_COUNT",
    "__version__",
    "aggregate",
    "evaluate",
    "evaluate_expression",
    "grape",
    "noise_signs",
    "parse_expression",
    "parse_task_id",
    "reference_protocol",
    "roman",
    "run_benchmark",
    "spsa_minimize",
    "task_info",
]

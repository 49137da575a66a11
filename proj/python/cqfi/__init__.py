# Copyright 2026 The cqfi Authors
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

"""Conditional quantum Fisher information along quantum-jump trajectories."""

from cqfi._core import (
    CqfiError,
    bose_occupation,
    cqfi,
    cqfi_trace_form,
    cumulative_action,
    cumulative_length,
    driven_qubit_ensemble,
    driven_qubit_trajectory,
    gaussian_cqfi,
    gaussian_qfi,
    qfi,
    run,
    sld,
    stochastic_fisher,
    thermal_sensor,
    validate_config,
)

__all__ = [
    "CqfiError",
    "bose_occupation",
    "cqfi",
    "cqfi_trace_form",
    "cumulative_action",
    "cumulative_length",
    "driven_qubit_ensemble",
    "driven_qubit_trajectory",
    "gaussian_cqfi",
    "gaussian_qfi",
    "qfi",
    "run",
    "sld",
    "stochastic_fisher",
    "thermal_sensor",
    "validate_config",
]

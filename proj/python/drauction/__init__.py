# Copyright 2026 The Authors.
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

"""Python bindings for the demand response reward mechanism."""

from ._core import (
    Allocation,
    Bidder,
    ConfigError,
    ConsumptionParams,
    DomainError,
    Error,
    FitError,
    InfeasibleTargetError,
    Participant,
    SizeError,
    UnboundedThresholdError,
    UserType,
    audit_incentives,
    expected_payments,
    expected_reduction,
    expected_utility,
    fit_lognormal3,
    lognormal_bidders,
    max_feasible_target,
    run_dr_mechanism,
    run_omniscient,
    run_scenario,
    sample_base_consumption,
    synthetic_baseline,
    threshold_reward,
)

__all__ = [name for name in dir() if not name.startswith("_")]

// Copyright 2026 The Authors.
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

// Expected-value layer over the lognormal model. All expectations are taken
// over the base consumption x̄ with x(r) = x̄·exp(−αr) and are closed form
// in terms of lognormal partial expectations at a = x̂·exp(αr).

#pragma once

#include <span>

#include "drauction/model.hpp"

namespace drauction {

struct ThresholdSolveConfig {
  double abs_tol = 1e-8;  // $ tolerance on |μ(r)|
  double r_max = 1e4;     // $/kWh cap on the bracket search
  int max_iter = 200;

  void validate() const;
};

/// μ(r) = E[r·[x̂−x]₊ − q·[x−x̂]₊]. Strictly increasing in r; negative at
/// r = 0 whenever q > 0.
double expected_utility(const UserType& theta, double baseline, double q, double r);

/// Same quantity by composite Simpson quadrature over the standard normal
/// driver. Slow; kept for cross-checking the closed form.
double expected_utility_quadrature(const UserType& theta, double baseline, double q, double r,
                                   int intervals = 4000);

/// E[x̂ − x(r)] = x̂ − mean·exp(−αr). May be negative.
double expected_reduction(const UserType& theta, double baseline, double r);

/// E[[x̂ − x(r)]₊], the rewarded part of the reduction.
double expected_rewarded_reduction(const UserType& theta, double baseline, double r);

/// E[[x(r) − x̂]₊], the penalized over-consumption.
double expected_overconsumption(const UserType& theta, double baseline, double r);

/// Unique r̃ with μ(r̃) = 0, by Newton's method with a central-difference
/// slope, safeguarded by bisection on a doubling bracket. Returns 0 for
/// q = 0 and whenever μ(0) is already within abs_tol of zero.
/// Throws UnboundedThresholdError if μ stays negative up to r_max and
/// ConvergenceError if max_iter is exhausted.
double threshold_reward(const UserType& theta, double baseline, double q,
                        const ThresholdSolveConfig& cfg = {});

/// Σ_{i=2}^{n-1} δ̄_i(r̃_{n-1}) over users sorted by threshold (1-based).
/// Throws SizeError for fewer than three users.
double max_feasible_target(std::span<const Participant> users, double q,
                           const ThresholdSolveConfig& cfg = {});

}  // namespace drauction

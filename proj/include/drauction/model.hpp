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

// Core domain types and the deterministic per-user relations of the demand
// response market. Energy is in kWh, money in $, rewards in $/kWh.

#pragma once

#include <span>
#include <string>

namespace drauction {

/// Three-parameter lognormal base consumption: x = loc + scale * exp(sigma * Z).
struct ConsumptionParams {
  double sigma = 1.0;  // shape
  double scale = 1.0;  // e^mu
  double loc = 0.0;    // lower support bound

  /// Throws DomainError unless sigma > 0, scale > 0, loc >= 0, all finite.
  void validate() const;
  double mean() const;

  friend bool operator==(const ConsumptionParams&, const ConsumptionParams&) = default;
};

/// A user's private type: demand-curve slope plus consumption distribution.
/// A reported type has the same shape.
struct UserType {
  double alpha = 0.05;
  ConsumptionParams params;

  void validate() const;

  friend bool operator==(const UserType&, const UserType&) = default;
};

/// A user as seen by the provider: reported type plus the public baseline.
struct Participant {
  std::string id;
  UserType type;
  double baseline = 0.0;  // x̂, kWh
};

struct MarketParams {
  double q = 0.0;       // per-unit over-consumption penalty charged to users
  double r_bar = 0.0;   // wholesale per-unit reward
  double q_bar = 0.0;   // wholesale per-unit shortfall penalty
  double target = 0.0;  // aggregate reduction target M, kWh
};

struct ReductionDecomposition {
  double total = 0.0;         // x̂ - x
  double virtual_part = 0.0;  // x̂ - x̄, baseline error
  double actual_part = 0.0;   // x̄ (1 - e^{-αr}), behavioural response
};

/// Semi-log demand curve x̄·exp(−α·r).
double demand(double base, double alpha, double reward);

/// Realized utility of one user, which is also the payment from the
/// provider: r·[x̂−x]₊ − q·[x−x̂]₊ when targeted, 0 otherwise.
double realized_utility(double baseline, double consumption, double reward, double q,
                        bool targeted);

ReductionDecomposition decompose_reduction(double baseline, double base, double alpha,
                                           double reward);

/// Realized provider profit r̄·min(Δ,M) − q̄·[M−Δ]₊ − Σ payment_i with
/// payments signed like realized_utility. Requires min(q̄, r̄) > max reward;
/// throws PreconditionError naming the first offending reward otherwise.
double realized_profit(std::span<const double> reductions, std::span<const double> rewards,
                       const MarketParams& market);

}  // namespace drauction

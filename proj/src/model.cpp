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

#include "drauction/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drauction/errors.hpp"

namespace drauction {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ConsumptionParams::validate() const {
  require(finite_pos(sigma), "consumption params: sigma must be finite and > 0");
  require(finite_pos(scale), "consumption params: scale must be finite and > 0");
  require(finite_nonneg(loc), "consumption params: loc must be finite and >= 0");
}

double ConsumptionParams::mean() const { return loc + scale * std::exp(0.5 * sigma * sigma); }

void UserType::validate() const {
  require(finite_pos(alpha), "user type: alpha must be finite and > 0");
  params.validate();
}

double demand(double base, double alpha, double reward) {
  require(finite_pos(base), "demand: base must be finite and > 0");
  require(finite_pos(alpha), "demand: alpha must be finite and > 0");
  require(finite_nonneg(reward), "demand: reward must be finite and >= 0");
  return base * std::exp(-alpha * reward);
}

double realized_utility(double baseline, double consumption, double reward, double q,
                        bool targeted) {
  require(finite_nonneg(baseline), "realized_utility: baseline must be finite and >= 0");
  require(finite_nonneg(consumption), "realized_utility: consumption must be finite and >= 0");
  require(finite_nonneg(reward), "realized_utility: reward must be finite and >= 0");
  require(finite_nonneg(q), "realized_utility: q must be finite and >= 0");
  if (!targeted) return 0.0;
  const double d = baseline - consumption;
  return d >= 0.0 ? reward * d : q * d;
}

ReductionDecomposition decompose_reduction(double baseline, double base, double alpha,
                                           double reward) {
  require(finite_nonneg(baseline), "decompose_reduction: baseline must be finite and >= 0");
  const double x = demand(base, alpha, reward);
  ReductionDecomposition out;
  out.total = baseline - x;
  out.virtual_part = baseline - base;
  out.actual_part = -base * std::expm1(-alpha * reward);
  return out;
}

double realized_profit(std::span<const double> reductions, std::span<const double> rewards,
                       const MarketParams& market) {
  if (reductions.size() != rewards.size())
    throw DomainError("realized_profit: reductions and rewards differ in length");
  require(finite_nonneg(market.q), "realized_profit: q must be finite and >= 0");
  require(finite_nonneg(market.r_bar), "realized_profit: r_bar must be finite and >= 0");
  require(finite_nonneg(market.q_bar), "realized_profit: q_bar must be finite and >= 0");
  require(finite_nonneg(market.target), "realized_profit: target must be finite and >= 0");

  const double cap = std::min(market.q_bar, market.r_bar);
  double total = 0.0;
  double payments = 0.0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    require(std::isfinite(reductions[i]), "realized_profit: reduction must be finite");
    require(finite_nonneg(rewards[i]), "realized_profit: reward must be finite and >= 0");
    if (!(rewards[i] < cap)) {
      throw PreconditionError("realized_profit: reward " + std::to_string(rewards[i]) +
                              " at index " + std::to_string(i) +
                              " is not below min(q_bar, r_bar) = " + std::to_string(cap));
    }
    total += reductions[i];
    const double d = reductions[i];
    payments += d >= 0.0 ? rewards[i] * d : market.q * d;
  }
  return market.r_bar * std::min(total, market.target) -
         market.q_bar * std::max(market.target - total, 0.0) - payments;
}

}  // namespace drauction

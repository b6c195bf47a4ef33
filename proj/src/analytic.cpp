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

#include "drauction/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "drauction/dist.hpp"
#include "drauction/errors.hpp"
#include "ordering.hpp"

namespace drauction {
namespace {

void check_inputs(const UserType& theta, double baseline, double r) {
  theta.validate();
  if (!std::isfinite(baseline) || baseline < 0.0)
    throw DomainError("baseline must be finite and >= 0");
  if (!std::isfinite(r) || r < 0.0) throw DomainError("reward must be finite and >= 0");
}

struct Exposure {
  double rewarded = 0.0;  // E[[x̂ − x]₊]
  double penalized = 0.0; // E[[x − x̂]₊]
};

// x < x̂  <=>  x̄ < x̂·e^{αr} = a.
Exposure exposure(const UserType& theta, double baseline, double r) {
  const double decay = std::exp(-theta.alpha * r);
  const double a = baseline * std::exp(theta.alpha * r);
  const LognormalMoments m = lognorm_moments(theta.params, a);
  Exposure e;
  e.rewarded = std::max(0.0, baseline * m.cdf - decay * m.partial_expectation);
  e.penalized = std::max(0.0, decay * m.upper_partial_expectation - baseline * m.survival);
  return e;
}

std::string describe(const UserType& t, double baseline) {
  std::ostringstream os;
  os << "alpha=" << t.alpha << " sigma=" << t.params.sigma << " scale=" << t.params.scale
     << " loc=" << t.params.loc << " baseline=" << baseline;
  return os.str();
}

}  // namespace

void ThresholdSolveConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw DomainError("abs_tol must be > 0");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("r_max must be > 0");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
}

double expected_utility(const UserType& theta, double baseline, double q, double r) {
  check_inputs(theta, baseline, r);
  if (!std::isfinite(q) || q < 0.0) throw DomainError("q must be finite and >= 0");
  const Exposure e = exposure(theta, baseline, r);
  return r * e.rewarded - q * e.penalized;
}

double expected_utility_quadrature(const UserType& theta, double baseline, double q, double r,
                                   int intervals) {
  check_inputs(theta, baseline, r);
  if (intervals < 2) throw DomainError("quadrature needs at least 2 intervals");
  const auto& p = theta.params;
  const double decay = std::exp(-theta.alpha * r);
  auto integrand = [&](double z) {
    const double x = (p.loc + p.scale * std::exp(p.sigma * z)) * decay;
    const double d = baseline - x;
    const double u = d >= 0.0 ? r * d : q * d;
    return u * std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  };
  auto simpson = [&](double lo, double hi, int n) {
    if (hi <= lo) return 0.0;
    n += n % 2;
    const double h = (hi - lo) / n;
    double s = integrand(lo) + integrand(hi);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * integrand(lo + k * h);
    return s * h / 3.0;
  };
  // Split at the kink of the utility so each piece is smooth.
  const double lo = -12.0, hi = 12.0;
  const double a = baseline / decay - p.loc;
  if (a <= 0.0) return simpson(lo, hi, intervals);
  const double kink = std::clamp(std::log(a / p.scale) / p.sigma, lo, hi);
  return simpson(lo, kink, intervals / 2) + simpson(kink, hi, intervals / 2);
}

double expected_reduction(const UserType& theta, double baseline, double r) {
  check_inputs(theta, baseline, r);
  return baseline - theta.params.mean() * std::exp(-theta.alpha * r);
}

double expected_rewarded_reduction(const UserType& theta, double baseline, double r) {
  check_inputs(theta, baseline, r);
  return exposure(theta, baseline, r).rewarded;
}

double expected_overconsumption(const UserType& theta, double baseline, double r) {
  check_inputs(theta, baseline, r);
  return exposure(theta, baseline, r).penalized;
}

double threshold_reward(const UserType& theta, double baseline, double q,
                        const ThresholdSolveConfig& cfg) {
  cfg.validate();
  theta.validate();
  if (!std::isfinite(baseline) || baseline <= 0.0)
    throw DomainError("threshold_reward: baseline must be finite and > 0");
  if (!std::isfinite(q) || q < 0.0) throw DomainError("threshold_reward: q must be >= 0");
  if (q == 0.0) return 0.0;

  auto mu = [&](double r) {
    const Exposure e = exposure(theta, baseline, r);
    return r * e.rewarded - q * e.penalized;
  };

  double lo = 0.0;
  double f_lo = mu(0.0);
  if (f_lo >= -cfg.abs_tol) return 0.0;

  double hi = 1.0;
  double f_hi = mu(hi);
  while (f_hi <= 0.0) {
    lo = hi;
    f_lo = f_hi;
    if (hi >= cfg.r_max)
      throw UnboundedThresholdError("threshold_reward: no sign change below r_max=" +
                                    std::to_string(cfg.r_max) + " for " +
                                    describe(theta, baseline));
    hi = std::min(2.0 * hi, cfg.r_max);
    f_hi = mu(hi);
  }

  // Regula falsi start inside the bracket.
  double r = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
  double best_r = r;
  double best_f = std::numeric_limits<double>::infinity();
  double last_step = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double f = mu(r);
    if (std::abs(f) < std::abs(best_f)) {
      best_f = f;
      best_r = r;
    }
    if (f == 0.0) return r;
    if (f < 0.0) {
      lo = r;
    } else {
      hi = r;
    }
    const double x_tol = 1e-12 * std::max(1.0, r);
    if (std::abs(f) <= cfg.abs_tol && (last_step <= x_tol || hi - lo <= x_tol)) return r;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;

    const double h = 1e-6 * std::max(1.0, r);
    const double r_minus = std::max(r - h, 0.0);
    const double slope = (mu(r + h) - mu(r_minus)) / (r + h - r_minus);
    double next = slope > 0.0 ? r - f / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    last_step = std::abs(next - r);
    r = next;
  }
  if (std::abs(best_f) <= cfg.abs_tol) return best_r;
  throw ConvergenceError("threshold_reward: no convergence in " + std::to_string(cfg.max_iter) +
                         " iterations for " + describe(theta, baseline));
}

double max_feasible_target(std::span<const Participant> users, double q,
                           const ThresholdSolveConfig& cfg) {
  const std::size_t n = users.size();
  if (n < 3) throw SizeError("max_feasible_target: need at least 3 users, got " + std::to_string(n));
  std::vector<double> thresholds(n);
  for (std::size_t i = 0; i < n; ++i)
    thresholds[i] = threshold_reward(users[i].type, users[i].baseline, q, cfg);
  const auto order = detail::threshold_order(
      n, [&](std::size_t i) { return thresholds[i]; },
      [&](std::size_t i) -> const std::string& { return users[i].id; });
  const double r = thresholds[order[n - 2]];
  double sum = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const auto& u = users[order[k]];
    sum += expected_reduction(u.type, u.baseline, r);
  }
  return sum;
}

}  // namespace drauction

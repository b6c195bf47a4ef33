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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "drauction/dist.hpp"
#include "drauction/errors.hpp"

namespace drauction {
namespace {

// Location is capped just below the sample minimum; the likelihood is
// unbounded as loc approaches it.
constexpr double kLocCapFraction = 1.0 - 1e-6;
constexpr double kBracketRelTol = 1e-6;
constexpr int kGridPoints = 96;

struct LogMoments {
  double mu = 0.0;
  double sigma = 0.0;
  double sum_log = 0.0;
};

LogMoments log_moments(std::span<const double> xs, double loc) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += std::log(x - loc);
  const double mu = sum / n;
  double ss = 0.0;
  for (double x : xs) {
    const double d = std::log(x - loc) - mu;
    ss += d * d;
  }
  return {mu, std::sqrt(ss / n), sum};
}

// Profile log-likelihood up to an additive constant.
double profile_loglik(std::span<const double> xs, double loc) {
  const LogMoments m = log_moments(xs, loc);
  if (!(m.sigma > 0.0)) return -std::numeric_limits<double>::infinity();
  return -m.sum_log - static_cast<double>(xs.size()) * std::log(m.sigma);
}

double golden_section_max(std::span<const double> xs, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = profile_loglik(xs, c);
  double fd = profile_loglik(xs, d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = profile_loglik(xs, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = profile_loglik(xs, d);
    }
  }
  return 0.5 * (lo + hi);
}

double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

CauchyPrior fit_cauchy(const std::vector<double>& v) {
  const double half_iqr = 0.5 * (quantile(v, 0.75) - quantile(v, 0.25));
  if (!(half_iqr > 0.0)) throw FitError("fit_compound_prior: Cauchy fit has zero spread");
  return {quantile(v, 0.5), half_iqr};
}

ExponentialPrior fit_exponential(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (!(mean > 0.0)) throw FitError("fit_compound_prior: Exponential fit has zero mean");
  return {1.0 / mean};
}

}  // namespace

ConsumptionParams fit_lognormal3(std::span<const double> samples) {
  if (samples.size() < kMinFitSamples)
    throw FitError("fit_lognormal3: need at least " + std::to_string(kMinFitSamples) +
                   " samples, got " + std::to_string(samples.size()));
  for (double x : samples)
    if (!std::isfinite(x) || x <= 0.0) throw FitError("fit_lognormal3: samples must be finite and > 0");
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double x_min = *min_it;
  if (*max_it == x_min) throw FitError("fit_lognormal3: samples are all equal");

  // Coarse scan over a grid that is geometric in the gap x_min - loc, which
  // resolves the steep region near the cap, then golden-section refinement
  // inside the bracket around the best grid point.
  const double loc_cap = kLocCapFraction * x_min;
  std::vector<double> grid(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) {
    const double gap = x_min * std::pow(1e-6, static_cast<double>(k) / (kGridPoints - 1));
    grid[k] = k == 0 ? 0.0 : std::min(x_min - gap, loc_cap);
  }
  int best = 0;
  double best_ll = profile_loglik(samples, grid[0]);
  for (int k = 1; k < kGridPoints; ++k) {
    const double ll = profile_loglik(samples, grid[k]);
    if (ll > best_ll) {
      best_ll = ll;
      best = k;
    }
  }
  if (!std::isfinite(best_ll)) throw FitError("fit_lognormal3: degenerate samples");

  const double lo = grid[std::max(best - 1, 0)];
  const double hi = grid[std::min(best + 1, kGridPoints - 1)];
  double loc = golden_section_max(samples, lo, hi, kBracketRelTol * x_min);
  if (profile_loglik(samples, loc) < best_ll) loc = grid[best];

  const LogMoments m = log_moments(samples, loc);
  ConsumptionParams out{m.sigma, std::exp(m.mu), loc};
  out.validate();
  return out;
}

CompoundPrior fit_compound_prior(std::span<const ConsumptionParams> per_user,
                                 std::optional<UniformPrior> alpha_bounds, PriorLayout layout) {
  if (per_user.size() < kMinPriorUsers)
    throw FitError("fit_compound_prior: need at least " + std::to_string(kMinPriorUsers) +
                   " users, got " + std::to_string(per_user.size()));
  std::vector<double> sigmas, scales, locs;
  for (const auto& p : per_user) {
    p.validate();
    sigmas.push_back(p.sigma);
    scales.push_back(p.scale);
    locs.push_back(p.loc);
  }

  CompoundPrior prior;
  prior.synthetic = false;
  const double n = static_cast<double>(sigmas.size());
  const double mean = std::accumulate(sigmas.begin(), sigmas.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : sigmas) ss += (s - mean) * (s - mean);
  prior.sigma_prior = {mean, std::sqrt(ss / n)};
  if (!(prior.sigma_prior.stddev > 0.0)) {
    // Identical shapes: keep a tiny spread so the prior stays samplable.
    prior.sigma_prior.stddev = 1e-9 * std::max(std::abs(mean), 1.0);
  }

  if (layout == PriorLayout::kScaleCauchyLocExponential) {
    prior.scale_prior = fit_cauchy(scales);
    prior.loc_prior = fit_exponential(locs);
  } else {
    prior.scale_prior = fit_exponential(scales);
    prior.loc_prior = fit_cauchy(locs);
  }
  prior.alpha_prior = alpha_bounds.value_or(UniformPrior{0.05, 0.06});
  prior.validate();
  return prior;
}

}  // namespace drauction

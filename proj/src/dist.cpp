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

#include "drauction/dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "drauction/errors.hpp"

namespace drauction {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

LognormalMoments lognorm_moments(const ConsumptionParams& params, double a) {
  params.validate();
  if (std::isnan(a)) throw DomainError("lognorm_moments: threshold is NaN");

  LognormalMoments m;
  const double tail_mean = params.scale * std::exp(0.5 * params.sigma * params.sigma);
  m.mean = params.loc + tail_mean;
  if (a <= params.loc) {
    m.upper_partial_expectation = m.mean;
    return m;
  }
  if (std::isinf(a)) {
    m.cdf = 1.0;
    m.survival = 0.0;
    m.partial_expectation = m.mean;
    return m;
  }
  const double z = (std::log(a - params.loc) - std::log(params.scale)) / params.sigma;
  m.cdf = std_normal_cdf(z);
  m.survival = std_normal_cdf(-z);
  m.partial_expectation = params.loc * m.cdf + tail_mean * std_normal_cdf(z - params.sigma);
  m.upper_partial_expectation =
      params.loc * m.survival + tail_mean * std_normal_cdf(params.sigma - z);
  return m;
}

double draw_base_consumption(const ConsumptionParams& params, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  return params.loc + params.scale * std::exp(params.sigma * z(rng));
}

std::vector<double> sample_base_consumption(const ConsumptionParams& params, std::size_t n,
                                            Rng& rng) {
  params.validate();
  std::vector<double> out;
  out.reserve(n);
  std::normal_distribution<double> z(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(params.loc + params.scale * std::exp(params.sigma * z(rng)));
  return out;
}

void CompoundPrior::validate() const {
  auto bad = [](double v) { return !std::isfinite(v) || v <= 0.0; };
  if (!std::isfinite(sigma_prior.mean) || bad(sigma_prior.stddev))
    throw DomainError("compound prior: sigma prior needs finite mean and stddev > 0");
  auto check = [&](const PositivePrior& p, const char* name) {
    if (const auto* c = std::get_if<CauchyPrior>(&p)) {
      if (!std::isfinite(c->location) || bad(c->scale))
        throw DomainError(std::string("compound prior: ") + name +
                          " Cauchy needs finite location and scale > 0");
    } else if (bad(std::get<ExponentialPrior>(p).rate)) {
      throw DomainError(std::string("compound prior: ") + name + " Exponential needs rate > 0");
    }
  };
  check(scale_prior, "scale");
  check(loc_prior, "loc");
  if (bad(alpha_prior.lo) || !std::isfinite(alpha_prior.hi) || !(alpha_prior.lo < alpha_prior.hi))
    throw DomainError("compound prior: alpha prior needs 0 < lo < hi");
  if (bad(cauchy_cap)) throw DomainError("compound prior: cauchy cap must be > 0");
}

CompoundPrior CompoundPrior::synthetic_default() { return CompoundPrior{}; }

namespace {

class RejectionSampler {
 public:
  explicit RejectionSampler(Rng& rng) : rng_(rng) {}

  template <typename Draw, typename Accept>
  double draw(Draw&& dist, Accept&& accept) {
    for (std::size_t tries = 0;; ++tries) {
      ++attempts_;
      const double v = dist(rng_);
      if (accept(v)) {
        ++accepted_;
        return v;
      }
      if (tries > kMaxTriesPerDraw || (attempts_ >= kMinAttempts && 100 * accepted_ < attempts_))
        throw PriorError("sample_user_types: rejection rate above 99%, prior is degenerate");
    }
  }

 private:
  static constexpr std::size_t kMaxTriesPerDraw = 100000;
  static constexpr std::size_t kMinAttempts = 1000;
  Rng& rng_;
  std::size_t attempts_ = 0;
  std::size_t accepted_ = 0;
};

double draw_positive(const PositivePrior& prior, double cap, bool allow_zero,
                     RejectionSampler& sampler) {
  auto in_domain = [&](double v) {
    return std::isfinite(v) && (allow_zero ? v >= 0.0 : v > 0.0);
  };
  if (const auto* c = std::get_if<CauchyPrior>(&prior)) {
    std::cauchy_distribution<double> dist(c->location, c->scale);
    return sampler.draw(dist, [&](double v) { return in_domain(v) && v <= cap; });
  }
  std::exponential_distribution<double> dist(std::get<ExponentialPrior>(prior).rate);
  return sampler.draw(dist, in_domain);
}

}  // namespace

std::vector<UserType> sample_user_types(const CompoundPrior& prior, std::size_t n, Rng& rng) {
  prior.validate();
  if (n < 1) throw DomainError("sample_user_types: n must be >= 1");
  RejectionSampler sampler(rng);
  std::normal_distribution<double> sigma_dist(prior.sigma_prior.mean, prior.sigma_prior.stddev);
  std::uniform_real_distribution<double> alpha_dist(prior.alpha_prior.lo, prior.alpha_prior.hi);

  std::vector<UserType> users;
  users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    UserType u;
    u.params.sigma =
        sampler.draw(sigma_dist, [](double v) { return std::isfinite(v) && v > 0.0; });
    u.params.scale = draw_positive(prior.scale_prior, prior.cauchy_cap, false, sampler);
    u.params.loc = draw_positive(prior.loc_prior, prior.cauchy_cap, true, sampler);
    // uniform_real_distribution is half-open; clamp guards against rounding to hi.
    u.alpha = std::min(alpha_dist(rng), prior.alpha_prior.hi);
    users.push_back(u);
  }
  return users;
}

}  // namespace drauction

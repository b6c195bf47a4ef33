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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "drauction/analytic.hpp"
#include "drauction/errors.hpp"
#include "oracles.hpp"

using namespace drauction;

namespace {

UserType random_type(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sigma(0.2, 1.4), scale(0.2, 3.0), loc(0.0, 0.8),
      alpha(0.03, 0.6);
  return {alpha(rng), {sigma(rng), scale(rng), loc(rng)}};
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("utility at zero reward is negative") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
      const UserType t = random_type(rng);
      CHECK(expected_utility(t, 0.5 + i * 0.02, 5.0, 0.0) < 0.0);
    }
  }

  TEST_CASE("utility with q = 0 is non-negative") {
    const UserType t{0.5, {1.0, 1.0, 0.0}};
    for (double r = 0.1; r < 5.0; r += 0.3) CHECK(expected_utility(t, 1.0, 0.0, r) >= 0.0);
  }

  TEST_CASE("closed form matches the put/call oracle") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> xhat(0.1, 5.0), r(0.0, 20.0), q(0.0, 10.0);
    for (int i = 0; i < 500; ++i) {
      const UserType t = random_type(rng);
      const double x = xhat(rng), rr = r(rng), qq = q(rng);
      const double lib = expected_utility(t, x, qq, rr);
      CHECK(lib == doctest::Approx(oracle::utility(t, x, qq, rr)).epsilon(1e-9).scale(1.0));
      CHECK(expected_reduction(t, x, rr) ==
            doctest::Approx(oracle::reduction(t, x, rr)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("closed form matches quadrature") {
    const UserType t{0.4, {0.9, 1.2, 0.3}};
    for (double r : {0.0, 0.7, 2.5, 8.0}) {
      CHECK(expected_utility_quadrature(t, 1.4, 5.0, r) ==
            doctest::Approx(expected_utility(t, 1.4, 5.0, r)).epsilon(1e-7).scale(1.0));
    }
  }

  TEST_CASE("utility example against Monte Carlo") {
    const UserType t{0.5, {1.0, 1.0, 0.0}};
    const auto est = oracle::mc_utility(t, 1.0, 5.0, 2.0, 4'000'000, 31);
    CHECK(std::abs(expected_utility(t, 1.0, 5.0, 2.0) - est.mean) <= 3 * est.std_error);
  }

  TEST_CASE("expected reduction examples") {
    const double mean = std::exp(0.5);
    const UserType t{0.5, {1.0, 1.0, 0.0}};
    CHECK(expected_reduction(t, mean, 0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(expected_reduction(t, 1.0, std::log(4.0) / 0.5) ==
          doctest::Approx(1 - mean / 4).epsilon(1e-14));
    CHECK(expected_reduction(t, 1.0, std::log(4.0) / 0.5) == doctest::Approx(0.587820).epsilon(1e-6));
    CHECK(expected_reduction(t, 0.5, 0.0) == doctest::Approx(-1.148721).epsilon(1e-6));
  }

  TEST_CASE("reduction against Monte Carlo") {
    const UserType t{0.2, {0.8, 1.5, 0.3}};
    const auto est = oracle::mc_reduction(t, 2.0, 3.0, 1'000'000, 41);
    CHECK(std::abs(expected_reduction(t, 2.0, 3.0) - est.mean) <= 3 * est.std_error);
  }

  TEST_CASE("utility is strictly increasing in reward") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xhat(0.2, 4.0);
    for (int i = 0; i < 100; ++i) {
      const UserType t = random_type(rng);
      const double x = xhat(rng);
      double prev = expected_utility(t, x, 5.0, 0.0);
      for (int k = 1; k <= 100; ++k) {
        const double cur = expected_utility(t, x, 5.0, 0.5 * k);
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }

  TEST_CASE("threshold examples") {
    const double r1 = threshold_reward({0.5, {1e-6, 2.0, 0.0}}, 1.0, 5.0);
    CHECK(r1 == doctest::Approx(std::log(2.0) / 0.5).epsilon(1e-4));
    CHECK(r1 == doctest::Approx(1.386294).epsilon(1e-4));
    CHECK(r1 == doctest::Approx(oracle::threshold_bisection({0.5, {1e-6, 2.0, 0.0}}, 1.0, 5.0))
                    .epsilon(1e-6));

    const double r2 = threshold_reward({0.5, {1e-6, 0.5, 0.0}}, 1.0, 5.0);
    CHECK(r2 < 1e-3);
    CHECK(r2 >= 0.0);

    CHECK(threshold_reward({0.5, {1.0, 1.0, 0.0}}, 1.0, 0.0) == 0.0);
  }

  TEST_CASE("threshold contract and agreement with bisection") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> xhat(0.2, 4.0);
    for (int i = 0; i < 200; ++i) {
      const UserType t = random_type(rng);
      const double x = xhat(rng);
      const double r = threshold_reward(t, x, 5.0);
      CHECK(std::abs(expected_utility(t, x, 5.0, r)) <= 1e-8);
      CHECK(r == doctest::Approx(oracle::threshold_bisection(t, x, 5.0)).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("threshold solver errors") {
    ThresholdSolveConfig cfg;
    cfg.r_max = 2.0;
    CHECK_THROWS_AS(threshold_reward({0.01, {1.0, 5.0, 0.0}}, 0.1, 5.0, cfg),
                    UnboundedThresholdError);
    cfg = {};
    cfg.max_iter = 1;
    CHECK_THROWS_AS(threshold_reward({0.05, {0.9, 0.45, 0.1}}, 0.4, 5.0, cfg), ConvergenceError);
    cfg = {};
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("feasible target on three identical users") {
    // Identical users share a threshold; the single middle term remains.
    const UserType t{0.3, {0.5, 1.0, 0.0}};
    std::vector<Participant> users{{"a", t, 2.0}, {"b", t, 2.0}, {"c", t, 2.0}};
    const double r = threshold_reward(t, 2.0, 5.0);
    CHECK(max_feasible_target(users, 5.0) == doctest::Approx(expected_reduction(t, 2.0, r)));
    users.pop_back();
    CHECK_THROWS_AS(max_feasible_target(users, 5.0), SizeError);
  }
}

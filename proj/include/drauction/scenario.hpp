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

// Seeded experiment harness: sample a user pool from a compound prior, draw
// k-day synthetic baselines, solve thresholds and sweep the target M for the
// mechanism and the omniscient benchmark.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "drauction/analytic.hpp"
#include "drauction/dist.hpp"

namespace drauction {

enum class ScenarioMode { kCompare, kDecompose, kPayments };
enum class OutputFormat { kCsv, kJson };

std::string_view to_string(ScenarioMode m);
ScenarioMode parse_mode(std::string_view s);  // throws ConfigError

/// `steps` evenly spaced points from lo to hi inclusive.
std::vector<double> linspace_grid(double lo, double hi, std::size_t steps);

struct ScenarioConfig {
  std::size_t n = 500;
  double q = 5.0;
  UniformPrior alpha_bounds{0.05, 0.06};  // overrides prior.alpha_prior
  CompoundPrior prior = CompoundPrior::synthetic_default();
  std::vector<double> m_grid = linspace_grid(0.0, 200.0, 21);
  std::vector<std::size_t> k_set{5, 10, 20, 40};
  std::size_t compare_k = 10;  // baseline days in compare mode
  std::size_t mc_reps = 200;
  std::uint64_t seed = 42;
  ThresholdSolveConfig solver;

  /// Throws ConfigError.
  void validate() const;
};

struct SweepRow {
  double target = 0.0;  // M
  std::size_t n_targeted_mech = 0;
  std::size_t n_targeted_omn = 0;
  double gross_mech = 0.0;
  double gross_omn = 0.0;
  double net_mech = 0.0;
  double sum_delta_bl = 0.0;  // Σ_T (x̂ − x̄), mechanism targets
  double sum_delta_r = 0.0;   // Σ_T x̄(1 − e^{−αr})
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  ScenarioMode mode = ScenarioMode::kCompare;
  std::vector<SweepRow> rows;  // grouped by k, then ascending M
  std::vector<std::string> warnings;
  bool synthetic_prior = true;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double q = 0.0;
};

/// The scenario's user pool with k-day synthetic baselines. Ids are
/// `u00000`, `u00001`, ... Types come from stream {1} under the master seed and
/// user i's baseline for k days from stream {2, k, i}.
std::vector<Participant> sample_participants(const ScenarioConfig& cfg, std::size_t k);

/// Runs one experiment. Infeasible M entries are skipped with a warning;
/// throws InfeasibleTargetError when no entry of the grid is feasible.
/// Decompose mode averages the reduction components over mc_reps draws of
/// each user's base consumption; the other modes report their expectations.
SweepResult run_scenario(const ScenarioConfig& cfg, ScenarioMode mode);

inline constexpr std::string_view kResultsHeader =
    "M,n_targeted_mech,n_targeted_omn,gross_mech,gross_omn,net_mech,sum_delta_bl,sum_delta_r,k,"
    "seed";

void write_results_csv(std::ostream& out, const SweepResult& result);
void write_results_json(std::ostream& out, const SweepResult& result);
std::vector<SweepRow> parse_results_csv(std::istream& in);

/// Numbers carry 9 significant digits. Throws IoError with the path on failure.
void emit_results(const SweepResult& result, const std::filesystem::path& path,
                  OutputFormat format);

}  // namespace drauction

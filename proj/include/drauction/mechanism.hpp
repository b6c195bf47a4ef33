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

// Reward-allocation mechanism, omniscient benchmark, payment accounting and
// executable individual-rationality / incentive-compatibility audits.
//
// Bidders are sorted ascending by threshold reward into a ranking R with
// 1-based ranks. For a target M the mechanism picks
//
//   j_max = min { j : Σ_{i<=j} δ_i(r̃_j) >= M },   T = ranks 1..j_max,
//
// and pays each targeted i the threshold r̃_{j(i)} found by re-running the
// same search on the ranking with i removed. The payment never depends on
// i's own report.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "drauction/analytic.hpp"
#include "drauction/model.hpp"

namespace drauction {

/// Expected reduction (kWh) as a function of the offered reward ($/kWh).
using ReductionFn = std::function<double(double)>;

struct Bidder {
  std::string id;
  double threshold = 0.0;  // r̃_i
  ReductionFn reduction;   // δ_i(r | reported type), non-decreasing
};

/// Validates a bidder: finite non-negative threshold and a reduction function
/// that is non-decreasing on the grid {0, r̃, 2r̃ + 1}.
Bidder make_bidder(std::string id, double threshold, ReductionFn reduction);

/// Bidder backed by the lognormal model: threshold_reward and
/// expected_reduction of the participant's reported type.
Bidder make_lognormal_bidder(const Participant& p, double q, const ThresholdSolveConfig& cfg = {});

/// One bidder per participant, threshold solves run in parallel.
std::vector<Bidder> make_lognormal_bidders(std::span<const Participant> users, double q,
                                           const ThresholdSolveConfig& cfg = {});

struct Allocation {
  std::vector<std::string> ranking;          // all ids, ascending threshold
  std::vector<std::string> targeted;         // T in rank order
  std::map<std::string, double> rewards;     // zero for non-targeted ids
  std::map<std::string, bool> decisions;     // true exactly for T
  std::size_t j_max = 0;                     // 1-based rank, 0 if T is empty
  std::map<std::string, std::size_t> j_of;   // targeted id -> rank whose threshold is paid

  bool is_targeted(const std::string& id) const;
  double reward(const std::string& id) const;
};

/// Σ_{i=2}^{n-1} δ_i(r̃_{n-1}), the largest target with guaranteed
/// termination. Throws SizeError for n < 3.
double feasibility_bound(std::span<const Bidder> bidders);

/// Σ_i δ_i(r̃_i), the largest target the omniscient rule can meet.
double omniscient_capacity(std::span<const Bidder> bidders);

/// Runs the mechanism. M = 0 yields an empty allocation. Throws DomainError
/// for M < 0 or duplicate ids and InfeasibleTargetError when M exceeds the
/// feasibility bound or a search finds no qualifying rank.
Allocation run_dr_mechanism(std::span<const Bidder> bidders, double target);

/// Omniscient benchmark: smallest j° with Σ_{i<=j°} δ_i(r̃_i) >= M, each
/// targeted user paid r̃_i + epsilon.
Allocation run_omniscient(std::span<const Bidder> bidders, double target, double epsilon = 0.0);

struct PaymentSummary {
  double net = 0.0;    // Σ_T μ_i(r_i), expected transfer net of penalties
  double gross = 0.0;  // Σ_T r_i·E[[x̂_i − x_i(r_i)]₊], expected rewards disbursed
};

/// Throws LookupError if a targeted id has no participant.
PaymentSummary expected_payments(const Allocation& alloc, std::span<const Participant> users,
                                 double q);

struct AllocationMeta {
  double target = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

/// `# M=..,q=..,j_max=..,seed=..` comment line, then `id,targeted,reward,j_of`
/// in rank order. j_of is empty for non-targeted ids.
void write_allocation_csv(std::ostream& out, const Allocation& alloc, const AllocationMeta& meta);

// Incentive audits.

struct MisreportOutcome {
  bool targeted_truthful = false;
  bool targeted_misreport = false;
  double truthful_utility = 0.0;   // true μ under truthful reporting
  double misreport_utility = 0.0;  // true μ under the misreport
  bool feasible = true;            // false when the misreport made M infeasible
};

/// Re-runs the mechanism with user `index` reporting `report` and evaluates
/// both outcomes under the user's true type.
MisreportOutcome evaluate_misreport(std::span<const Participant> users, std::size_t index,
                                    const UserType& report, double target, double q,
                                    const ThresholdSolveConfig& cfg = {});

struct AuditViolation {
  enum class Kind { kIndividualRationality, kIncentiveCompatibility };
  Kind kind;
  std::string user_id;
  std::size_t trial = 0;      // misreport index, 0 for IR checks
  std::uint64_t seed = 0;     // stream seed reproducing the misreport
  UserType report;            // reported type (the true type for IR)
  double truthful_utility = 0.0;
  double misreport_utility = 0.0;
};

struct AuditReport {
  std::size_t ir_checked = 0;
  std::size_t ic_trials = 0;
  std::size_t ic_skipped = 0;         // misreports that made the instance infeasible
  std::size_t ic_left_target = 0;     // truthful-targeted users pushed out, utility to 0
  std::size_t ic_entered_target = 0;  // non-targeted users pulled in
  double tolerance = 0.0;
  std::vector<AuditViolation> violations;

  std::size_t ir_violations() const;
  std::size_t ic_violations() const;
  bool passed() const { return violations.empty(); }
};

/// IR: every targeted user has μ_i(r_i) >= −10·abs_tol and every other user
/// gets zero. IC: `n_misreports` random reports, each scaling α, σ, s and ℓ
/// by independent log-uniform factors in [0.5, 2], must not raise the
/// reporter's true expected utility by more than 10·abs_tol. Misreport k
/// draws from make_stream(seed, {k}).
AuditReport audit_incentives(std::span<const Participant> users, double target, double q,
                             std::size_t n_misreports, std::uint64_t seed,
                             const ThresholdSolveConfig& cfg = {});

}  // namespace drauction

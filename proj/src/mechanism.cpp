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

#include "drauction/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>

#include "drauction/errors.hpp"
#include "drauction/parallel.hpp"
#include "drauction/random.hpp"
#include "ordering.hpp"
#include "text.hpp"

namespace drauction {

bool Allocation::is_targeted(const std::string& id) const {
  const auto it = decisions.find(id);
  return it != decisions.end() && it->second;
}

double Allocation::reward(const std::string& id) const {
  const auto it = rewards.find(id);
  return it == rewards.end() ? 0.0 : it->second;
}

Bidder make_bidder(std::string id, double threshold, ReductionFn reduction) {
  if (!std::isfinite(threshold) || threshold < 0.0)
    throw DomainError("bidder " + id + ": threshold must be finite and >= 0");
  if (!reduction) throw DomainError("bidder " + id + ": missing reduction function");
  const double grid[3] = {0.0, threshold, 2.0 * threshold + 1.0};
  double prev = reduction(grid[0]);
  for (int k = 1; k < 3; ++k) {
    const double cur = reduction(grid[k]);
    if (!std::isfinite(cur) || cur < prev)
      throw DomainError("bidder " + id + ": reduction function is not non-decreasing");
    prev = cur;
  }
  return Bidder{std::move(id), threshold, std::move(reduction)};
}

Bidder make_lognormal_bidder(const Participant& p, double q, const ThresholdSolveConfig& cfg) {
  const double threshold = threshold_reward(p.type, p.baseline, q, cfg);
  UserType type = p.type;
  double baseline = p.baseline;
  return make_bidder(p.id, threshold, [type, baseline](double r) {
    return expected_reduction(type, baseline, r);
  });
}

std::vector<Bidder> make_lognormal_bidders(std::span<const Participant> users, double q,
                                           const ThresholdSolveConfig& cfg) {
  std::vector<Bidder> out(users.size());
  parallel_for(users.size(), [&](std::size_t i) { out[i] = make_lognormal_bidder(users[i], q, cfg); });
  return out;
}

namespace {

// Bidders in rank order with the quantities every search needs.
class Ranking {
 public:
  explicit Ranking(std::span<const Bidder> bidders) : bidders_(bidders) {
    std::set<std::string> seen;
    for (const auto& b : bidders) {
      if (!seen.insert(b.id).second) throw DomainError("duplicate bidder id '" + b.id + "'");
    }
    order_ = detail::threshold_order(
        bidders.size(), [&](std::size_t i) { return bidders[i].threshold; },
        [&](std::size_t i) -> const std::string& { return bidders[i].id; });
    own_.resize(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) {
      own_[k] = at(k).reduction(at(k).threshold);
      if (k > 0 && own_[k] < 0.0) negative_.push_back(k);
    }
  }

  std::size_t size() const { return order_.size(); }
  const Bidder& at(std::size_t rank0) const { return bidders_[order_[rank0]]; }
  double own_reduction(std::size_t rank0) const { return own_[rank0]; }

  // Smallest position p in the ranking with `skip` removed such that
  // Σ_{q<=p} δ_q(r̃_p) >= target, as a 0-based rank in the full ranking.
  //
  // The partial sums are non-decreasing up to the first position (after the
  // first) whose own-threshold reduction is negative, so that prefix is
  // binary searched; any remaining tail is scanned linearly.
  std::optional<std::size_t> search(double target, std::optional<std::size_t> skip) const {
    const std::size_t m = size() - (skip ? 1 : 0);
    if (m == 0) return std::nullopt;
    auto full = [&](std::size_t p) { return skip && p >= *skip ? p + 1 : p; };
    auto sum_at = [&](std::size_t p) {
      const double r = at(full(p)).threshold;
      double s = 0.0;
      for (std::size_t q = 0; q <= p; ++q) s += at(full(q)).reduction(r);
      return s;
    };

    std::size_t monotone_end = m;  // positions [0, monotone_end) are monotone
    for (std::size_t k : negative_) {
      if (skip && k == *skip) continue;
      const std::size_t pos = skip && k > *skip ? k - 1 : k;
      if (pos == 0) continue;
      monotone_end = pos;
      break;
    }

    std::size_t lo = 0, hi = monotone_end;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (sum_at(mid) >= target) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo < monotone_end) return full(lo);
    for (std::size_t p = monotone_end; p < m; ++p)
      if (sum_at(p) >= target) return full(p);
    return std::nullopt;
  }

  Allocation empty_allocation() const {
    Allocation a;
    for (std::size_t k = 0; k < size(); ++k) {
      a.ranking.push_back(at(k).id);
      a.rewards[at(k).id] = 0.0;
      a.decisions[at(k).id] = false;
    }
    return a;
  }

 private:
  std::span<const Bidder> bidders_;
  std::vector<std::size_t> order_;
  std::vector<double> own_;
  std::vector<std::size_t> negative_;
};

void check_target(double target) {
  if (!std::isfinite(target) || target < 0.0)
    throw DomainError("target M must be finite and >= 0, got " + std::to_string(target));
}

}  // namespace

double feasibility_bound(std::span<const Bidder> bidders) {
  const std::size_t n = bidders.size();
  if (n < 3) throw SizeError("feasibility_bound: need at least 3 bidders, got " + std::to_string(n));
  const Ranking ranking(bidders);
  const double r = ranking.at(n - 2).threshold;
  double sum = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) sum += ranking.at(k).reduction(r);
  return sum;
}

double omniscient_capacity(std::span<const Bidder> bidders) {
  double sum = 0.0;
  for (const auto& b : bidders) sum += b.reduction(b.threshold);
  return sum;
}

Allocation run_dr_mechanism(std::span<const Bidder> bidders, double target) {
  check_target(target);
  const Ranking ranking(bidders);
  Allocation alloc = ranking.empty_allocation();
  if (target == 0.0) return alloc;

  const double bound = feasibility_bound(bidders);
  if (target > bound)
    throw InfeasibleTargetError("target M=" + std::to_string(target) +
                                " exceeds the feasibility bound " + std::to_string(bound));
  const auto j_max = ranking.search(target, std::nullopt);
  if (!j_max) throw InfeasibleTargetError("no rank reaches target M=" + std::to_string(target));

  alloc.j_max = *j_max + 1;
  for (std::size_t i = 0; i <= *j_max; ++i) {
    const auto j = ranking.search(target, i);
    if (!j)
      throw InfeasibleTargetError("target M=" + std::to_string(target) +
                                  " unreachable without bidder " + ranking.at(i).id);
    const std::string& id = ranking.at(i).id;
    alloc.targeted.push_back(id);
    alloc.decisions[id] = true;
    alloc.rewards[id] = ranking.at(*j).threshold;
    alloc.j_of[id] = *j + 1;
  }
  return alloc;
}

Allocation run_omniscient(std::span<const Bidder> bidders, double target, double epsilon) {
  check_target(target);
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw DomainError("epsilon must be >= 0");
  const Ranking ranking(bidders);
  Allocation alloc = ranking.empty_allocation();
  if (target == 0.0) return alloc;

  double sum = 0.0;
  std::optional<std::size_t> j;
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    sum += ranking.own_reduction(k);
    if (sum >= target) {
      j = k;
      break;
    }
  }
  if (!j)
    throw InfeasibleTargetError("target M=" + std::to_string(target) +
                                " exceeds the omniscient capacity " + std::to_string(sum));
  alloc.j_max = *j + 1;
  for (std::size_t k = 0; k <= *j; ++k) {
    const std::string& id = ranking.at(k).id;
    alloc.targeted.push_back(id);
    alloc.decisions[id] = true;
    alloc.rewards[id] = ranking.at(k).threshold + epsilon;
    alloc.j_of[id] = k + 1;
  }
  return alloc;
}

PaymentSummary expected_payments(const Allocation& alloc, std::span<const Participant> users,
                                 double q) {
  std::map<std::string, const Participant*> by_id;
  for (const auto& u : users) by_id[u.id] = &u;
  PaymentSummary out;
  for (const auto& id : alloc.targeted) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw LookupError("expected_payments: unknown id '" + id + "'");
    const Participant& p = *it->second;
    const double r = alloc.reward(id);
    out.net += expected_utility(p.type, p.baseline, q, r);
    out.gross += r * expected_rewarded_reduction(p.type, p.baseline, r);
  }
  return out;
}

void write_allocation_csv(std::ostream& out, const Allocation& alloc, const AllocationMeta& meta) {
  out << "# M=" << text::shortest(meta.target) << ",q=" << text::shortest(meta.q)
      << ",j_max=" << alloc.j_max << ",seed=" << meta.seed << '\n';
  out << "id,targeted,reward,j_of\n";
  for (const auto& id : alloc.ranking) {
    const bool t = alloc.is_targeted(id);
    out << id << ',' << (t ? 1 : 0) << ',' << text::shortest(alloc.reward(id)) << ',';
    if (t) out << alloc.j_of.at(id);
    out << '\n';
  }
}

namespace {

double true_utility(const Allocation& alloc, const Participant& p, double q) {
  if (!alloc.is_targeted(p.id)) return 0.0;
  return expected_utility(p.type, p.baseline, q, alloc.reward(p.id));
}

MisreportOutcome misreport_against(std::span<const Participant> users,
                                   std::span<const Bidder> truthful_bidders,
                                   const Allocation& truthful, std::size_t index,
                                   const UserType& report, double target, double q,
                                   const ThresholdSolveConfig& cfg) {
  const Participant& truth = users[index];
  MisreportOutcome out;
  out.targeted_truthful = truthful.is_targeted(truth.id);
  out.truthful_utility = true_utility(truthful, truth, q);

  std::vector<Bidder> bidders(truthful_bidders.begin(), truthful_bidders.end());
  try {
    bidders[index] = make_lognormal_bidder(Participant{truth.id, report, truth.baseline}, q, cfg);
    const Allocation alloc = run_dr_mechanism(bidders, target);
    out.targeted_misreport = alloc.is_targeted(truth.id);
    out.misreport_utility = true_utility(alloc, truth, q);
  } catch (const InfeasibleTargetError&) {
    out.feasible = false;
  } catch (const UnboundedThresholdError&) {
    out.feasible = false;
  }
  return out;
}

}  // namespace

MisreportOutcome evaluate_misreport(std::span<const Participant> users, std::size_t index,
                                    const UserType& report, double target, double q,
                                    const ThresholdSolveConfig& cfg) {
  if (index >= users.size()) throw LookupError("evaluate_misreport: index out of range");
  report.validate();
  const auto bidders = make_lognormal_bidders(users, q, cfg);
  const Allocation truthful = run_dr_mechanism(bidders, target);
  return misreport_against(users, bidders, truthful, index, report, target, q, cfg);
}

std::size_t AuditReport::ir_violations() const {
  return std::count_if(violations.begin(), violations.end(), [](const AuditViolation& v) {
    return v.kind == AuditViolation::Kind::kIndividualRationality;
  });
}

std::size_t AuditReport::ic_violations() const {
  return violations.size() - ir_violations();
}

AuditReport audit_incentives(std::span<const Participant> users, double target, double q,
                             std::size_t n_misreports, std::uint64_t seed,
                             const ThresholdSolveConfig& cfg) {
  AuditReport report;
  report.tolerance = 10.0 * cfg.abs_tol;
  const auto bidders = make_lognormal_bidders(users, q, cfg);
  const Allocation truthful = run_dr_mechanism(bidders, target);

  for (const auto& p : users) {
    ++report.ir_checked;
    const bool targeted = truthful.is_targeted(p.id);
    const double u = true_utility(truthful, p, q);
    const bool ok = targeted ? u >= -report.tolerance : truthful.reward(p.id) == 0.0;
    if (!ok) {
      report.violations.push_back({AuditViolation::Kind::kIndividualRationality, p.id, 0, seed,
                                   p.type, u, u});
    }
  }

  if (users.empty()) return report;
  std::vector<MisreportOutcome> outcomes(n_misreports);
  std::vector<std::size_t> who(n_misreports);
  std::vector<UserType> reports(n_misreports);
  parallel_for(n_misreports, [&](std::size_t k) {
    Rng rng = make_stream(seed, {k});
    std::uniform_int_distribution<std::size_t> pick(0, users.size() - 1);
    std::uniform_real_distribution<double> log_factor(std::log(0.5), std::log(2.0));
    const std::size_t i = pick(rng);
    UserType z = users[i].type;
    z.alpha *= std::exp(log_factor(rng));
    z.params.sigma *= std::exp(log_factor(rng));
    z.params.scale *= std::exp(log_factor(rng));
    z.params.loc *= std::exp(log_factor(rng));
    who[k] = i;
    reports[k] = z;
    outcomes[k] = misreport_against(users, bidders, truthful, i, z, target, q, cfg);
  });

  for (std::size_t k = 0; k < n_misreports; ++k) {
    const MisreportOutcome& o = outcomes[k];
    ++report.ic_trials;
    if (!o.feasible) {
      ++report.ic_skipped;
      continue;
    }
    if (o.targeted_truthful && !o.targeted_misreport) ++report.ic_left_target;
    if (!o.targeted_truthful && o.targeted_misreport) ++report.ic_entered_target;
    if (o.misreport_utility > o.truthful_utility + report.tolerance) {
      report.violations.push_back({AuditViolation::Kind::kIncentiveCompatibility,
                                   users[who[k]].id, k, derive_seed(seed, {k}), reports[k],
                                   o.truthful_utility, o.misreport_utility});
    }
  }
  return report;
}

}  // namespace drauction

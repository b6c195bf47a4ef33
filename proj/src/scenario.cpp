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

#include "drauction/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "drauction/baseline.hpp"
#include "drauction/errors.hpp"
#include "drauction/mechanism.hpp"
#include "drauction/parallel.hpp"
#include "json.hpp"
#include "text.hpp"

namespace drauction {

std::string_view to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::kCompare:
      return "compare";
    case ScenarioMode::kDecompose:
      return "decompose";
    case ScenarioMode::kPayments:
      return "payments";
  }
  return "unknown";
}

ScenarioMode parse_mode(std::string_view s) {
  if (s == "compare") return ScenarioMode::kCompare;
  if (s == "decompose") return ScenarioMode::kDecompose;
  if (s == "payments") return ScenarioMode::kPayments;
  throw ConfigError("unknown scenario mode '" + std::string(s) + "'");
}

std::vector<double> linspace_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) return {};
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = hi;
  return out;
}

void ScenarioConfig::validate() const {
  if (n < 3) throw ConfigError("scenario: n must be >= 3");
  if (!std::isfinite(q) || q < 0.0) throw ConfigError("scenario: q must be >= 0");
  if (!(alpha_bounds.lo > 0.0) || !(alpha_bounds.lo < alpha_bounds.hi))
    throw ConfigError("scenario: alpha bounds need 0 < lo < hi");
  if (mc_reps < 1) throw ConfigError("scenario: mc_reps must be >= 1");
  if (compare_k < 1) throw ConfigError("scenario: compare_k must be >= 1");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (!std::isfinite(m_grid[i]) || m_grid[i] < 0.0)
      throw ConfigError("scenario: M grid entries must be finite and >= 0");
    if (i > 0 && m_grid[i] < m_grid[i - 1]) throw ConfigError("scenario: M grid must be ascending");
  }
  for (std::size_t k : k_set)
    if (k < 1) throw ConfigError("scenario: k values must be >= 1");
  try {
    prior.validate();
    solver.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

namespace {

// Stream tags under the master seed.
enum StreamTag : std::uint64_t { kUsersStream = 1, kBaselineStream = 2, kConsumptionStream = 3 };

std::string user_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "u%05zu", i);
  return buf;
}

struct Pool {
  std::vector<UserType> types;
  std::vector<double> mean_consumption;  // analytic or Monte Carlo E[x̄]
};

std::vector<UserType> sample_types(const ScenarioConfig& cfg) {
  CompoundPrior prior = cfg.prior;
  prior.alpha_prior = cfg.alpha_bounds;
  Rng rng = make_stream(cfg.seed, {kUsersStream});
  return sample_user_types(prior, cfg.n, rng);
}

// One baseline draw per user per (k, seed), reused across the M sweep.
std::vector<Participant> with_baselines(const ScenarioConfig& cfg,
                                        std::span<const UserType> types, std::size_t k) {
  std::vector<Participant> users(types.size());
  parallel_for(types.size(), [&](std::size_t i) {
    Rng rng = make_stream(cfg.seed, {kBaselineStream, k, i});
    users[i] = {user_id(i), types[i], synthetic_baseline(types[i].params, k, rng).value};
  });
  return users;
}

Pool sample_pool(const ScenarioConfig& cfg, ScenarioMode mode) {
  Pool pool;
  pool.types = sample_types(cfg);
  pool.mean_consumption.resize(cfg.n);
  parallel_for(cfg.n, [&](std::size_t i) {
    const ConsumptionParams& p = pool.types[i].params;
    if (mode != ScenarioMode::kDecompose) {
      pool.mean_consumption[i] = p.mean();
      return;
    }
    // The components are linear in x̄, so averaging over replications
    // reduces to the replication mean of each user's base consumption.
    Rng user_rng = make_stream(cfg.seed, {kConsumptionStream, i});
    double sum = 0.0;
    for (std::size_t rep = 0; rep < cfg.mc_reps; ++rep) sum += draw_base_consumption(p, user_rng);
    pool.mean_consumption[i] = sum / static_cast<double>(cfg.mc_reps);
  });
  return pool;
}

std::optional<SweepRow> sweep_point(const ScenarioConfig& cfg, const Pool& pool,
                                    std::span<const Participant> users,
                                    std::span<const Bidder> bidders, double target, std::size_t k,
                                    std::string& warning) {
  Allocation mech, omn;
  try {
    mech = run_dr_mechanism(bidders, target);
    omn = run_omniscient(bidders, target, 0.0);
  } catch (const InfeasibleTargetError& e) {
    warning = "k=" + std::to_string(k) + " M=" + text::sig(target) + " skipped: " + e.what();
    return std::nullopt;
  }
  SweepRow row;
  row.target = target;
  row.k = k;
  row.seed = cfg.seed;
  row.n_targeted_mech = mech.targeted.size();
  row.n_targeted_omn = omn.targeted.size();
  const PaymentSummary pm = expected_payments(mech, users, cfg.q);
  const PaymentSummary po = expected_payments(omn, users, cfg.q);
  row.gross_mech = pm.gross;
  row.gross_omn = po.gross;
  row.net_mech = pm.net;

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < users.size(); ++i) index[users[i].id] = i;
  for (const auto& id : mech.targeted) {
    const std::size_t i = index.at(id);
    const double xbar = pool.mean_consumption[i];
    row.sum_delta_bl += users[i].baseline - xbar;
    row.sum_delta_r += -xbar * std::expm1(-pool.types[i].alpha * mech.reward(id));
  }
  return row;
}

}  // namespace

std::vector<Participant> sample_participants(const ScenarioConfig& cfg, std::size_t k) {
  cfg.validate();
  if (k < 1) throw ConfigError("sample_participants: k must be >= 1");
  return with_baselines(cfg, sample_types(cfg), k);
}

SweepResult run_scenario(const ScenarioConfig& cfg, ScenarioMode mode) {
  cfg.validate();
  SweepResult result;
  result.mode = mode;
  result.synthetic_prior = cfg.prior.synthetic;
  result.seed = cfg.seed;
  result.n = cfg.n;
  result.q = cfg.q;

  const Pool pool = sample_pool(cfg, mode);
  const std::vector<std::size_t> ks =
      mode == ScenarioMode::kCompare ? std::vector<std::size_t>{cfg.compare_k} : cfg.k_set;

  for (std::size_t k : ks) {
    const std::vector<Participant> users = with_baselines(cfg, pool.types, k);
    const std::vector<Bidder> bidders = make_lognormal_bidders(users, cfg.q, cfg.solver);
    const double bound = std::min(feasibility_bound(bidders), omniscient_capacity(bidders));

    std::vector<std::optional<SweepRow>> rows(cfg.m_grid.size());
    std::vector<std::string> warnings(cfg.m_grid.size());
    parallel_for(cfg.m_grid.size(), [&](std::size_t g) {
      const double target = cfg.m_grid[g];
      if (target > bound) {
        warnings[g] = "k=" + std::to_string(k) + " M=" + text::sig(target) +
                      " skipped: exceeds feasible target " + text::sig(bound);
        return;
      }
      rows[g] = sweep_point(cfg, pool, users, bidders, target, k, warnings[g]);
    });
    for (std::size_t g = 0; g < rows.size(); ++g) {
      if (rows[g]) result.rows.push_back(*rows[g]);
      if (!warnings[g].empty()) result.warnings.push_back(warnings[g]);
    }
  }
  if (result.rows.empty() && !cfg.m_grid.empty())
    throw InfeasibleTargetError("scenario: no M in the grid is feasible for this pool");
  return result;
}

void write_results_csv(std::ostream& out, const SweepResult& result) {
  out << kResultsHeader << '\n';
  for (const auto& r : result.rows) {
    out << text::sig(r.target) << ',' << r.n_targeted_mech << ',' << r.n_targeted_omn << ','
        << text::sig(r.gross_mech) << ',' << text::sig(r.gross_omn) << ',' << text::sig(r.net_mech)
        << ',' << text::sig(r.sum_delta_bl) << ',' << text::sig(r.sum_delta_r) << ',' << r.k << ','
        << r.seed << '\n';
  }
}

void write_results_json(std::ostream& out, const SweepResult& result) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::stod(text::sig(v)); };
  ordered_json j;
  j["mode"] = std::string(to_string(result.mode));
  j["seed"] = result.seed;
  j["n"] = result.n;
  j["q"] = num(result.q);
  j["prior"] = result.synthetic_prior ? "synthetic" : "fitted";
  j["warnings"] = result.warnings;
  j["rows"] = ordered_json::array();
  for (const auto& r : result.rows) {
    j["rows"].push_back({{"M", num(r.target)},
                         {"n_targeted_mech", r.n_targeted_mech},
                         {"n_targeted_omn", r.n_targeted_omn},
                         {"gross_mech", num(r.gross_mech)},
                         {"gross_omn", num(r.gross_omn)},
                         {"net_mech", num(r.net_mech)},
                         {"sum_delta_bl", num(r.sum_delta_bl)},
                         {"sum_delta_r", num(r.sum_delta_r)},
                         {"k", r.k},
                         {"seed", r.seed}});
  }
  out << j.dump(2) << '\n';
}

std::vector<SweepRow> parse_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kResultsHeader)
    throw ParseError(1, "unexpected results header");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line);
    if (f.size() != 10) throw ParseError(line_no, "expected 10 fields");
    auto real = [&](std::size_t i) {
      const auto v = text::parse_double(f[i]);
      if (!v) throw ParseError(line_no, "bad number '" + std::string(f[i]) + "'");
      return *v;
    };
    auto count = [&](std::size_t i) {
      const auto v = text::parse_int<std::uint64_t>(f[i]);
      if (!v) throw ParseError(line_no, "bad integer '" + std::string(f[i]) + "'");
      return *v;
    };
    SweepRow r;
    r.target = real(0);
    r.n_targeted_mech = count(1);
    r.n_targeted_omn = count(2);
    r.gross_mech = real(3);
    r.gross_omn = real(4);
    r.net_mech = real(5);
    r.sum_delta_bl = real(6);
    r.sum_delta_r = real(7);
    r.k = count(8);
    r.seed = count(9);
    rows.push_back(r);
  }
  return rows;
}

void emit_results(const SweepResult& result, const std::filesystem::path& path,
                  OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == OutputFormat::kCsv) {
    write_results_csv(out, result);
  } else {
    write_results_json(out, result);
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace drauction

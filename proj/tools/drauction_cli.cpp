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

// Command-line front end. Exit codes: 0 success, 2 configuration error,
// 3 data error, 4 infeasible target.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drauction/analytic.hpp"
#include "drauction/baseline.hpp"
#include "drauction/dist.hpp"
#include "drauction/errors.hpp"
#include "drauction/ingest.hpp"
#include "drauction/mechanism.hpp"
#include "drauction/scenario.hpp"

namespace {

using namespace drauction;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(flag + ": '" + s + "' is not a number");
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split_on(spec, ':');
  if (parts.size() != 3) throw ConfigError("--m-grid expects lo:hi:steps, got '" + spec + "'");
  const double lo = to_double(parts[0], "--m-grid");
  const double hi = to_double(parts[1], "--m-grid");
  const double steps = to_double(parts[2], "--m-grid");
  if (!(steps >= 1.0) || steps != static_cast<double>(static_cast<std::size_t>(steps)))
    throw ConfigError("--m-grid: steps must be a positive integer");
  if (lo > hi) throw ConfigError("--m-grid: lo must not exceed hi");
  return linspace_grid(lo, hi, static_cast<std::size_t>(steps));
}

std::vector<std::size_t> parse_k_set(const std::string& spec) {
  std::vector<std::size_t> ks;
  for (const auto& part : split_on(spec, ',')) {
    const double v = to_double(part, "--k-set");
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw ConfigError("--k-set: entries must be positive integers");
    ks.push_back(static_cast<std::size_t>(v));
  }
  if (ks.empty()) throw ConfigError("--k-set must not be empty");
  return ks;
}

UniformPrior parse_bounds(const std::string& spec) {
  const auto parts = split_on(spec, ':');
  if (parts.size() != 2) throw ConfigError("--alpha expects lo:hi, got '" + spec + "'");
  return {to_double(parts[0], "--alpha"), to_double(parts[1], "--alpha")};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CompoundPrior load_prior(const std::string& path) {
  if (path.empty()) return CompoundPrior::synthetic_default();
  try {
    return prior_from_json(read_text(path));
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Runs `fn` with the output stream named by `path`; "-" or empty is stdout.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  fn(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

struct FitArgs {
  std::string input, out, prior_out, alpha = "0.05:0.06", layout = "scale-cauchy";
  int hour = 17;
  bool include_dr = false;
};

void run_fit(const FitArgs& a) {
  if (a.layout != "scale-cauchy" && a.layout != "scale-exponential")
    throw ConfigError("--layout must be scale-cauchy or scale-exponential");
  const auto series = read_meter_csv(a.input);
  std::vector<FittedParams> rows;
  for (const auto& s : series) {
    const HourSlice slice = hour_slice(s, a.hour, !a.include_dr);
    if (slice.dropped_zero > 0)
      warn("user " + s.user_id + ": dropped " + std::to_string(slice.dropped_zero) +
           " zero readings");
    if (slice.values.size() < kMinFitSamples) {
      warn("user " + s.user_id + ": " + std::to_string(slice.values.size()) +
           " usable readings at hour " + std::to_string(a.hour) + ", skipped");
      continue;
    }
    try {
      rows.push_back({s.user_id, a.hour, fit_lognormal3(slice.values)});
    } catch (const FitError& e) {
      warn("user " + s.user_id + ": " + e.what() + ", skipped");
    }
  }
  with_output(a.out, [&](std::ostream& out) { write_params_csv(out, rows); });
  if (!a.prior_out.empty()) {
    std::vector<ConsumptionParams> params;
    for (const auto& r : rows) params.push_back(r.params);
    const auto layout = a.layout == "scale-cauchy" ? PriorLayout::kScaleCauchyLocExponential
                                                   : PriorLayout::kScaleExponentialLocCauchy;
    const CompoundPrior prior = fit_compound_prior(params, parse_bounds(a.alpha), layout);
    with_output(a.prior_out, [&](std::ostream& out) { out << prior_to_json(prior); });
  }
}

struct SampleArgs {
  std::string prior, alpha, out;
  std::size_t n = 500, k = 10;
  std::uint64_t seed = 42;
};

void run_sample(const SampleArgs& a) {
  ScenarioConfig cfg;
  cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.prior = load_prior(a.prior);
  cfg.alpha_bounds = a.alpha.empty() ? cfg.prior.alpha_prior : parse_bounds(a.alpha);
  const auto users = sample_participants(cfg, a.k);
  with_output(a.out, [&](std::ostream& out) { write_participants_csv(out, users); });
}

struct BaselineArgs {
  std::string input, date, holidays, out;
  int hour = 17, lookback = 90;
  bool strict = true;
};

void run_baseline(const BaselineArgs& a) {
  const auto date = parse_date(a.date);
  if (!date) throw ConfigError("--date expects YYYY-MM-DD, got '" + a.date + "'");
  const Calendar cal = a.holidays.empty() ? Calendar{} : Calendar::from_holiday_file(a.holidays);
  const CaisoOptions opts{a.strict, a.lookback};
  const auto series = read_meter_csv(a.input);
  std::vector<BaselineRecord> rows;
  for (const auto& s : series) {
    try {
      rows.push_back({s.user_id, *date, caiso_baseline(s, *date, a.hour, cal, opts)});
    } catch (const InsufficientHistoryError& e) {
      if (a.strict) throw;
      warn(std::string(e.what()) + ", skipped");
    }
  }
  with_output(a.out, [&](std::ostream& out) { write_baseline_csv(out, rows); });
}

struct MechanismArgs {
  std::string input, out;
  double target = 0.0, q = 5.0, epsilon = 0.0;
  bool omniscient = false;
  std::uint64_t seed = 0;
};

void run_mechanism(const MechanismArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw IoError("cannot open " + a.input);
  const auto users = read_participants_csv(in);
  const auto bidders = make_lognormal_bidders(users, a.q);
  const Allocation alloc = a.omniscient ? run_omniscient(bidders, a.target, a.epsilon)
                                        : run_dr_mechanism(bidders, a.target);
  const PaymentSummary pay = expected_payments(alloc, users, a.q);
  std::cerr << "targeted " << alloc.targeted.size() << " of " << users.size()
            << ", expected gross payment " << pay.gross << ", net " << pay.net << '\n';
  with_output(a.out, [&](std::ostream& out) {
    write_allocation_csv(out, alloc, {a.target, a.q, a.seed});
  });
}

struct ScenarioArgs {
  std::string prior, alpha = "0.05:0.06", m_grid = "0:200:21", k_set = "5,10,20,40";
  std::string mode = "compare", format = "csv", out;
  std::size_t n = 500, mc_reps = 200;
  double q = 5.0;
  std::uint64_t seed = 42;
};

void run_scenario_cmd(const ScenarioArgs& a) {
  ScenarioConfig cfg;
  cfg.n = a.n;
  cfg.q = a.q;
  cfg.seed = a.seed;
  cfg.mc_reps = a.mc_reps;
  cfg.prior = load_prior(a.prior);
  cfg.alpha_bounds = parse_bounds(a.alpha);
  cfg.m_grid = parse_grid(a.m_grid);
  cfg.k_set = parse_k_set(a.k_set);
  if (a.format != "csv" && a.format != "json") throw ConfigError("--format must be csv or json");
  const OutputFormat format = a.format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
  const SweepResult result = run_scenario(cfg, parse_mode(a.mode));
  for (const auto& w : result.warnings) warn(w);
  if (a.out.empty() || a.out == "-") {
    format == OutputFormat::kCsv ? write_results_csv(std::cout, result)
                                 : write_results_json(std::cout, result);
  } else {
    emit_results(result, a.out, format);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Residential demand-response auction toolkit"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit per-user consumption distributions");
  fit_cmd->add_option("--input", fit.input, "Meter CSV")->required();
  fit_cmd->add_option("--hour", fit.hour, "Hour of day")->check(CLI::Range(0, 23));
  fit_cmd->add_flag("--include-dr", fit.include_dr, "Keep DR-flagged hours");
  fit_cmd->add_option("--out", fit.out, "Fitted parameters CSV (default stdout)");
  fit_cmd->add_option("--prior-out", fit.prior_out, "Also fit and write the compound prior JSON");
  fit_cmd->add_option("--alpha", fit.alpha, "Slope bounds lo:hi for the prior");
  fit_cmd->add_option("--layout", fit.layout, "scale-cauchy or scale-exponential");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample-users", "Sample a user pool with baselines");
  sample_cmd->add_option("--n", sample.n, "Number of users");
  sample_cmd->add_option("--k", sample.k, "Baseline averaging days");
  sample_cmd->add_option("--seed", sample.seed, "Master seed");
  sample_cmd->add_option("--prior", sample.prior, "Prior JSON (default synthetic)");
  sample_cmd->add_option("--alpha", sample.alpha, "Slope bounds lo:hi (default from prior)");
  sample_cmd->add_option("--out", sample.out, "Participants CSV (default stdout)");

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand("baseline", "CAISO 10-in-10 baselines for one event hour");
  base_cmd->add_option("--input", base.input, "Meter CSV")->required();
  base_cmd->add_option("--date", base.date, "Event date YYYY-MM-DD")->required();
  base_cmd->add_option("--hour", base.hour, "Event hour")->check(CLI::Range(0, 23));
  base_cmd->add_option("--holidays", base.holidays, "Holiday file, one date per line");
  base_cmd->add_option("--lookback", base.lookback, "Lookback window in days");
  base_cmd->add_flag("--strict-baseline,!--relaxed-baseline", base.strict,
                     "Require the full day count (default on)");
  base_cmd->add_option("--out", base.out, "Baseline CSV (default stdout)");

  MechanismArgs mech;
  auto* mech_cmd = app.add_subcommand("mechanism", "Allocate rewards for one target");
  mech_cmd->add_option("--input", mech.input, "Participants CSV")->required();
  mech_cmd->add_option("--m", mech.target, "Target reduction M, kWh")->required();
  mech_cmd->add_option("--q", mech.q, "Over-consumption penalty, $/kWh");
  mech_cmd->add_flag("--omniscient", mech.omniscient, "Run the omniscient benchmark instead");
  mech_cmd->add_option("--epsilon", mech.epsilon, "Omniscient reward premium");
  mech_cmd->add_option("--seed", mech.seed, "Seed recorded in the output header");
  mech_cmd->add_option("--out", mech.out, "Allocation CSV (default stdout)");

  ScenarioArgs scen;
  auto* scen_cmd = app.add_subcommand("scenario", "Sweep targets over a sampled user pool");
  scen_cmd->add_option("--mode", scen.mode, "compare, decompose or payments");
  scen_cmd->add_option("--n", scen.n, "Number of users");
  scen_cmd->add_option("--q", scen.q, "Over-consumption penalty, $/kWh");
  scen_cmd->add_option("--alpha", scen.alpha, "Slope bounds lo:hi");
  scen_cmd->add_option("--prior", scen.prior, "Prior JSON (default synthetic)");
  scen_cmd->add_option("--m-grid", scen.m_grid, "Targets lo:hi:steps");
  scen_cmd->add_option("--k-set", scen.k_set, "Baseline day counts a,b,c");
  scen_cmd->add_option("--mc-reps", scen.mc_reps, "Monte Carlo replications (decompose)");
  scen_cmd->add_option("--seed", scen.seed, "Master seed");
  scen_cmd->add_option("--format", scen.format, "csv or json");
  scen_cmd->add_option("--out", scen.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (fit_cmd->parsed()) run_fit(fit);
  if (sample_cmd->parsed()) run_sample(sample);
  if (base_cmd->parsed()) run_baseline(base);
  if (mech_cmd->parsed()) run_mechanism(mech);
  if (scen_cmd->parsed()) run_scenario_cmd(scen);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleTargetError& e) {
    std::cerr << "infeasible target: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

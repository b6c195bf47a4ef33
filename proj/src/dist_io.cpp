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
#include <istream>
#include <ostream>
#include <string>

#include "drauction/dist.hpp"
#include "drauction/errors.hpp"
#include "json.hpp"
#include "text.hpp"

namespace drauction {

using nlohmann::json;

void write_params_csv(std::ostream& out, std::span<const FittedParams> rows) {
  out << "user_id,hour,sigma,scale,loc\n";
  for (const auto& r : rows) {
    out << r.user_id << ',' << r.hour << ',' << text::shortest(r.params.sigma) << ','
        << text::shortest(r.params.scale) << ',' << text::shortest(r.params.loc) << '\n';
  }
}

std::vector<FittedParams> read_params_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || text::trim(line) != "user_id,hour,sigma,scale,loc")
    throw ParseError(1, "expected header user_id,hour,sigma,scale,loc");
  std::vector<FittedParams> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line);
    if (f.size() != 5) throw ParseError(line_no, "expected 5 fields");
    FittedParams r;
    r.user_id = std::string(f[0]);
    const auto hour = text::parse_int<int>(f[1]);
    const auto sigma = text::parse_double(f[2]);
    const auto scale = text::parse_double(f[3]);
    const auto loc = text::parse_double(f[4]);
    if (!hour || *hour < 0 || *hour > 23) throw ParseError(line_no, "bad hour");
    if (!sigma || !scale || !loc) throw ParseError(line_no, "non-numeric parameter");
    r.hour = *hour;
    r.params = {*sigma, *scale, *loc};
    try {
      r.params.validate();
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_participants_csv(std::ostream& out, std::span<const Participant> users) {
  out << "id,alpha,sigma,scale,loc,baseline\n";
  for (const auto& u : users) {
    const auto& p = u.type.params;
    out << u.id << ',' << text::shortest(u.type.alpha) << ',' << text::shortest(p.sigma) << ','
        << text::shortest(p.scale) << ',' << text::shortest(p.loc) << ','
        << text::shortest(u.baseline) << '\n';
  }
}

std::vector<Participant> read_participants_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || text::trim(line) != "id,alpha,sigma,scale,loc,baseline")
    throw ParseError(1, "expected header id,alpha,sigma,scale,loc,baseline");
  std::vector<Participant> users;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line);
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    if (f[0].empty()) throw ParseError(line_no, "empty id");
    double v[5];
    for (int i = 0; i < 5; ++i) {
      const auto x = text::parse_double(f[i + 1]);
      if (!x) throw ParseError(line_no, "non-numeric field '" + std::string(f[i + 1]) + "'");
      v[i] = *x;
    }
    Participant u{std::string(f[0]), {v[0], {v[1], v[2], v[3]}}, v[4]};
    try {
      u.type.validate();
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!std::isfinite(u.baseline) || u.baseline < 0.0)
      throw ParseError(line_no, "baseline must be finite and >= 0");
    users.push_back(std::move(u));
  }
  return users;
}

namespace {

json positive_to_json(const PositivePrior& p) {
  if (const auto* c = std::get_if<CauchyPrior>(&p))
    return {{"family", "cauchy"}, {"location", c->location}, {"scale", c->scale}};
  return {{"family", "exponential"}, {"rate", std::get<ExponentialPrior>(p).rate}};
}

PositivePrior positive_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "cauchy")
    return CauchyPrior{j.at("location").get<double>(), j.at("scale").get<double>()};
  if (family == "exponential") return ExponentialPrior{j.at("rate").get<double>()};
  throw DomainError("prior json: unknown family '" + family + "'");
}

}  // namespace

std::string prior_to_json(const CompoundPrior& prior) {
  json j;
  j["sigma_prior"] = {{"family", "normal"},
                      {"mean", prior.sigma_prior.mean},
                      {"stddev", prior.sigma_prior.stddev}};
  j["scale_prior"] = positive_to_json(prior.scale_prior);
  j["loc_prior"] = positive_to_json(prior.loc_prior);
  j["alpha_prior"] = {
      {"family", "uniform"}, {"lo", prior.alpha_prior.lo}, {"hi", prior.alpha_prior.hi}};
  j["cauchy_cap"] = prior.cauchy_cap;
  j["synthetic"] = prior.synthetic;
  return j.dump(2) + "\n";
}

CompoundPrior prior_from_json(const std::string& text) {
  CompoundPrior prior;
  try {
    const json j = json::parse(text);
    const json& s = j.at("sigma_prior");
    prior.sigma_prior = {s.at("mean").get<double>(), s.at("stddev").get<double>()};
    prior.scale_prior = positive_from_json(j.at("scale_prior"));
    prior.loc_prior = positive_from_json(j.at("loc_prior"));
    const json& a = j.at("alpha_prior");
    prior.alpha_prior = {a.at("lo").get<double>(), a.at("hi").get<double>()};
    prior.cauchy_cap = j.value("cauchy_cap", 100.0);
    prior.synthetic = j.value("synthetic", false);
  } catch (const json::exception& e) {
    throw DomainError(std::string("prior json: ") + e.what());
  }
  prior.validate();
  return prior;
}

}  // namespace drauction

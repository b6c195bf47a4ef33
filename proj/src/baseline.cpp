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

#include "drauction/baseline.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "drauction/dist.hpp"
#include "drauction/errors.hpp"
#include "text.hpp"

namespace drauction {

void Calendar::validate() const {
  if (weekend_days.empty()) throw DomainError("calendar: weekend set must not be empty");
  for (unsigned d : weekend_days)
    if (d > 6) throw DomainError("calendar: weekday code must be in 0..6");
}

bool Calendar::is_business_day(Date d) const {
  const unsigned wd = std::chrono::weekday{d}.c_encoding();
  return !weekend_days.contains(wd) && !holidays.contains(d);
}

Calendar Calendar::from_holidays(std::istream& in) {
  Calendar cal;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = text::trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto d = parse_date(s);
    if (!d) throw ParseError(line_no, "bad holiday date '" + std::string(s) + "'");
    cal.holidays.insert(*d);
  }
  return cal;
}

Calendar Calendar::from_holiday_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return from_holidays(in);
}

std::string_view to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::kCaiso10in10:
      return "caiso_10in10";
    case BaselineMethod::kCaiso4in4Weekend:
      return "caiso_4in4_weekend";
    case BaselineMethod::kSyntheticK:
      return "synthetic_k";
  }
  return "unknown";
}

BaselineEstimate caiso_baseline(const MeterSeries& series, Date event_date, int hour,
                                const Calendar& cal, const CaisoOptions& opts) {
  cal.validate();
  if (hour < 0 || hour > 23) throw DomainError("caiso_baseline: hour must be in 0..23");
  if (opts.lookback_days < 1) throw DomainError("caiso_baseline: lookback must be >= 1 day");

  const bool business = cal.is_business_day(event_date);
  const std::size_t required = business ? kBusinessDays : kNonBusinessDays;
  double sum = 0.0;
  std::size_t used = 0;
  for (int back = 1; back <= opts.lookback_days && used < required; ++back) {
    const Date d = event_date - std::chrono::days{back};
    if (cal.is_business_day(d) != business) continue;
    const MeterReading* r = series.find({d, hour});
    if (r == nullptr || r->dr_event) continue;
    sum += r->kwh;
    ++used;
  }

  if (used == 0 || (opts.strict && used < required)) {
    throw InsufficientHistoryError("caiso_baseline: user " + series.user_id + " has " +
                                   std::to_string(used) + " qualifying days of " +
                                   std::to_string(required) + " before " +
                                   format_date(event_date) + " hour " + std::to_string(hour));
  }
  BaselineEstimate est;
  est.value = sum / static_cast<double>(used);
  est.hour = hour;
  est.days_used = used;
  est.method = business ? BaselineMethod::kCaiso10in10 : BaselineMethod::kCaiso4in4Weekend;
  return est;
}

BaselineEstimate synthetic_baseline(const ConsumptionParams& params, std::size_t k, Rng& rng,
                                    int hour) {
  params.validate();
  if (k == 0) throw DomainError("synthetic_baseline: k must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += draw_base_consumption(params, rng);
  BaselineEstimate est;
  est.value = sum / static_cast<double>(k);
  est.hour = hour;
  est.days_used = k;
  est.method = BaselineMethod::kSyntheticK;
  return est;
}

BaselineErrorStats baseline_error_stats(const ConsumptionParams& params, std::size_t k,
                                        std::size_t reps, Rng& rng) {
  if (reps < 100) throw DomainError("baseline_error_stats: reps must be >= 100");
  // Welford accumulators for x̂ − x̄ and for x̂.
  double mean_e = 0.0, m2_e = 0.0, mean_b = 0.0, m2_b = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double xhat = synthetic_baseline(params, k, rng).value;
    const double xbar = draw_base_consumption(params, rng);
    const double e = xhat - xbar;
    const double n = static_cast<double>(i + 1);
    const double de = e - mean_e;
    mean_e += de / n;
    m2_e += de * (e - mean_e);
    const double db = xhat - mean_b;
    mean_b += db / n;
    m2_b += db * (xhat - mean_b);
  }
  const double dof = static_cast<double>(reps - 1);
  return {mean_e, m2_e / dof, m2_b / dof, reps};
}

double consumption_variance(const ConsumptionParams& params) {
  params.validate();
  const double s2 = params.sigma * params.sigma;
  return std::expm1(s2) * params.scale * params.scale * std::exp(s2);
}

void write_baseline_csv(std::ostream& out, std::span<const BaselineRecord> rows) {
  out << "user_id,date,hour,method,days_used,value_kwh\n";
  for (const auto& r : rows) {
    out << r.user_id << ',' << format_date(r.date) << ',' << r.estimate.hour << ','
        << to_string(r.estimate.method) << ',' << r.estimate.days_used << ','
        << text::shortest(r.estimate.value) << '\n';
  }
}

}  // namespace drauction

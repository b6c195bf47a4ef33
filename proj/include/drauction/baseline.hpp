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

// Counterfactual baselines: the CAISO 10-in-10 rule over meter histories and
// k-day synthetic averages drawn from a fitted consumption distribution.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "drauction/ingest.hpp"
#include "drauction/model.hpp"
#include "drauction/random.hpp"

namespace drauction {

struct Calendar {
  std::set<Date> holidays;
  std::set<unsigned> weekend_days{0, 6};  // weekday::c_encoding(), Sunday = 0

  void validate() const;
  bool is_business_day(Date d) const;

  /// One `YYYY-MM-DD` per line; blank lines and `#` comments are skipped.
  static Calendar from_holidays(std::istream& in);
  static Calendar from_holiday_file(const std::filesystem::path& path);
};

enum class BaselineMethod { kCaiso10in10, kCaiso4in4Weekend, kSyntheticK };

std::string_view to_string(BaselineMethod m);

struct BaselineEstimate {
  double value = 0.0;  // x̂, kWh
  int hour = 0;
  std::size_t days_used = 0;
  BaselineMethod method = BaselineMethod::kCaiso10in10;
};

struct CaisoOptions {
  bool strict = true;       // require the full day count
  int lookback_days = 90;
};

inline constexpr std::size_t kBusinessDays = 10;
inline constexpr std::size_t kNonBusinessDays = 4;

/// Same-hour mean over the 10 most recent prior business days, or the 4 most
/// recent prior weekend/holiday days when the event falls on one. Days whose
/// reading at `hour` is DR-flagged or missing are skipped and the lookback
/// extends up to `lookback_days`. Strict mode throws InsufficientHistoryError
/// when the count is not met; relaxed mode accepts any count >= 1.
BaselineEstimate caiso_baseline(const MeterSeries& series, Date event_date, int hour,
                                const Calendar& cal, const CaisoOptions& opts = {});

/// Mean of k independent draws from the consumption distribution.
BaselineEstimate synthetic_baseline(const ConsumptionParams& params, std::size_t k, Rng& rng,
                                    int hour = 17);

struct BaselineErrorStats {
  double mean_error = 0.0;    // sample mean of x̂ − x̄
  double var_error = 0.0;     // sample variance of x̂ − x̄
  double var_baseline = 0.0;  // sample variance of x̂ alone
  std::size_t reps = 0;
};

/// Replicates (k-day x̂, independent x̄) pairs. Theory: E[x̂ − x̄] = 0,
/// Var[x̂] = Var[x̄]/k, Var[x̂ − x̄] = Var[x̄](1 + 1/k). Needs reps >= 100.
BaselineErrorStats baseline_error_stats(const ConsumptionParams& params, std::size_t k,
                                        std::size_t reps, Rng& rng);

/// Variance of the lognormal consumption, (e^{σ²} − 1)·s²·e^{σ²}.
double consumption_variance(const ConsumptionParams& params);

struct BaselineRecord {
  std::string user_id;
  Date date;
  BaselineEstimate estimate;
};

/// CSV `user_id,date,hour,method,days_used,value_kwh`.
void write_baseline_csv(std::ostream& out, std::span<const BaselineRecord> rows);

}  // namespace drauction

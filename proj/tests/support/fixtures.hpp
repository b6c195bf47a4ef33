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

// Hand-built meter histories for the baseline and ingest tests.

#pragma once

#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "drauction/ingest.hpp"

namespace fixtures {

inline drauction::Date date(int y, unsigned m, unsigned d) {
  return drauction::Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

inline bool is_weekend(drauction::Date d) {
  const std::chrono::weekday w{d};
  return w == std::chrono::Saturday || w == std::chrono::Sunday;
}

// Readings at `hour` on the `n_business` weekdays before `event`. The b-th
// weekday back reads b kWh and is DR-flagged when b is in `flagged`. Weekend
// days in between carry a decoy reading of 100 kWh.
inline drauction::MeterSeries weekday_history(drauction::Date event, int hour, int n_business,
                                              const std::set<int>& flagged) {
  drauction::MeterSeries s{"fixture", {}};
  int b = 0;
  for (int back = 1; b < n_business; ++back) {
    const drauction::Date d = event - std::chrono::days{back};
    drauction::MeterReading r{{d, hour}, 100.0, false};
    if (!is_weekend(d)) {
      ++b;
      r.kwh = b;
      r.dr_event = flagged.contains(b);
    }
    s.readings.insert(s.readings.begin(), r);
  }
  return s;
}

// CSV text with `users` users and `hours` consecutive hourly rows each,
// starting 2024-01-01T00, rows interleaved across users.
inline std::string meter_csv(int users, int hours, bool with_flag) {
  std::string out = with_flag ? "user_id,timestamp,kwh,dr_event\n" : "user_id,timestamp,kwh\n";
  const drauction::Date start = date(2024, 1, 1);
  char buf[96];
  for (int h = 0; h < hours; ++h) {
    const std::string stamp =
        drauction::format_hour_stamp({start + std::chrono::days{h / 24}, h % 24});
    for (int u = 0; u < users; ++u) {
      const double kwh = 0.25 * ((h * 7 + u * 3) % 17) + 0.125 * u;
      if (with_flag) {
        std::snprintf(buf, sizeof buf, "user%d,%s,%g,%d\n", u, stamp.c_str(), kwh,
                      (h / 24) % 15 == 3 ? 1 : 0);
      } else {
        std::snprintf(buf, sizeof buf, "user%d,%s,%g\n", u, stamp.c_str(), kwh);
      }
      out += buf;
    }
  }
  return out;
}

}  // namespace fixtures

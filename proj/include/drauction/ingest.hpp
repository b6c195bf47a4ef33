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

// Hourly smart-meter ingestion.
//
// Input CSV: header `user_id,timestamp,kwh[,dr_event]`, timestamps are local
// clock hours `YYYY-MM-DDTHH` without a zone. dr_event accepts 0/1/true/false.

#pragma once

#include <chrono>
#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drauction {

using Date = std::chrono::sys_days;

std::optional<Date> parse_date(std::string_view s);  // YYYY-MM-DD
std::string format_date(Date d);

struct HourStamp {
  Date date;
  int hour = 0;  // 0-23

  auto operator<=>(const HourStamp&) const = default;
};

std::optional<HourStamp> parse_hour_stamp(std::string_view s);  // YYYY-MM-DDTHH
std::string format_hour_stamp(const HourStamp& t);

struct MeterReading {
  HourStamp stamp;
  double kwh = 0.0;
  bool dr_event = false;
};

/// Readings are strictly increasing in time with kwh finite and >= 0.
struct MeterSeries {
  std::string user_id;
  std::vector<MeterReading> readings;

  /// Reading at exactly `t`, or nullptr.
  const MeterReading* find(const HourStamp& t) const;
};

/// One series per distinct user_id in order of first appearance, readings
/// sorted. Throws ParseError on malformed rows and IntegrityError on a
/// repeated user-hour.
std::vector<MeterSeries> parse_meter_csv(std::istream& in);
std::vector<MeterSeries> read_meter_csv(const std::filesystem::path& path);

/// Writes the four-column form; kwh uses the shortest round-trip format.
void write_meter_csv(std::ostream& out, std::span<const MeterSeries> series);

struct HourSlice {
  std::vector<double> values;
  std::size_t dropped_zero = 0;  // exact zeros, outside the lognormal support
  std::size_t dropped_dr = 0;
};

/// Readings at `hour`, without zero readings and, if requested, without
/// DR-flagged hours.
HourSlice hour_slice(const MeterSeries& series, int hour, bool exclude_dr);

}  // namespace drauction

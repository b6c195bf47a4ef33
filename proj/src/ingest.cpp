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

#include "drauction/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "drauction/errors.hpp"
#include "text.hpp"

namespace drauction {

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  const auto y = text::parse_int<int>(s.substr(0, 4));
  const auto m = text::parse_int<unsigned>(s.substr(5, 2));
  const auto d = text::parse_int<unsigned>(s.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{*m},
                                        std::chrono::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<HourStamp> parse_hour_stamp(std::string_view s) {
  if (s.size() != 13 || s[10] != 'T') return std::nullopt;
  const auto date = parse_date(s.substr(0, 10));
  const auto hour = text::parse_int<int>(s.substr(11, 2));
  if (!date || !hour || *hour < 0 || *hour > 23) return std::nullopt;
  return HourStamp{*date, *hour};
}

std::string format_hour_stamp(const HourStamp& t) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "T%02d", t.hour);
  return format_date(t.date) + buf;
}

const MeterReading* MeterSeries::find(const HourStamp& t) const {
  const auto it = std::lower_bound(readings.begin(), readings.end(), t,
                                   [](const MeterReading& r, const HourStamp& s) { return r.stamp < s; });
  return it != readings.end() && it->stamp == t ? &*it : nullptr;
}

namespace {

std::optional<bool> parse_flag(std::string_view s) {
  if (s == "0" || s == "false" || s == "False" || s == "FALSE") return false;
  if (s == "1" || s == "true" || s == "True" || s == "TRUE") return true;
  return std::nullopt;
}

}  // namespace

std::vector<MeterSeries> parse_meter_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  const std::string_view header = text::trim(line);
  bool has_flag = false;
  if (header == "user_id,timestamp,kwh,dr_event") {
    has_flag = true;
  } else if (header != "user_id,timestamp,kwh") {
    throw ParseError(1, "expected header user_id,timestamp,kwh[,dr_event]");
  }

  struct Row {
    MeterReading reading;
    std::size_t line;
  };
  std::vector<std::string> ids;
  std::map<std::string, std::vector<Row>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line);
    if (f.size() != (has_flag ? 4u : 3u)) throw ParseError(line_no, "wrong number of fields");
    if (f[0].empty()) throw ParseError(line_no, "empty user_id");
    const auto stamp = parse_hour_stamp(f[1]);
    if (!stamp) throw ParseError(line_no, "bad timestamp '" + std::string(f[1]) + "'");
    const auto kwh = text::parse_double(f[2]);
    if (!kwh) throw ParseError(line_no, "non-numeric kwh '" + std::string(f[2]) + "'");
    if (!std::isfinite(*kwh) || *kwh < 0.0)
      throw ParseError(line_no, "kwh must be finite and >= 0, got " + std::string(f[2]));
    bool flag = false;
    if (has_flag) {
      const auto v = parse_flag(f[3]);
      if (!v) throw ParseError(line_no, "bad dr_event '" + std::string(f[3]) + "'");
      flag = *v;
    }
    std::string id(f[0]);
    auto [it, inserted] = rows.try_emplace(id);
    if (inserted) ids.push_back(id);
    it->second.push_back({{*stamp, *kwh, flag}, line_no});
  }

  std::vector<MeterSeries> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto& rs = rows[id];
    std::stable_sort(rs.begin(), rs.end(),
                     [](const Row& a, const Row& b) { return a.reading.stamp < b.reading.stamp; });
    MeterSeries s{id, {}};
    s.readings.reserve(rs.size());
    for (std::size_t k = 0; k < rs.size(); ++k) {
      if (k > 0 && rs[k].reading.stamp == rs[k - 1].reading.stamp) {
        throw IntegrityError(std::max(rs[k].line, rs[k - 1].line),
                             "duplicate reading for user " + id + " at " +
                                 format_hour_stamp(rs[k].reading.stamp));
      }
      s.readings.push_back(rs[k].reading);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MeterSeries> read_meter_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_meter_csv(in);
}

void write_meter_csv(std::ostream& out, std::span<const MeterSeries> series) {
  out << "user_id,timestamp,kwh,dr_event\n";
  for (const auto& s : series) {
    for (const auto& r : s.readings) {
      out << s.user_id << ',' << format_hour_stamp(r.stamp) << ',' << text::shortest(r.kwh) << ','
          << (r.dr_event ? 1 : 0) << '\n';
    }
  }
}

HourSlice hour_slice(const MeterSeries& series, int hour, bool exclude_dr) {
  if (hour < 0 || hour > 23) throw DomainError("hour_slice: hour must be in 0..23");
  HourSlice out;
  for (const auto& r : series.readings) {
    if (r.stamp.hour != hour) continue;
    if (exclude_dr && r.dr_event) {
      ++out.dropped_dr;
    } else if (r.kwh == 0.0) {
      ++out.dropped_zero;
    } else {
      out.values.push_back(r.kwh);
    }
  }
  return out;
}

}  // namespace drauction

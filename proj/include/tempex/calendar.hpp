// Copyright 2026 The Tempex Authors
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

#ifndef TEMPEX_CALENDAR_HPP_
#define TEMPEX_CALENDAR_HPP_

// Proleptic Gregorian calendar arithmetic: serial day numbers, weekdays,
// ISO-8601 week dates, and granularity-truncated date values. No time of
// day, no time zones.

#include <cassert>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "tempex/errors.hpp"

namespace tempex {

enum class Weekday {
  kMonday = 0,
  kTuesday = 1,
  kWednesday = 2,
  kThursday = 3,
  kFriday = 4,
  kSaturday = 5,
  kSunday = 6,
};

inline const char* weekday_name(Weekday w) {
  static const char* kNames[] = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                 "Friday", "Saturday", "Sunday"};
  return kNames[static_cast<int>(w)];
}

inline bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

inline int days_in_month(int year, int month) {
  static const int kLengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kLengths[month - 1];
}

inline bool is_valid_date(int year, int month, int day) {
  if (month < 1 || month > 12) return false;
  return day >= 1 && day <= days_in_month(year, month);
}

// A full (day-granular) calendar date.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  friend bool operator==(const Date&, const Date&) = default;
};

inline void check_date(const Date& d) {
  if (!is_valid_date(d.year, d.month, d.day)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "invalid date %04d-%02d-%02d", d.year,
                  d.month, d.day);
    throw ValidationError(buf);
  }
}

// Days since 1970-01-01. Era-based conversion, valid across the whole
// proleptic Gregorian range.
inline std::int64_t to_serial(const Date& d) {
  std::int64_t y = d.year;
  if (d.month <= 2) y -= 1;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline Date from_serial(std::int64_t serial) {
  std::int64_t z = serial + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(d)};
}

inline Date add_days(const Date& d, std::int64_t n) {
  return from_serial(to_serial(d) + n);
}

// b - a in days.
inline std::int64_t days_between(const Date& a, const Date& b) {
  return to_serial(b) - to_serial(a);
}

inline Weekday weekday_of(const Date& d) {
  // 1970-01-01 was a Thursday.
  std::int64_t s = to_serial(d) + 3;
  return static_cast<Weekday>(((s % 7) + 7) % 7);
}

// Month-exact shift; day-of-month clamped to the target month's length.
inline Date add_months(const Date& d, int n) {
  int m0 = (d.year * 12) + (d.month - 1) + n;
  int y = m0 >= 0 ? m0 / 12 : -((-m0 + 11) / 12);
  int m = m0 - y * 12 + 1;
  int day = d.day;
  int len = days_in_month(y, m);
  if (day > len) day = len;
  return Date{y, m, day};
}

inline Date add_years(const Date& d, int n) { return add_months(d, n * 12); }

inline bool operator<(const Date& a, const Date& b) {
  return to_serial(a) < to_serial(b);
}
inline bool operator<=(const Date& a, const Date& b) { return !(b < a); }

struct IsoWeek {
  int year = 0;  // ISO week-based year, can differ from the calendar year
  int week = 0;  // 1..53

  friend bool operator==(const IsoWeek&, const IsoWeek&) = default;
};

inline IsoWeek iso_week_of(const Date& d) {
  // The ISO week of a date is the week of its nearest Thursday.
  int dow = static_cast<int>(weekday_of(d));  // Monday = 0
  Date thursday = add_days(d, 3 - dow);
  Date jan1{thursday.year, 1, 1};
  int week = static_cast<int>(days_between(jan1, thursday) / 7) + 1;
  return IsoWeek{thursday.year, week};
}

inline std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

inline Date parse_iso_date(const std::string& text) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3 ||
      text.size() != 10) {
    throw ValidationError("expected YYYY-MM-DD, got '" + text + "'");
  }
  Date date{y, m, d};
  check_date(date);
  return date;
}

enum class Granularity { kYear, kMonth, kWeek, kDay };

// A calendar value truncated to one of the four granularities. Week values
// use ISO-8601 numbering (YYYY-Www).
class DateValue {
 public:
  static DateValue year(int y) { return DateValue(Granularity::kYear, y, 0, 0); }
  static DateValue month(int y, int m) {
    return DateValue(Granularity::kMonth, y, m, 0);
  }
  static DateValue week(IsoWeek w) {
    DateValue v(Granularity::kWeek, w.year, 0, 0);
    v.week_ = w.week;
    return v;
  }
  static DateValue day(const Date& d) {
    return DateValue(Granularity::kDay, d.year, d.month, d.day);
  }

  Granularity granularity() const { return gran_; }
  int year_value() const { return year_; }
  int month_value() const { return month_; }
  int day_value() const { return day_; }
  int week_value() const { return week_; }

  // Day-granular values convert back to a Date.
  Date to_date() const {
    assert(gran_ == Granularity::kDay);
    return Date{year_, month_, day_};
  }

  std::string str() const {
    char buf[16];
    switch (gran_) {
      case Granularity::kYear:
        std::snprintf(buf, sizeof(buf), "%04d", year_);
        break;
      case Granularity::kMonth:
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year_, month_);
        break;
      case Granularity::kWeek:
        std::snprintf(buf, sizeof(buf), "%04d-W%02d", year_, week_);
        break;
      case Granularity::kDay:
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year_, month_, day_);
        break;
    }
    return buf;
  }

  friend bool operator==(const DateValue&, const DateValue&) = default;

 private:
  DateValue(Granularity g, int y, int m, int d)
      : gran_(g), year_(y), month_(m), day_(d) {}

  Granularity gran_;
  int year_;
  int month_;
  int day_;
  int week_ = 0;
};

inline DateValue truncate(const Date& d, Granularity g) {
  switch (g) {
    case Granularity::kYear:
      return DateValue::year(d.year);
    case Granularity::kMonth:
      return DateValue::month(d.year, d.month);
    case Granularity::kWeek:
      return DateValue::week(iso_week_of(d));
    case Granularity::kDay:
      return DateValue::day(d);
  }
  return DateValue::day(d);  // unreachable
}

}  // namespace tempex

#endif  // TEMPEX_CALENDAR_HPP_

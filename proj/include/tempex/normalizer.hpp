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

#ifndef TEMPEX_NORMALIZER_HPP_
#define TEMPEX_NORMALIZER_HPP_

// Assigns a type (DATE or DURATION) and a normalized value to recognized
// spans. DATE values anchor to the document creation time: weekday names
// resolve through a 7-day window centered on the DCT, year-less month/day
// expressions through the f-day rule (next occurrence unless more than f
// days away, in which case the previous occurrence), and offset expressions
// ("six months ago") through exact calendar arithmetic truncated to the
// coarsest unit present. DURATION values follow the P<n><unit> form with X
// for imprecise amounts.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "tempex/calendar.hpp"
#include "tempex/corpus.hpp"

namespace tempex {

// Raised when an expression cannot be anchored (imprecise quantities, dates
// with no valid calendar resolution). Pipelines catch this and leave the
// span valueless.
class UnanchorableError : public Error {
 public:
  explicit UnanchorableError(const std::string& what) : Error(what) {}
};

struct NormalizerConfig {
  int f_days = 14;         // year-resolution limit for year-less month/days
  int baldwin_radius = 3;  // half-width of the weekday window, in days
};

enum class TemporalUnit { kDay, kWeek, kMonth, kQuarter, kYear };

enum class TemporalDirection { kPast, kFuture, kNone };

// A positive integer count or the imprecise marker X.
class Quantity {
 public:
  static Quantity exact(std::int64_t n) {
    if (n < 1) throw ValidationError("quantity must be >= 1");
    Quantity q;
    q.value_ = n;
    return q;
  }
  static Quantity imprecise() { return Quantity(); }

  bool is_imprecise() const { return value_ == 0; }
  std::int64_t value() const {
    if (is_imprecise()) throw ValidationError("imprecise quantity has no value");
    return value_;
  }

  friend bool operator==(const Quantity&, const Quantity&) = default;

 private:
  std::int64_t value_ = 0;  // 0 encodes X
};

namespace words {

inline std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Small-number word values; hyphenated compounds ("twenty-one") are split
// by the caller.
inline std::optional<int> small_number_word(const std::string& w) {
  static const std::pair<const char*, int> kWords[] = {
      {"one", 1},       {"two", 2},       {"three", 3},    {"four", 4},
      {"five", 5},      {"six", 6},       {"seven", 7},    {"eight", 8},
      {"nine", 9},      {"ten", 10},      {"eleven", 11},  {"twelve", 12},
      {"thirteen", 13}, {"fourteen", 14}, {"fifteen", 15}, {"sixteen", 16},
      {"seventeen", 17},{"eighteen", 18}, {"nineteen", 19},{"twenty", 20},
      {"thirty", 30},   {"forty", 40},    {"fifty", 50},   {"sixty", 60},
      {"seventy", 70},  {"eighty", 80},   {"ninety", 90}};
  for (const auto& [word, value] : kWords) {
    if (w == word) return value;
  }
  return std::nullopt;
}

inline std::optional<std::int64_t> scale_word(const std::string& w) {
  if (w == "hundred") return 100;
  if (w == "thousand") return 1000;
  if (w == "million") return 1000000;
  return std::nullopt;
}

inline bool imprecise_word(const std::string& w) {
  return w == "few" || w == "several" || w == "some";
}

inline bool numeric_token(const std::string& w) {
  if (all_digits(w)) return true;
  if (w == "a" || w == "an") return true;
  if (imprecise_word(w)) return true;
  if (small_number_word(w) || scale_word(w)) return true;
  size_t dash = w.find('-');
  if (dash != std::string::npos) {
    return small_number_word(w.substr(0, dash)).has_value() &&
           small_number_word(w.substr(dash + 1)).has_value();
  }
  return false;
}

inline std::optional<int> month_number(const std::string& token) {
  std::string w = token;
  if (!w.empty() && w.back() == '.') w.pop_back();
  static const std::pair<const char*, int> kMonths[] = {
      {"january", 1},  {"jan", 1},  {"february", 2}, {"feb", 2},
      {"march", 3},    {"mar", 3},  {"april", 4},    {"apr", 4},
      {"may", 5},      {"june", 6}, {"jun", 6},      {"july", 7},
      {"jul", 7},      {"august", 8},{"aug", 8},     {"september", 9},
      {"sep", 9},      {"sept", 9}, {"october", 10}, {"oct", 10},
      {"november", 11},{"nov", 11}, {"december", 12},{"dec", 12}};
  for (const auto& [name, num] : kMonths) {
    if (w == name) return num;
  }
  return std::nullopt;
}

inline std::optional<Weekday> weekday_number(const std::string& w) {
  static const std::pair<const char*, Weekday> kDays[] = {
      {"monday", Weekday::kMonday},       {"tuesday", Weekday::kTuesday},
      {"wednesday", Weekday::kWednesday}, {"thursday", Weekday::kThursday},
      {"friday", Weekday::kFriday},       {"saturday", Weekday::kSaturday},
      {"sunday", Weekday::kSunday}};
  for (const auto& [name, day] : kDays) {
    if (w == name) return day;
  }
  return std::nullopt;
}

inline std::optional<TemporalUnit> unit_of(const std::string& token) {
  std::string w = token;
  if (w.size() > 1 && w.back() == 's') w.pop_back();
  if (w == "day") return TemporalUnit::kDay;
  if (w == "week") return TemporalUnit::kWeek;
  if (w == "month") return TemporalUnit::kMonth;
  if (w == "quarter") return TemporalUnit::kQuarter;
  if (w == "year") return TemporalUnit::kYear;
  return std::nullopt;
}

// Day-of-month candidate: 1-2 digits with an optional ordinal suffix.
inline std::optional<int> day_number(const std::string& w) {
  std::string digits = w;
  for (const char* suffix : {"st", "nd", "rd", "th"}) {
    if (digits.size() > 2 && digits.ends_with(suffix)) {
      digits = digits.substr(0, digits.size() - 2);
      break;
    }
  }
  if (!all_digits(digits) || digits.size() > 2) return std::nullopt;
  int v = std::stoi(digits);
  if (v < 1 || v > 31) return std::nullopt;
  return v;
}

}  // namespace words

// DURATION iff any of the three trigger rules fires: "for"/"during" within
// the three tokens before the span, the surface ends with an s, or the span
// is a bi-gram starting with "a". Case-insensitive.
inline TimexType classify_type(const Span& span, const Document& doc) {
  const auto& tokens = doc.sentence_of(span).tokens;
  int lo = span.start - 3;
  if (lo < 0) lo = 0;
  for (int i = lo; i < span.start; ++i) {
    std::string w = words::lower(tokens[static_cast<size_t>(i)]);
    if (w == "for" || w == "during") return TimexType::kDuration;
  }
  const std::string& last = tokens[static_cast<size_t>(span.end - 1)];
  if (!last.empty() && (last.back() == 's' || last.back() == 'S')) {
    return TimexType::kDuration;
  }
  if (span.length() == 2 &&
      words::lower(tokens[static_cast<size_t>(span.start)]) == "a") {
    return TimexType::kDuration;
  }
  return TimexType::kDate;
}

// Value of the first maximal run of numeric tokens: digit runs and number
// words compose ("seven hundred" -> 700), "a"/"an" count as 1, and imprecise
// words (few, several, some) yield the X marker. Absent when the tokens
// contain nothing numeric.
inline std::optional<Quantity> parse_numeric_words(
    const std::vector<std::string>& tokens) {
  size_t start = 0;
  while (start < tokens.size() &&
         !words::numeric_token(words::lower(tokens[start]))) {
    ++start;
  }
  if (start == tokens.size()) return std::nullopt;
  size_t end = start;
  while (end < tokens.size() &&
         words::numeric_token(words::lower(tokens[end]))) {
    ++end;
  }
  std::int64_t total = 0;
  std::int64_t current = 0;
  for (size_t i = start; i < end; ++i) {
    std::string w = words::lower(tokens[i]);
    if (words::imprecise_word(w)) return Quantity::imprecise();
    if (w == "a" || w == "an") {
      current += 1;
    } else if (words::all_digits(w)) {
      current += std::stoll(w);
    } else if (auto small = words::small_number_word(w)) {
      current += *small;
    } else if (auto scale = words::scale_word(w)) {
      if (current == 0) current = 1;
      if (*scale == 100) {
        current *= 100;
      } else {
        total += current * *scale;
        current = 0;
      }
    } else {
      size_t dash = w.find('-');
      current += *words::small_number_word(w.substr(0, dash)) +
                 *words::small_number_word(w.substr(dash + 1));
    }
  }
  std::int64_t value = total + current;
  if (value < 1) return std::nullopt;
  return Quantity::exact(value);
}

// The unique date with the requested weekday within baldwin_radius days of
// the DCT.
inline Date resolve_weekday(Weekday target, const Date& dct,
                            const NormalizerConfig& config) {
  for (int delta = -config.baldwin_radius; delta <= config.baldwin_radius;
       ++delta) {
    Date candidate = add_days(dct, delta);
    if (weekday_of(candidate) == target) return candidate;
  }
  throw Error("no " + std::string(weekday_name(target)) + " within " +
              std::to_string(config.baldwin_radius) + " days of " +
              format_date(dct));
}

// Year resolution for a year-less month/day: the next occurrence on or after
// the DCT if it falls within f days, otherwise the previous occurrence.
inline Date resolve_month_day(int month, int day, const Date& dct,
                              const NormalizerConfig& config) {
  if (month < 1 || month > 12 || day < 1 || day > 31) {
    throw ValidationError("month/day out of range");
  }
  std::optional<Date> next;
  for (int year = dct.year; year <= dct.year + 8; ++year) {
    if (!is_valid_date(year, month, day)) continue;
    Date candidate{year, month, day};
    if (to_serial(candidate) >= to_serial(dct)) {
      next = candidate;
      break;
    }
  }
  if (!next) {
    throw UnanchorableError("no occurrence of month " + std::to_string(month) +
                            " day " + std::to_string(day) + " near " +
                            format_date(dct));
  }
  if (days_between(dct, *next) <= config.f_days) return *next;
  if (!is_valid_date(next->year - 1, month, day)) {
    throw UnanchorableError("no previous occurrence of month " +
                            std::to_string(month) + " day " +
                            std::to_string(day) + " before " +
                            format_date(dct));
  }
  return Date{next->year - 1, month, day};
}

// Shifts the DCT by a signed number of units and truncates to the unit's
// granularity (quarters shift by three months and truncate like months).
inline DateValue apply_offset(const Date& dct, TemporalDirection direction,
                              const Quantity& quantity, TemporalUnit unit) {
  if (direction == TemporalDirection::kNone) {
    throw ValidationError("offset requires a direction");
  }
  if (quantity.is_imprecise()) {
    throw UnanchorableError("imprecise quantity cannot anchor a date");
  }
  std::int64_t n = quantity.value();
  if (direction == TemporalDirection::kPast) n = -n;
  switch (unit) {
    case TemporalUnit::kDay:
      return DateValue::day(add_days(dct, n));
    case TemporalUnit::kWeek:
      return DateValue::week(iso_week_of(add_days(dct, 7 * n)));
    case TemporalUnit::kMonth: {
      Date shifted = add_months(dct, static_cast<int>(n));
      return DateValue::month(shifted.year, shifted.month);
    }
    case TemporalUnit::kQuarter: {
      Date shifted = add_months(dct, static_cast<int>(3 * n));
      return DateValue::month(shifted.year, shifted.month);
    }
    case TemporalUnit::kYear:
      return DateValue::year(add_years(dct, static_cast<int>(n)).year);
  }
  throw Error("unreachable");
}

// TIMEX2-style duration string: P + count (or X) + unit letter. Quarters
// render as their three-month equivalent.
inline std::string duration_value(const Quantity& quantity, TemporalUnit unit) {
  std::string count =
      quantity.is_imprecise() ? "X" : std::to_string(quantity.value());
  switch (unit) {
    case TemporalUnit::kYear:
      return "P" + count + "Y";
    case TemporalUnit::kMonth:
      return "P" + count + "M";
    case TemporalUnit::kWeek:
      return "P" + count + "W";
    case TemporalUnit::kDay:
      return "P" + count + "D";
    case TemporalUnit::kQuarter:
      if (quantity.is_imprecise()) return "PXM";
      return "P" + std::to_string(3 * quantity.value()) + "M";
  }
  throw Error("unreachable");
}

namespace detail {

inline TemporalDirection direction_of(const std::vector<std::string>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string w = words::lower(tokens[i]);
    if (w == "last" || w == "ago" || w == "past" || w == "previous") {
      return TemporalDirection::kPast;
    }
    if (w == "next" || w == "coming" || w == "in") {
      return TemporalDirection::kFuture;
    }
    if (w == "from" && i + 1 < tokens.size() &&
        words::lower(tokens[i + 1]) == "now") {
      return TemporalDirection::kFuture;
    }
  }
  return TemporalDirection::kNone;
}

// "1980s" -> 1980.
inline std::optional<int> decade_year(const std::string& w) {
  if (w.size() == 5 && w.ends_with("0s") &&
      words::all_digits(w.substr(0, 4))) {
    return std::stoi(w.substr(0, 4));
  }
  return std::nullopt;
}

inline std::optional<int> literal_year(const std::string& w) {
  if (w.size() == 4 && words::all_digits(w)) return std::stoi(w);
  return std::nullopt;
}

}  // namespace detail

// Assigns type and value to a recognized span. Total over recognizer output:
// expressions that cannot be anchored come back with an absent value rather
// than an error. The returned annotation has no id; callers assign one.
//
// force_date suppresses the duration type rules; the pipeline sets it for
// spans matched by a rule whose name carries the `date:` prefix (decade
// strings would otherwise trip the ends-with-s rule).
inline TimexAnnotation normalize(const Span& span, const Document& doc,
                                 const NormalizerConfig& config,
                                 bool force_date = false) {
  TimexAnnotation out;
  out.span = span;

  const auto& sentence_tokens = doc.sentence_of(span).tokens;
  std::vector<std::string> tokens(
      sentence_tokens.begin() + span.start,
      sentence_tokens.begin() + span.end);
  std::string surface = words::lower(doc.surface(span));

  // Literal today/now carry the special PRESENT_REF value, which is a DATE
  // value regardless of surrounding duration triggers.
  if (surface == "today" || surface == "now") {
    out.type = TimexType::kDate;
    out.value = "PRESENT_REF";
    return out;
  }

  out.type = force_date ? TimexType::kDate : classify_type(span, doc);

  if (out.type == TimexType::kDuration) {
    std::optional<TemporalUnit> unit;
    for (const auto& tok : tokens) {
      if ((unit = words::unit_of(words::lower(tok)))) break;
    }
    if (!unit) return out;  // no temporal unit, leave valueless
    Quantity quantity =
        parse_numeric_words(tokens).value_or(Quantity::imprecise());
    out.value = duration_value(quantity, *unit);
    return out;
  }

  // DATE path. Collect the calendar evidence present in the span.
  std::optional<int> month, day, year;
  std::optional<Weekday> weekday;
  std::optional<TemporalUnit> unit;
  int month_index = -1;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string w = words::lower(tokens[i]);
    if (!month && words::month_number(w)) {
      month = words::month_number(w);
      month_index = static_cast<int>(i);
    }
    if (!year) year = detail::literal_year(w);
    if (!year) year = detail::decade_year(w);
    if (!weekday) weekday = words::weekday_number(w);
    if (!unit) unit = words::unit_of(w);
  }
  if (month) {
    // Day number adjacent to the month name: "April 17" or "17 April".
    size_t after = static_cast<size_t>(month_index) + 1;
    if (after < tokens.size()) {
      day = words::day_number(words::lower(tokens[after]));
    }
    if (!day && month_index > 0) {
      day = words::day_number(
          words::lower(tokens[static_cast<size_t>(month_index) - 1]));
    }
  }
  TemporalDirection direction = detail::direction_of(tokens);

  try {
    if (month && day) {
      Date resolved;
      if (year) {
        resolved = Date{*year, *month, *day};
        if (!is_valid_date(resolved.year, resolved.month, resolved.day)) {
          return out;  // e.g. "February 30, 1997"
        }
      } else if (direction == TemporalDirection::kNone) {
        resolved = resolve_month_day(*month, *day, doc.dct, config);
      } else {
        // Directed month/day: nearest occurrence strictly in the past or
        // future.
        int step = direction == TemporalDirection::kPast ? -1 : 1;
        std::optional<Date> found;
        for (int y = doc.dct.year + (step > 0 ? 0 : 1); !found;
             y += step) {
          if (std::abs(y - doc.dct.year) > 8) break;
          if (!is_valid_date(y, *month, *day)) continue;
          Date candidate{y, *month, *day};
          if (step < 0 ? candidate < doc.dct : doc.dct < candidate) {
            found = candidate;
          }
        }
        if (!found) return out;
        resolved = *found;
      }
      out.value = DateValue::day(resolved).str();
    } else if (month) {
      int y;
      if (year) {
        y = *year;
      } else if (direction == TemporalDirection::kPast) {
        y = *month < doc.dct.month ? doc.dct.year : doc.dct.year - 1;
      } else if (direction == TemporalDirection::kFuture) {
        y = *month > doc.dct.month ? doc.dct.year : doc.dct.year + 1;
      } else {
        // f-rule at month granularity; a DCT inside the month counts as
        // distance zero.
        if (*month == doc.dct.month) {
          y = doc.dct.year;
        } else {
          y = *month > doc.dct.month ? doc.dct.year : doc.dct.year + 1;
          if (days_between(doc.dct, Date{y, *month, 1}) > config.f_days) {
            y -= 1;
          }
        }
      }
      out.value = DateValue::month(y, *month).str();
    } else if (year) {
      out.value = DateValue::year(*year).str();
    } else if (weekday) {
      out.value = DateValue::day(resolve_weekday(*weekday, doc.dct, config)).str();
    } else if (surface == "yesterday") {
      out.value = DateValue::day(add_days(doc.dct, -1)).str();
    } else if (surface == "tomorrow") {
      out.value = DateValue::day(add_days(doc.dct, 1)).str();
    } else if (direction != TemporalDirection::kNone && unit) {
      Quantity quantity =
          parse_numeric_words(tokens).value_or(Quantity::exact(1));
      out.value = apply_offset(doc.dct, direction, quantity, *unit).str();
    }
    // Otherwise: no anchoring rule applies; value stays absent.
  } catch (const UnanchorableError&) {
    out.value.reset();
  }
  return out;
}

}  // namespace tempex

#endif  // TEMPEX_NORMALIZER_HPP_

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vcop {

// Seconds since the Unix epoch, UTC.
using Instant = std::int64_t;

inline constexpr Instant kSecondsPerDay = 86400;

struct CivilDateTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

Instant to_instant(const CivilDateTime& c);
CivilDateTime to_civil(Instant t);

// Strict "2010-03-14T09:26:53Z" (an optional fractional-second part is
// accepted and truncated). Returns nullopt on malformed input.
std::optional<Instant> parse_iso8601(std::string_view s);
std::string format_iso8601(Instant t);

// A calendar month in UTC.
class YearMonth {
 public:
  YearMonth() = default;
  YearMonth(int year, int month);

  static YearMonth of(Instant t);
  static std::optional<YearMonth> parse(std::string_view s);  // "2010-03"

  int year() const { return year_; }
  int month() const { return month_; }

  // Months since 0000-01; consecutive calendar months differ by one.
  int index() const { return year_ * 12 + (month_ - 1); }
  YearMonth next() const;

  Instant begin() const;  // first second of the month
  Instant end() const;    // first second of the following month

  std::string label() const;  // "2010-03"

  friend bool operator==(const YearMonth&, const YearMonth&) = default;
  friend std::strong_ordering operator<=>(const YearMonth& a, const YearMonth& b) {
    return a.index() <=> b.index();
  }

 private:
  int year_ = 1970;
  int month_ = 1;
};

}  // namespace vcop

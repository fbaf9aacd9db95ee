#include "vcop/time.hpp"

#include <array>
#include <cstdio>

#include "vcop/error.hpp"

namespace vcop {
namespace {

// Proleptic Gregorian day count relative to 1970-01-01 (Hinnant's civil
// calendar algorithms).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yr + (m <= 2));
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[static_cast<std::size_t>(month - 1)];
}

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  //  namespace

Instant to_instant(const CivilDateTime& c) {
  return days_from_civil(c.year, c.month, c.day) * kSecondsPerDay +
         c.hour * 3600 + c.minute * 60 + c.second;
}

CivilDateTime to_civil(Instant t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  CivilDateTime c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>((rem / 60) % 60);
  c.second = static_cast<int>(rem % 60);
  return c;
}

std::optional<Instant> parse_iso8601(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS[.fff]Z
  CivilDateTime c;
  if (s.size() < 20) return std::nullopt;
  if (!parse_fixed_uint(s, 0, 4, c.year) || s[4] != '-' ||
      !parse_fixed_uint(s, 5, 2, c.month) || s[7] != '-' ||
      !parse_fixed_uint(s, 8, 2, c.day) || (s[10] != 'T' && s[10] != 't') ||
      !parse_fixed_uint(s, 11, 2, c.hour) || s[13] != ':' ||
      !parse_fixed_uint(s, 14, 2, c.minute) || s[16] != ':' ||
      !parse_fixed_uint(s, 17, 2, c.second)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
  }
  if (pos + 1 != s.size() || (s[pos] != 'Z' && s[pos] != 'z')) return std::nullopt;
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > days_in_month(c.year, c.month) ||
      c.hour > 23 || c.minute > 59 || c.second > 59) {
    return std::nullopt;
  }
  return to_instant(c);
}

std::string format_iso8601(Instant t) {
  const CivilDateTime c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month,
                c.day, c.hour, c.minute, c.second);
  return buf;
}

YearMonth::YearMonth(int year, int month) : year_(year), month_(month) {
  if (month < 1 || month > 12) throw Error("month out of range: " + std::to_string(month));
}

YearMonth YearMonth::of(Instant t) {
  const CivilDateTime c = to_civil(t);
  return {c.year, c.month};
}

std::optional<YearMonth> YearMonth::parse(std::string_view s) {
  int y = 0;
  int m = 0;
  if (s.size() != 7 || s[4] != '-' || !parse_fixed_uint(s, 0, 4, y) ||
      !parse_fixed_uint(s, 5, 2, m) || m < 1 || m > 12) {
    return std::nullopt;
  }
  return YearMonth(y, m);
}

YearMonth YearMonth::next() const {
  return month_ == 12 ? YearMonth(year_ + 1, 1) : YearMonth(year_, month_ + 1);
}

Instant YearMonth::begin() const {
  return to_instant({year_, month_, 1, 0, 0, 0});
}

Instant YearMonth::end() const {
  return next().begin();
}

std::string YearMonth::label() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year_, month_);
  return buf;
}

}  // namespace vcop

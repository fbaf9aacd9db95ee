#include <doctest.h>

#include <sstream>

#include "vcop/csv.hpp"
#include "vcop/time.hpp"
#include "vcop/util.hpp"

using namespace vcop;

TEST_SUITE_BEGIN("time_csv");

TEST_CASE("iso8601 round trip") {
  const auto t = parse_iso8601("2010-03-14T09:26:53Z");
  REQUIRE(t.has_value());
  CHECK(format_iso8601(*t) == "2010-03-14T09:26:53Z");
  const CivilDateTime c = to_civil(*t);
  CHECK(c.year == 2010);
  CHECK(c.month == 3);
  CHECK(c.day == 14);
  CHECK(c.hour == 9);
}

TEST_CASE("iso8601 rejects malformed input") {
  CHECK_FALSE(parse_iso8601("2010-03-14 09:26:53Z").has_value());
  CHECK_FALSE(parse_iso8601("2010-03-14T09:26:53").has_value());
  CHECK_FALSE(parse_iso8601("2010-13-14T09:26:53Z").has_value());
  CHECK_FALSE(parse_iso8601("2010-02-30T09:26:53Z").has_value());
  CHECK_FALSE(parse_iso8601("2010-03-14T24:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601("").has_value());
  CHECK(parse_iso8601("2012-02-29T00:00:00Z").has_value());  // leap day
  CHECK(parse_iso8601("2010-03-14T09:26:53.123Z").has_value());
}

TEST_CASE("month boundary stays in its month") {
  const auto t = parse_iso8601("2010-01-31T23:59:59Z");
  REQUIRE(t.has_value());
  CHECK(YearMonth::of(*t) == YearMonth(2010, 1));
  CHECK(YearMonth::of(*t + 1) == YearMonth(2010, 2));
}

TEST_CASE("year month arithmetic and labels") {
  const YearMonth december(2009, 12);
  CHECK(december.next() == YearMonth(2010, 1));
  CHECK(december.label() == "2009-12");
  CHECK(YearMonth::parse("2009-12") == december);
  CHECK_FALSE(YearMonth::parse("2009-13").has_value());
  CHECK_FALSE(YearMonth::parse("200912").has_value());
  CHECK(YearMonth(2010, 1).index() - december.index() == 1);
  CHECK(december.end() == YearMonth(2010, 1).begin());
}

TEST_CASE("csv reader handles quoting") {
  std::istringstream in("a,\"b,c\",\"d\"\"e\",\"f\ng\"\r\nh,,i\n");
  CsvReader reader(in);
  std::vector<std::string> row;
  REQUIRE(reader.next_row(row));
  CHECK(row == std::vector<std::string>{"a", "b,c", "d\"e", "f\ng"});
  REQUIRE(reader.next_row(row));
  CHECK(row == std::vector<std::string>{"h", "", "i"});
  CHECK_FALSE(reader.next_row(row));
}

TEST_CASE("csv writer round trips") {
  const std::vector<std::string> fields = {"plain", "with,comma", "with\"quote",
                                           "multi\nline", ""};
  std::ostringstream out;
  write_csv_row(out, fields);
  std::istringstream in(out.str());
  CsvReader reader(in);
  std::vector<std::string> row;
  REQUIRE(reader.next_row(row));
  CHECK(row == fields);
}

TEST_CASE("double formatting round trips") {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-8, 0.0, 12345.6789, 4.0 / 9.0}) {
    const auto parsed = parse_double(format_double(v));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
  CHECK_FALSE(parse_double("12x").has_value());
  CHECK_FALSE(parse_double("").has_value());
}

TEST_CASE("fnv1a digest is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a("a") != fnv1a("b"));
}

TEST_SUITE_END();

#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace vcop {

// RFC 4180 row reader: quoted fields, "" escapes, embedded newlines, CRLF.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads one record into fields; returns false at end of input.
  bool next_row(std::vector<std::string>& fields);

  // 1-based line number where the last record started.
  std::size_t row_line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t row_line_ = 0;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace vcop

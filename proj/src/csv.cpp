#include "vcop/csv.hpp"

namespace vcop {

bool CsvReader::next_row(std::vector<std::string>& fields) {
  fields.clear();
  int ch = in_.get();
  if (ch == EOF) return false;
  row_line_ = line_;

  std::string field;
  bool quoted = false;
  bool any = false;
  while (true) {
    if (ch == EOF) break;
    const char c = static_cast<char>(ch);
    any = true;
    if (quoted) {
      if (c == '"') {
        const int peek = in_.peek();
        if (peek == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in_.peek() == '\n') in_.get();
      ++line_;
      break;
    } else {
      field.push_back(c);
    }
    ch = in_.get();
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

}  // namespace vcop

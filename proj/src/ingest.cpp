#include "vcop/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "vcop/csv.hpp"
#include "vcop/error.hpp"

namespace vcop {
namespace {

constexpr const char* kFields[] = {"post_id",        "community_id", "author_id",
                                   "parent_post_id", "timestamp",    "text"};

struct RawRecord {
  PostRecord post;
  std::size_t line = 0;
};

// Field-level checks shared by both formats. Returns false (with a
// diagnostic) when the record must be dropped.
bool validate_record(RawRecord& raw, const std::string& timestamp_text,
                     std::vector<Diagnostic>& diagnostics) {
  auto reject = [&](std::string message) {
    diagnostics.push_back({raw.line, std::move(message)});
    return false;
  };
  if (raw.post.post_id.empty()) return reject("empty field: post_id");
  if (raw.post.community_id.empty()) return reject("empty field: community_id");
  if (raw.post.author_id.empty()) return reject("empty field: author_id");
  const auto instant = parse_iso8601(timestamp_text);
  if (!instant) return reject("bad timestamp: \"" + timestamp_text + "\"");
  raw.post.timestamp = *instant;
  if (raw.post.parent_post_id && raw.post.parent_post_id->empty()) {
    raw.post.parent_post_id.reset();
  }
  return true;
}

void parse_jsonl(std::istream& in, std::vector<RawRecord>& records,
                 std::vector<Diagnostic>& diagnostics, std::size_t& seen) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++seen;
    const nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      diagnostics.push_back({line_no, "unparseable json object"});
      continue;
    }
    bool ok = true;
    for (const char* field : kFields) {
      if (!obj.contains(field)) {
        diagnostics.push_back({line_no, std::string("missing field: ") + field});
        ok = false;
      }
    }
    if (!ok) continue;
    RawRecord raw;
    raw.line = line_no;
    auto take_string = [&](const char* field, std::string& out) {
      const auto& v = obj.at(field);
      if (!v.is_string()) {
        diagnostics.push_back({line_no, std::string("non-string field: ") + field});
        return false;
      }
      out = v.get<std::string>();
      return true;
    };
    std::string timestamp_text;
    if (!take_string("post_id", raw.post.post_id) ||
        !take_string("community_id", raw.post.community_id) ||
        !take_string("author_id", raw.post.author_id) ||
        !take_string("timestamp", timestamp_text) ||
        !take_string("text", raw.post.text)) {
      continue;
    }
    const auto& parent = obj.at("parent_post_id");
    if (parent.is_string()) {
      raw.post.parent_post_id = parent.get<std::string>();
    } else if (!parent.is_null()) {
      diagnostics.push_back({line_no, "non-string field: parent_post_id"});
      continue;
    }
    if (validate_record(raw, timestamp_text, diagnostics)) {
      records.push_back(std::move(raw));
    }
  }
}

void parse_csv(std::istream& in, std::vector<RawRecord>& records,
               std::vector<Diagnostic>& diagnostics, std::size_t& seen) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next_row(row)) throw Error("empty archive: no csv header row");

  std::unordered_map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < row.size(); ++i) columns.emplace(row[i], i);
  for (const char* field : kFields) {
    if (!columns.count(field)) {
      throw Error(std::string("csv header missing column: ") + field);
    }
  }

  while (reader.next_row(row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank trailing line
    ++seen;
    if (row.size() < columns.size()) {
      diagnostics.push_back({reader.row_line(), "short row"});
      continue;
    }
    auto cell = [&](const char* field) -> const std::string& {
      return row[columns.at(field)];
    };
    RawRecord raw;
    raw.line = reader.row_line();
    raw.post.post_id = cell("post_id");
    raw.post.community_id = cell("community_id");
    raw.post.author_id = cell("author_id");
    if (!cell("parent_post_id").empty()) raw.post.parent_post_id = cell("parent_post_id");
    raw.post.text = cell("text");
    if (validate_record(raw, cell("timestamp"), diagnostics)) {
      records.push_back(std::move(raw));
    }
  }
}

}  // namespace

ArchiveFormat parse_format(std::string_view name) {
  if (name == "jsonl") return ArchiveFormat::jsonl;
  if (name == "csv") return ArchiveFormat::csv;
  throw Error("unknown archive format: " + std::string(name));
}

IngestResult parse_archive(std::istream& in, ArchiveFormat format) {
  if (!in) throw Error("unreadable archive stream");
  IngestResult result;
  std::vector<RawRecord> records;
  if (format == ArchiveFormat::jsonl) {
    parse_jsonl(in, records, result.diagnostics, result.records_seen);
  } else {
    parse_csv(in, records, result.diagnostics, result.records_seen);
  }
  if (in.bad()) throw Error("i/o error while reading archive");

  // Duplicate post ids: keep the first occurrence in input order.
  std::unordered_set<std::string> ids;
  ids.reserve(records.size());
  std::vector<RawRecord> kept;
  kept.reserve(records.size());
  for (auto& raw : records) {
    if (!ids.insert(raw.post.post_id).second) {
      result.diagnostics.push_back({raw.line, "duplicate post_id: " + raw.post.post_id});
      continue;
    }
    kept.push_back(std::move(raw));
  }

  // Parent links resolve against the deduplicated id set; a dangling parent
  // demotes the post to a thread starter instead of dropping it.
  std::unordered_map<std::string, const RawRecord*> by_id;
  by_id.reserve(kept.size());
  for (const auto& raw : kept) by_id.emplace(raw.post.post_id, &raw);
  for (auto& raw : kept) {
    if (!raw.post.parent_post_id) continue;
    const auto it = by_id.find(*raw.post.parent_post_id);
    if (it == by_id.end()) {
      result.diagnostics.push_back(
          {raw.line, "unresolvable parent_post_id: " + *raw.post.parent_post_id +
                         ", treated as thread-starting"});
      raw.post.parent_post_id.reset();
    } else if (it->second->post.timestamp > raw.post.timestamp) {
      result.diagnostics.push_back(
          {raw.line, "parent posted after reply: " + *raw.post.parent_post_id});
    }
  }

  if (kept.empty()) throw Error("empty archive: no valid records");
  result.records_kept = kept.size();
  std::vector<PostRecord> posts;
  posts.reserve(kept.size());
  for (auto& raw : kept) posts.push_back(std::move(raw.post));
  result.archive = finalize_archive(std::move(posts));
  return result;
}

IngestResult load_archive(const std::string& path, ArchiveFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  return parse_archive(in, format);
}

void write_jsonl(std::ostream& out, const Archive& archive) {
  for (const auto& post : archive.posts) {
    nlohmann::ordered_json obj;
    obj["post_id"] = post.post_id;
    obj["community_id"] = post.community_id;
    obj["author_id"] = post.author_id;
    if (post.parent_post_id) {
      obj["parent_post_id"] = *post.parent_post_id;
    } else {
      obj["parent_post_id"] = nullptr;
    }
    obj["timestamp"] = format_iso8601(post.timestamp);
    obj["text"] = post.text;
    out << obj.dump() << '\n';
  }
}

std::string render_ingest_report(const IngestResult& result) {
  std::ostringstream out;
  const Archive& a = result.archive;
  out << "records seen:    " << result.records_seen << '\n';
  out << "records kept:    " << result.records_kept << '\n';
  out << "diagnostics:     " << result.diagnostics.size() << '\n';
  out << "communities:     " << a.communities.size() << '\n';
  std::unordered_set<std::string> authors;
  for (const auto& p : a.posts) authors.insert(p.author_id);
  out << "authors:         " << authors.size() << '\n';
  out << "span:            " << format_iso8601(a.span_begin) << " .. "
      << format_iso8601(a.span_end) << '\n';
  for (const auto& d : result.diagnostics) {
    out << "line " << d.line << ": " << d.message << '\n';
  }
  return out.str();
}

}  // namespace vcop

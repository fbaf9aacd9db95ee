#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vcop/archive.hpp"

namespace vcop {

enum class ArchiveFormat { jsonl, csv };

ArchiveFormat parse_format(std::string_view name);  // "jsonl" | "csv"

struct Diagnostic {
  std::size_t line = 0;  // 1-based input line (record row for csv)
  std::string message;
};

struct IngestResult {
  Archive archive;
  std::vector<Diagnostic> diagnostics;
  std::size_t records_seen = 0;  // data lines/rows, well-formed or not
  std::size_t records_kept = 0;
};

// Parses and validates a raw archive stream. Ill-formed records become
// diagnostics and are dropped; duplicate post ids keep the first occurrence;
// a reply whose parent id is unknown is kept as a thread starter. Throws
// Error when the stream yields no valid record at all.
IngestResult parse_archive(std::istream& in, ArchiveFormat format);
IngestResult load_archive(const std::string& path, ArchiveFormat format);

// Canonical json-lines serialization; re-parsing yields an identical archive.
void write_jsonl(std::ostream& out, const Archive& archive);

// Human-readable validation summary for the `ingest` subcommand.
std::string render_ingest_report(const IngestResult& result);

}  // namespace vcop

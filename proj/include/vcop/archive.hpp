#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcop/time.hpp"

namespace vcop {

// One forum message; the unit of observation everywhere downstream.
struct PostRecord {
  std::string post_id;
  std::string community_id;
  std::string author_id;
  std::optional<std::string> parent_post_id;  // absent for thread starters
  Instant timestamp = 0;
  std::string text;

  friend bool operator==(const PostRecord&, const PostRecord&) = default;
};

// Immutable after ingestion; posts sorted by timestamp ascending.
struct Archive {
  std::vector<PostRecord> posts;
  std::vector<std::string> communities;  // sorted, unique
  Instant span_begin = 0;
  Instant span_end = 0;
};

// Sorts posts, derives the community set and span. Shared by the parser and
// the synthetic generator.
Archive finalize_archive(std::vector<PostRecord> posts);

// post_id -> index into Archive::posts.
using PostIndex = std::unordered_map<std::string, std::uint32_t>;
PostIndex build_post_index(const Archive& archive);

// Community -> ascending indices into Archive::posts.
std::map<std::string, std::vector<std::uint32_t>> posts_by_community(const Archive& archive);

// Posts of one community falling in one UTC calendar month. Months with no
// posts still get a window so the panel has rows for silent months.
struct MonthWindow {
  std::string community_id;
  YearMonth month;
  std::vector<std::uint32_t> post_index;  // ascending indices into Archive::posts
};

// One window per (community, calendar month) from each community's first post
// month through its last, inclusive. Windows partition the archive's posts.
std::vector<MonthWindow> window_by_month(const Archive& archive);

}  // namespace vcop

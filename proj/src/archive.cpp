#include "vcop/archive.hpp"

#include <algorithm>

#include "vcop/error.hpp"

namespace vcop {

Archive finalize_archive(std::vector<PostRecord> posts) {
  Archive archive;
  archive.posts = std::move(posts);
  std::stable_sort(archive.posts.begin(), archive.posts.end(),
                   [](const PostRecord& a, const PostRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  for (const auto& p : archive.posts) archive.communities.push_back(p.community_id);
  std::sort(archive.communities.begin(), archive.communities.end());
  archive.communities.erase(
      std::unique(archive.communities.begin(), archive.communities.end()),
      archive.communities.end());
  if (!archive.posts.empty()) {
    archive.span_begin = archive.posts.front().timestamp;
    archive.span_end = archive.posts.back().timestamp;
  }
  return archive;
}

PostIndex build_post_index(const Archive& archive) {
  PostIndex index;
  index.reserve(archive.posts.size());
  for (std::uint32_t i = 0; i < archive.posts.size(); ++i) {
    index.emplace(archive.posts[i].post_id, i);
  }
  return index;
}

std::map<std::string, std::vector<std::uint32_t>> posts_by_community(const Archive& archive) {
  std::map<std::string, std::vector<std::uint32_t>> by_community;
  for (std::uint32_t i = 0; i < archive.posts.size(); ++i) {
    by_community[archive.posts[i].community_id].push_back(i);
  }
  return by_community;
}

std::vector<MonthWindow> window_by_month(const Archive& archive) {
  if (archive.posts.empty()) throw Error("cannot window an empty archive");
  std::vector<MonthWindow> windows;
  for (const auto& [community, indices] : posts_by_community(archive)) {
    const YearMonth first = YearMonth::of(archive.posts[indices.front()].timestamp);
    const YearMonth last = YearMonth::of(archive.posts[indices.back()].timestamp);
    std::size_t cursor = 0;
    for (YearMonth m = first; m <= last; m = m.next()) {
      MonthWindow w{community, m, {}};
      while (cursor < indices.size() &&
             archive.posts[indices[cursor]].timestamp < m.end()) {
        w.post_index.push_back(indices[cursor]);
        ++cursor;
      }
      windows.push_back(std::move(w));
    }
  }
  return windows;
}

}  // namespace vcop

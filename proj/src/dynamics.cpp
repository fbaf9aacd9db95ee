#include "vcop/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vcop/error.hpp"
#include "vcop/graph.hpp"
#include "vcop/util.hpp"

namespace vcop {

std::vector<MemberSeries> betweenness_series(
    const Archive& archive, const PostIndex& index,
    std::span<const std::uint32_t> community_posts, YearMonth month,
    const SeriesOptions& options) {
  if (options.snapshot_days < 1 || options.trail_days < options.snapshot_days ||
      options.trail_days > 31) {
    throw Error("snapshot spacing must satisfy 1 <= spacing <= trailing window <= 31 days");
  }
  const Instant month_begin = month.begin();
  const Instant month_end = month.end();

  std::set<std::string> active;
  for (const std::uint32_t i : community_posts) {
    const Instant t = archive.posts[i].timestamp;
    if (t >= month_begin && t < month_end) active.insert(archive.posts[i].author_id);
  }
  if (active.empty()) return {};

  std::vector<MemberSeries> series;
  series.reserve(active.size());
  for (const auto& author : active) series.push_back({author, {}});

  const Instant spacing = static_cast<Instant>(options.snapshot_days) * kSecondsPerDay;
  const Instant trail = static_cast<Instant>(options.trail_days) * kSecondsPerDay;
  const auto snapshots = (month_end - month_begin) / spacing;

  const auto ts_less = [&](std::uint32_t idx, Instant value) {
    return archive.posts[idx].timestamp < value;
  };
  for (Instant k = 1; k <= snapshots; ++k) {
    const Instant t = month_begin + k * spacing - 1;  // last second of the step
    // Posts with timestamp in (t - trail, t]; community posts are ascending.
    const auto lo = std::lower_bound(community_posts.begin(), community_posts.end(),
                                     t - trail + 1, ts_less);
    const auto hi = std::lower_bound(lo, community_posts.end(), t + 1, ts_less);
    const InteractionGraph graph =
        InteractionGraph::build(archive, std::span(lo, hi), index);
    const BetweennessMap scores = betweenness(graph);
    for (auto& s : series) {
      const auto node = graph.index_of(s.author_id);
      s.values.push_back(node ? scores.raw[static_cast<std::size_t>(*node)] : 0.0);
    }
  }
  return series;
}

int count_oscillations(std::span<const double> values) {
  std::vector<double> runs;
  for (const double v : values) {
    if (runs.empty() || runs.back() != v) runs.push_back(v);
  }
  int count = 0;
  for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
    if ((runs[i] - runs[i - 1]) * (runs[i + 1] - runs[i]) < 0) ++count;
  }
  return count;
}

double rotating_leadership(const std::vector<MemberSeries>& series) {
  if (series.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : series) total += count_oscillations(s.values);
  return total / static_cast<double>(series.size());
}

bool launch_phase(int age, int size, const LaunchOptions& options) {
  const bool young = age <= options.age_months;
  const bool small = size < options.size_members;
  return options.require_both ? (young && small) : (young || small);
}

std::vector<DynamicsRow> compute_dynamics(const Archive& archive,
                                          const PostIndex& index,
                                          const std::vector<MonthWindow>& windows,
                                          const DynamicsOptions& options, int jobs) {
  const auto community_posts = posts_by_community(archive);

  // A member joins in the month of their first post to the community.
  std::map<std::string, std::map<std::string, int>> first_month;
  for (const auto& post : archive.posts) {
    auto& seen = first_month[post.community_id];
    seen.emplace(post.author_id, YearMonth::of(post.timestamp).index());
  }
  std::map<std::string, std::map<int, int>> joiner_counts;
  for (const auto& [community, firsts] : first_month) {
    auto& counts = joiner_counts[community];
    for (const auto& [author, month_index] : firsts) ++counts[month_index];
  }

  std::vector<DynamicsRow> rows(windows.size());
  std::map<std::string, int> start_index;  // community -> first month index
  std::map<std::string, std::vector<std::size_t>> by_community;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = windows[i];
    by_community[w.community_id].push_back(i);
    auto [it, inserted] = start_index.emplace(w.community_id, w.month.index());
    if (!inserted) it->second = std::min(it->second, w.month.index());
  }

  for (const auto& [community, window_ids] : by_community) {
    const auto& counts = joiner_counts.at(community);
    int cumulative = 0;
    int previous_posts = 0;
    for (const std::size_t i : window_ids) {  // windows are month-ascending
      const MonthWindow& w = windows[i];
      DynamicsRow& row = rows[i];
      row.community_id = community;
      row.month = w.month;
      row.age = w.month.index() - start_index.at(community) + 1;
      const auto it = counts.find(w.month.index());
      row.joiners = it == counts.end() ? 0 : it->second;
      cumulative += row.joiners;
      row.size = cumulative;
      row.launch_phase = launch_phase(row.age, row.size, options.launch);
      row.past_activity = previous_posts;
      previous_posts = static_cast<int>(w.post_index.size());
    }
  }

  // The betweenness series dominate the cost; months are independent.
  parallel_for(windows.size(), jobs, [&](std::size_t i) {
    const MonthWindow& w = windows[i];
    const auto series = betweenness_series(archive, index,
                                           community_posts.at(w.community_id),
                                           w.month, options.series);
    rows[i].rotating_leadership = rotating_leadership(series);
  });
  return rows;
}

}  // namespace vcop

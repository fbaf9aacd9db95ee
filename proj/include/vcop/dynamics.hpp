#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcop/archive.hpp"

namespace vcop {

struct SeriesOptions {
  int snapshot_days = 1;  // spacing between betweenness snapshots
  int trail_days = 7;     // trailing window feeding each snapshot graph
};

// One month-active member's betweenness trajectory: a raw score per
// snapshot, zero while the member is absent from the snapshot graph.
struct MemberSeries {
  std::string author_id;
  std::vector<double> values;
};

// Snapshots sit at the last second of every `snapshot_days` step inside the
// month; each snapshot graph is built from the community's posts in the
// trailing window, which may reach into earlier months. One series per
// member who posted in the month, in author order.
std::vector<MemberSeries> betweenness_series(
    const Archive& archive, const PostIndex& index,
    std::span<const std::uint32_t> community_posts, YearMonth month,
    const SeriesOptions& options = {});

// Direction reversals of the series: strict interior extrema, with runs of
// equal values collapsed so a plateau flanked from the same side counts once
// and a plateau inside a monotone stretch counts not at all.
int count_oscillations(std::span<const double> values);

// Mean oscillation count across the month's member series; 0 with no series.
double rotating_leadership(const std::vector<MemberSeries>& series);

struct LaunchOptions {
  int age_months = 3;
  int size_members = 50;
  bool require_both = false;  // false: either threshold flags launch phase
};

bool launch_phase(int age, int size, const LaunchOptions& options = {});

struct DynamicsRow {
  std::string community_id;
  YearMonth month;
  int joiners = 0;        // members whose first post falls in this month
  int size = 0;           // cumulative distinct contributors through the month
  int age = 0;            // months since the community's first post, first = 1
  bool launch_phase = false;
  int past_activity = 0;  // post count of the preceding month
  double rotating_leadership = 0.0;
};

struct DynamicsOptions {
  SeriesOptions series;
  LaunchOptions launch;
};

std::vector<DynamicsRow> compute_dynamics(const Archive& archive,
                                          const PostIndex& index,
                                          const std::vector<MonthWindow>& windows,
                                          const DynamicsOptions& options = {},
                                          int jobs = 1);

}  // namespace vcop

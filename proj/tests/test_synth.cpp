#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "vcop/dynamics.hpp"
#include "vcop/error.hpp"
#include "vcop/graph.hpp"
#include "vcop/synth.hpp"

using namespace vcop;

namespace {

CommunitySpec base_spec(std::uint64_t seed) {
  CommunitySpec spec;
  spec.community_id = "syn";
  spec.members = 20;
  spec.initial_members = 12;
  spec.months = 4;
  spec.posts_per_month = 60.0;
  spec.centralization = 0.5;
  spec.rotation = 0.2;
  spec.seed = seed;
  return spec;
}

double mean_group_betweenness(const Archive& archive) {
  const auto windows = window_by_month(archive);
  const auto index = build_post_index(archive);
  double sum = 0.0;
  int count = 0;
  for (const auto& w : windows) {
    const auto gb =
        group_betweenness(InteractionGraph::build(archive, w.post_index, index));
    if (gb) {
      sum += *gb;
      ++count;
    }
  }
  REQUIRE(count > 0);
  return sum / count;
}

double mean_rotating_leadership(const Archive& archive) {
  const auto windows = window_by_month(archive);
  const auto rows = compute_dynamics(archive, build_post_index(archive), windows);
  double sum = 0.0;
  for (const auto& r : rows) sum += r.rotating_leadership;
  return sum / static_cast<double>(rows.size());
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("identical specs generate identical archives") {
  const std::vector<CommunitySpec> specs = {base_spec(42)};
  const Archive a = generate_archive(specs);
  const Archive b = generate_archive(specs);
  CHECK(a.posts == b.posts);
  CHECK_FALSE(a.posts.empty());

  // A different seed moves the stream.
  const Archive c = generate_archive({base_spec(43)});
  CHECK(a.posts != c.posts);
}

TEST_CASE("every activated member posts in their activation month") {
  const Archive archive = generate_archive({base_spec(7)});
  const auto windows = window_by_month(archive);
  const auto rows = compute_dynamics(archive, build_post_index(archive), windows);
  int joiners = 0;
  for (const auto& r : rows) joiners += r.joiners;
  std::set<std::string> authors;
  for (const auto& p : archive.posts) authors.insert(p.author_id);
  CHECK(joiners == static_cast<int>(authors.size()));
  CHECK(rows.back().size == static_cast<int>(authors.size()));
}

TEST_CASE("full centralization with a fixed hub produces exact stars") {
  CommunitySpec spec = base_spec(11);
  spec.centralization = 1.0;
  spec.rotation = 0.0;
  spec.months = 6;
  const Archive archive = generate_archive({spec});
  const auto windows = window_by_month(archive);
  const auto index = build_post_index(archive);
  int checked = 0;
  for (const auto& w : windows) {
    const InteractionGraph g = InteractionGraph::build(archive, w.post_index, index);
    if (g.node_count() >= 3) {
      CHECK(*group_betweenness(g) == 1.0);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("higher centralization raises monthly centralization scores") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    CommunitySpec low = base_spec(seed);
    low.centralization = 0.1;
    low.rotation = 0.05;
    CommunitySpec high = base_spec(seed);
    high.centralization = 0.9;
    high.rotation = 0.05;
    CHECK(mean_group_betweenness(generate_archive({high})) >
          mean_group_betweenness(generate_archive({low})));
  }
}

TEST_CASE("rotating leadership responds monotonically to the rotation dial") {
  // 20-seed medians across the dial grid {0, 0.5, 1}.
  std::vector<double> medians;
  for (const double dial : {0.0, 0.5, 1.0}) {
    std::vector<double> values;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CommunitySpec spec = base_spec(seed);
      spec.centralization = 0.9;
      spec.rotation = dial;
      values.push_back(mean_rotating_leadership(generate_archive({spec})));
    }
    std::sort(values.begin(), values.end());
    medians.push_back(0.5 * (values[9] + values[10]));
  }
  CHECK(medians[0] <= medians[1]);
  CHECK(medians[1] <= medians[2]);
  CHECK(medians[2] > medians[0]);  // the dial does move the metric
}

TEST_CASE("growth coupling feeds joiners from centralization") {
  CommunitySpec low = base_spec(5);
  low.centralization = 0.0;
  low.growth_coupling = 6.0;
  low.months = 8;
  CommunitySpec high = low;
  high.centralization = 1.0;
  high.members = 100;
  low.members = 100;
  const Archive la = generate_archive({low});
  const Archive ha = generate_archive({high});
  std::set<std::string> low_authors;
  std::set<std::string> high_authors;
  for (const auto& p : la.posts) low_authors.insert(p.author_id);
  for (const auto& p : ha.posts) high_authors.insert(p.author_id);
  CHECK(high_authors.size() > low_authors.size());
}

TEST_CASE("infeasible and malformed specs are fatal") {
  CHECK_THROWS_AS(generate_archive({}), Error);

  CommunitySpec spec = base_spec(1);
  spec.members = 0;
  CHECK_THROWS_AS(generate_archive({spec}), Error);

  spec = base_spec(1);
  spec.centralization = 1.5;
  CHECK_THROWS_AS(generate_archive({spec}), Error);

  spec = base_spec(1);
  spec.months = 0;
  CHECK_THROWS_AS(generate_archive({spec}), Error);

  spec = base_spec(1);
  spec.growth_coupling = -1.0;
  CHECK_THROWS_AS(generate_archive({spec}), Error);
}

TEST_CASE("spec files load with defaults applied") {
  const char* path = "/tmp/vcop_specs.json";
  std::ofstream(path) << R"({"communities": [
    {"community_id": "a", "members": 10, "months": 3, "posts_per_month": 20,
     "seed": 9, "centralization": 0.7, "start": "2009-06"},
    {"community_id": "b", "members": 5, "months": 2, "posts_per_month": 4, "seed": 10}
  ]})";
  const auto specs = load_community_specs(path);
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].centralization == 0.7);
  CHECK(specs[0].start == YearMonth(2009, 6));
  CHECK(specs[1].rotation == 0.0);
  CHECK(specs[1].sentiment_bias == 0.5);
  CHECK(specs[1].start == YearMonth(2008, 4));

  std::ofstream(path) << R"({"communities": [{"community_id": "a"}]})";
  CHECK_THROWS_AS(load_community_specs(path), Error);
  std::ofstream(path) << R"(["not an object"])";
  CHECK_THROWS_AS(load_community_specs(path), Error);
}

TEST_SUITE_END();

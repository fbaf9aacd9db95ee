#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vcop/archive.hpp"

namespace vcop {

// Who-replied-to-whom within one set of posts. Reply edges stay directed and
// weighted; geodesic metrics run on the undirected simple view, which drops
// self-loops and edge weights.
class InteractionGraph {
 public:
  InteractionGraph() = default;

  // Builds from the posts at `post_indices`. Parents resolve through the
  // archive-wide index, so a reply to an older post still links the two
  // authors; the parent's author counts as a node of this window.
  static InteractionGraph build(const Archive& archive,
                                std::span<const std::uint32_t> post_indices,
                                const PostIndex& index);

  // Test/synthetic constructor: nodes 0..n-1, undirected edge list.
  static InteractionGraph from_undirected_edges(
      int n, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& node_ids() const { return ids_; }
  std::optional<int> index_of(std::string_view author) const;

  // Directed (replier, parent author) -> reply count; includes self-replies.
  const std::map<std::pair<int, int>, int>& reply_edges() const { return edges_; }

  // Undirected simple adjacency, neighbor lists sorted.
  const std::vector<std::vector<int>>& neighbors() const { return adj_; }

 private:
  std::vector<std::string> ids_;  // sorted author ids; index = node id
  std::map<std::pair<int, int>, int> edges_;
  std::vector<std::vector<int>> adj_;
};

struct BetweennessMap {
  // Per node, sum over unordered pairs {j,k} of the fraction of j-k
  // geodesics through the node; pairs with no path contribute zero.
  std::vector<double> raw;
  // raw / ((n-1)(n-2)/2); empty when n < 3.
  std::vector<double> standardized;
  int n = 0;
};

BetweennessMap betweenness(const InteractionGraph& graph);

// Group betweenness centralization,
//   2 * sum_i (B_max - B_i) / ((n-1)^2 (n-2)),
// over raw scores: 1 for a star, 0 when all scores tie. Undefined (nullopt)
// for fewer than three nodes.
std::optional<double> group_betweenness(const BetweennessMap& scores);
std::optional<double> group_betweenness(const InteractionGraph& graph);

// Per-(community, month) centralization for the panel.
struct CentralizationRow {
  std::string community_id;
  YearMonth month;
  std::optional<double> group_betweenness;
};

std::vector<CentralizationRow> compute_centralization(
    const Archive& archive, const std::vector<MonthWindow>& windows,
    const PostIndex& index, int jobs = 1);

}  // namespace vcop

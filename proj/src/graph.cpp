#include "vcop/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <set>

#include "vcop/error.hpp"
#include "vcop/util.hpp"

namespace vcop {

InteractionGraph InteractionGraph::build(const Archive& archive,
                                         std::span<const std::uint32_t> post_indices,
                                         const PostIndex& index) {
  // Nodes: window authors plus authors of posts replied to from the window.
  std::set<std::string> authors;
  for (const std::uint32_t i : post_indices) {
    const PostRecord& post = archive.posts[i];
    authors.insert(post.author_id);
    if (post.parent_post_id) {
      const auto parent = index.find(*post.parent_post_id);
      if (parent != index.end()) {
        authors.insert(archive.posts[parent->second].author_id);
      }
    }
  }

  InteractionGraph g;
  g.ids_.assign(authors.begin(), authors.end());
  for (const std::uint32_t i : post_indices) {
    const PostRecord& post = archive.posts[i];
    if (!post.parent_post_id) continue;
    const auto parent = index.find(*post.parent_post_id);
    if (parent == index.end()) continue;
    const int from = *g.index_of(post.author_id);
    const int to = *g.index_of(archive.posts[parent->second].author_id);
    ++g.edges_[{from, to}];
  }

  g.adj_.resize(g.ids_.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [edge, weight] : g.edges_) {
    const auto [from, to] = edge;
    if (from == to) continue;  // self-replies stay out of the geodesic view
    const auto key = std::minmax(from, to);
    if (seen.insert(key).second) {
      g.adj_[static_cast<std::size_t>(from)].push_back(to);
      g.adj_[static_cast<std::size_t>(to)].push_back(from);
    }
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

InteractionGraph InteractionGraph::from_undirected_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  InteractionGraph g;
  g.ids_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%03d", i);
    g.ids_.emplace_back(buf);
  }
  g.adj_.resize(static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error("edge endpoint out of range");
    ++g.edges_[{a, b}];
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (seen.insert(key).second) {
      g.adj_[static_cast<std::size_t>(a)].push_back(b);
      g.adj_[static_cast<std::size_t>(b)].push_back(a);
    }
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

std::optional<int> InteractionGraph::index_of(std::string_view author) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), author);
  if (it == ids_.end() || *it != author) return std::nullopt;
  return static_cast<int>(it - ids_.begin());
}

BetweennessMap betweenness(const InteractionGraph& graph) {
  const int n = graph.node_count();
  const auto& adj = graph.neighbors();
  BetweennessMap out;
  out.n = n;
  out.raw.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return out;

  // Brandes accumulation over every source; geodesic counts are exact in
  // doubles for the graph sizes a monthly window produces.
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<double> sigma(static_cast<std::size_t>(n));
  std::vector<double> delta(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));

  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[static_cast<std::size_t>(s)] = 0;
    sigma[static_cast<std::size_t>(s)] = 1.0;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (const int w : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          frontier.push(w);
        }
        if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] + 1) {
          sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
          preds[static_cast<std::size_t>(w)].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (const int v : preds[static_cast<std::size_t>(w)]) {
        delta[static_cast<std::size_t>(v)] +=
            sigma[static_cast<std::size_t>(v)] / sigma[static_cast<std::size_t>(w)] *
            (1.0 + delta[static_cast<std::size_t>(w)]);
      }
      if (w != s) out.raw[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
  }
  // Each unordered pair was accumulated from both endpoints.
  for (double& b : out.raw) b /= 2.0;

  if (n >= 3) {
    const double scale = static_cast<double>(n - 1) * (n - 2) / 2.0;
    out.standardized.resize(out.raw.size());
    for (std::size_t i = 0; i < out.raw.size(); ++i) {
      out.standardized[i] = out.raw[i] / scale;
    }
  }
  return out;
}

std::optional<double> group_betweenness(const BetweennessMap& scores) {
  const int n = scores.n;
  if (n < 3) return std::nullopt;
  const double top = *std::max_element(scores.raw.begin(), scores.raw.end());
  double gaps = 0.0;
  for (const double b : scores.raw) gaps += top - b;
  const double denom =
      static_cast<double>(n - 1) * (n - 1) * (n - 2);
  return 2.0 * gaps / denom;
}

std::optional<double> group_betweenness(const InteractionGraph& graph) {
  if (graph.node_count() < 3) return std::nullopt;
  return group_betweenness(betweenness(graph));
}

std::vector<CentralizationRow> compute_centralization(
    const Archive& archive, const std::vector<MonthWindow>& windows,
    const PostIndex& index, int jobs) {
  std::vector<CentralizationRow> rows(windows.size());
  parallel_for(windows.size(), jobs, [&](std::size_t i) {
    const MonthWindow& w = windows[i];
    const InteractionGraph g = InteractionGraph::build(archive, w.post_index, index);
    rows[i] = {w.community_id, w.month, group_betweenness(g)};
  });
  return rows;
}

}  // namespace vcop

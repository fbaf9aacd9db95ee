#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

namespace vcop::testing {
namespace {

// All geodesics from s to t, as node sequences, walking the BFS layers
// backwards from t.
void enumerate_paths(const std::vector<std::vector<int>>& adj,
                     const std::vector<int>& dist, int node, int s,
                     std::vector<int>& partial, std::vector<std::vector<int>>& paths) {
  partial.push_back(node);
  if (node == s) {
    paths.emplace_back(partial.rbegin(), partial.rend());
  } else {
    for (const int prev : adj[static_cast<std::size_t>(node)]) {
      if (dist[static_cast<std::size_t>(prev)] == dist[static_cast<std::size_t>(node)] - 1) {
        enumerate_paths(adj, dist, prev, s, partial, paths);
      }
    }
  }
  partial.pop_back();
}

}  // namespace

std::vector<double> brute_force_betweenness(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<double> scores(adj.size(), 0.0);
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(adj.size(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (const int w : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          frontier.push(w);
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (dist[static_cast<std::size_t>(t)] < 0) continue;  // no path, no credit
      std::vector<std::vector<int>> paths;
      std::vector<int> partial;
      enumerate_paths(adj, dist, t, s, partial, paths);
      const double share = 1.0 / static_cast<double>(paths.size());
      for (const auto& path : paths) {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
          scores[static_cast<std::size_t>(path[i])] += share;
        }
      }
    }
  }
  return scores;
}

std::vector<std::pair<int, int>> random_edge_list(int n, double density,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (uniform() < density) edges.emplace_back(a, b);
    }
  }
  return edges;
}

std::vector<std::vector<int>> adjacency_from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

double gaussian(std::mt19937_64& rng) {
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double u = 0.0;
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

}  // namespace vcop::testing

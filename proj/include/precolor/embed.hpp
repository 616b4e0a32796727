#pragma once

// Decides whether an edge-colored graph occurs as a subgraph of Q_d with
// edge colors realized by dimensions.  Labels are built by a BFS that xors
// the color bit along tree edges; the coloring is accepted iff every
// non-tree edge is consistent and labels are injective per component.

#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "precolor/hypercube.hpp"

namespace precolor {

struct EdgeColoredGraph {
  struct E {
    int u = 0, v = 0;
    int color = 0;  // 1..d
  };
  int n = 0;
  std::vector<E> edges;
};

// Returns vertex labels (one mask per vertex) realizing g inside Q_d, or
// nullopt when no such placement exists.  Labels are injective within each
// connected component; each component's BFS root gets label 0.
// Throws if the coloring is out of range or not proper.
inline std::optional<std::vector<Vertex>> embed_into_hypercube(const EdgeColoredGraph& g, int d) {
  check_dimension(d);
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, color)
  std::vector<std::vector<int>> at(g.n);                   // colors seen per vertex
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n || e.u == e.v)
      throw std::invalid_argument("bad edge endpoints");
    if (e.color < 1 || e.color > d) throw std::invalid_argument("edge color out of range 1..d");
    adj[e.u].push_back({e.v, e.color});
    adj[e.v].push_back({e.u, e.color});
    at[e.u].push_back(e.color);
    at[e.v].push_back(e.color);
  }
  for (int v = 0; v < g.n; ++v) {
    Vertex seen = 0;
    for (int c : at[v]) {
      if (seen & bit(c - 1)) throw std::invalid_argument("input coloring is not proper");
      seen |= bit(c - 1);
    }
  }

  std::vector<Vertex> label(g.n, 0);
  std::vector<int> state(g.n, 0);  // 0 unvisited, 1 in current component
  for (int root = 0; root < g.n; ++root) {
    if (state[root] != 0) continue;
    std::unordered_set<Vertex> used;
    std::queue<int> q;
    state[root] = 1;
    label[root] = 0;
    used.insert(0);
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [v, c] : adj[u]) {
        Vertex want = label[u] ^ bit(c - 1);
        if (state[v] == 0) {
          state[v] = 1;
          label[v] = want;
          if (!used.insert(want).second) return std::nullopt;  // duplicate label
          q.push(v);
        } else if (label[v] != want) {
          return std::nullopt;  // some color appears an odd number of times on this cycle
        }
      }
    }
  }
  return label;
}

}  // namespace precolor

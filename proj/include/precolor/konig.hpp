#pragma once

// Optimal edge coloring of bipartite multigraphs with max-degree many
// colors: complete the graph to a Delta-regular multigraph with dummy
// vertices and parallel edges, then peel one perfect matching per color.
// Deterministic for a fixed input edge order.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/solver.hpp"

namespace precolor {

namespace detail {

// Kuhn's augmenting-path matching on an adjacency-list multigraph.
struct Matcher {
  const std::vector<std::vector<std::pair<int, int>>>& adj;  // (to, edge id)
  const std::vector<char>& gone;                             // removed edges
  std::vector<int> match_vertex;  // partner vertex, -1 if free
  std::vector<int> match_edge;    // edge to partner
  std::vector<char> visited;

  explicit Matcher(const std::vector<std::vector<std::pair<int, int>>>& a,
                   const std::vector<char>& removed)
      : adj(a), gone(removed), match_vertex(a.size(), -1), match_edge(a.size(), -1),
        visited(a.size(), 0) {}

  bool augment(int u) {
    for (const auto& [v, id] : adj[u]) {
      if (gone[id] || visited[v]) continue;
      visited[v] = 1;
      if (match_vertex[v] < 0 || augment(match_vertex[v])) {
        match_vertex[v] = u;
        match_vertex[u] = v;
        match_edge[v] = id;
        match_edge[u] = id;
        return true;
      }
    }
    return false;
  }
};

}  // namespace detail

// Proper edge coloring using exactly max_degree(g) colors (1-based).
inline std::vector<int> konig_color(const BipartiteGraph& g) {
  int m = g.edge_count();
  std::vector<int> out(m, 0);
  if (m == 0) return out;
  int delta = g.max_degree();

  // Local mirror with both sides padded to equal size, then completed to a
  // delta-regular multigraph by pairing deficient vertices with dummy edges.
  std::vector<int> left, right;
  for (int v = 0; v < g.vertex_count(); ++v)
    (g.side(v) == 0 ? left : right).push_back(v);
  std::size_t half = std::max(left.size(), right.size());
  int n = static_cast<int>(2 * half);
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < left.size(); ++i) local[left[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < right.size(); ++i)
    local[right[i]] = static_cast<int>(half + i);

  std::vector<std::vector<std::pair<int, int>>> adj(n);
  std::vector<int> degree(n, 0);
  int next_id = 0;
  auto link = [&](int a, int b) {
    adj[a].push_back({b, next_id});
    adj[b].push_back({a, next_id});
    ++degree[a];
    ++degree[b];
    ++next_id;
  };
  for (int e = 0; e < m; ++e) {
    const auto& [u, v] = g.endpoints(e);
    link(local[u], local[v]);  // ids 0..m-1 are the real edges
  }
  int li = 0, ri = static_cast<int>(half);
  while (true) {
    while (li < static_cast<int>(half) && degree[li] >= delta) ++li;
    if (li >= static_cast<int>(half)) break;
    while (ri < n && degree[ri] >= delta) ++ri;
    if (ri >= n) throw std::logic_error("degree completion ran out of slots");
    link(li, ri);
  }

  std::vector<char> gone(next_id, 0);
  for (int c = 1; c <= delta; ++c) {
    detail::Matcher matcher(adj, gone);
    for (int u = 0; u < static_cast<int>(half); ++u) {
      std::fill(matcher.visited.begin(), matcher.visited.end(), 0);
      if (!matcher.augment(u))
        throw std::logic_error("regular multigraph without a perfect matching");
    }
    for (int u = 0; u < static_cast<int>(half); ++u) {
      int id = matcher.match_edge[u];
      gone[id] = 1;
      if (id < m) out[id] = c;
    }
  }
  return out;
}

enum class CompletionStatus { completed, not_completable, unknown };

struct CompletionResult {
  CompletionStatus status = CompletionStatus::unknown;
  std::vector<int> coloring;  // total when completed
  std::string route;          // "konig" or "solver"
  std::uint64_t nodes = 0;
};

// Completes a proper partial coloring to a total proper coloring within the
// palette 1..t.  Directly supported case: the uncolored subgraph has max
// degree at most t - s, where s counts distinct colors in the precoloring;
// it is then colored by konig_color with unused palette colors.  Anything
// else falls back to the exact solver.
inline CompletionResult complete_partial(const BipartiteGraph& g, const PartialColoring& pc,
                                         const SolveOptions& opts = {}) {
  check_budget(pc);
  if (!is_proper(g, pc)) throw std::invalid_argument("precoloring is not proper");
  int t = pc.budget;
  ColorSet used = pc.used_colors();
  ColorSet unused = ColorSet::full(t) - used;
  int uncolored_degree = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int du = 0;
    for (int e : g.incident(v)) du += (pc.color[e] == 0);
    uncolored_degree = std::max(uncolored_degree, du);
  }

  CompletionResult out;
  if (uncolored_degree <= unused.count()) {
    BipartiteGraph rest;
    for (int v = 0; v < g.vertex_count(); ++v) rest.add_vertex(g.side(v));
    std::vector<int> back;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (pc.color[e] != 0) continue;
      const auto& [u, v] = g.endpoints(e);
      rest.add_edge(u, v);
      back.push_back(e);
    }
    std::vector<int> sub = konig_color(rest);
    out.coloring = pc.color;
    for (std::size_t i = 0; i < back.size(); ++i)
      out.coloring[back[i]] = unused.nth(sub[i] - 1);
    out.status = CompletionStatus::completed;
    out.route = "konig";
    return out;
  }

  Instance inst;
  inst.kind = GraphKind::bipartite;
  inst.graph = g;
  inst.pc = pc;
  ExtendResult r = is_extendable(inst, opts);
  out.nodes = r.nodes;
  out.route = "solver";
  switch (r.status) {
    case ExtendStatus::extendable:
      out.status = CompletionStatus::completed;
      out.coloring = r.coloring;
      break;
    case ExtendStatus::not_extendable:
      out.status = CompletionStatus::not_completable;
      break;
    case ExtendStatus::unknown:
      out.status = CompletionStatus::unknown;
      break;
  }
  return out;
}

}  // namespace precolor

#pragma once

// Independent brute-force reference implementations for tests.  These stay
// deliberately primitive: fixed edge order, no remaining-color heuristics,
// no symmetry pruning, adjacency re-scanned on every assignment.

#include <cstdint>
#include <vector>

#include "precolor/coloring.hpp"

namespace testsupport {

inline bool naive_color_ok(const precolor::BipartiteGraph& g, const std::vector<int>& color,
                           int e, int c) {
  const auto& [u, v] = g.endpoints(e);
  for (int other : g.incident(u))
    if (other != e && color[other] == c) return false;
  for (int other : g.incident(v))
    if (other != e && color[other] == c) return false;
  return true;
}

inline bool naive_extend_rec(const precolor::BipartiteGraph& g, std::vector<int>& color, int t,
                             std::size_t at) {
  while (at < color.size() && color[at] != 0) ++at;
  if (at == color.size()) return true;
  for (int c = 1; c <= t; ++c) {
    if (!naive_color_ok(g, color, static_cast<int>(at), c)) continue;
    color[at] = c;
    if (naive_extend_rec(g, color, t, at + 1)) return true;
    color[at] = 0;
  }
  return false;
}

inline bool naive_extendable(const precolor::BipartiteGraph& g,
                             const precolor::PartialColoring& pc) {
  std::vector<int> color = pc.color;
  return naive_extend_rec(g, color, pc.budget, 0);
}

inline void naive_count_rec(const precolor::BipartiteGraph& g, std::vector<int>& color, int t,
                            std::size_t at, unsigned long long& n) {
  while (at < color.size() && color[at] != 0) ++at;
  if (at == color.size()) {
    ++n;
    return;
  }
  for (int c = 1; c <= t; ++c) {
    if (!naive_color_ok(g, color, static_cast<int>(at), c)) continue;
    color[at] = c;
    naive_count_rec(g, color, t, at + 1, n);
    color[at] = 0;
  }
}

inline unsigned long long naive_count(const precolor::BipartiteGraph& g,
                                      const precolor::PartialColoring& pc) {
  std::vector<int> color = pc.color;
  unsigned long long n = 0;
  naive_count_rec(g, color, pc.budget, 0, n);
  return n;
}

inline bool naive_list_rec(const precolor::BipartiteGraph& g,
                           const std::vector<precolor::ColorSet>& lists, std::vector<int>& color,
                           std::size_t at) {
  if (at == color.size()) return true;
  for (int c : lists[at].to_vector()) {
    if (!naive_color_ok(g, color, static_cast<int>(at), c)) continue;
    color[at] = c;
    if (naive_list_rec(g, lists, color, at + 1)) return true;
    color[at] = 0;
  }
  return false;
}

inline bool naive_list_colorable(const precolor::BipartiteGraph& g,
                                 const std::vector<precolor::ColorSet>& lists) {
  std::vector<int> color(g.edge_count(), 0);
  return naive_list_rec(g, lists, color, 0);
}

// Small deterministic generator for test inputs.
struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed ? seed : 1) {}
  std::uint64_t operator()() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return (*this)() % n; }
};

// Union of k random permutation matchings on s+s vertices.
inline precolor::BipartiteGraph random_regular_multigraph(int s, int k, TestRng& rng) {
  precolor::BipartiteGraph g;
  for (int i = 0; i < s; ++i) g.add_vertex(0);
  for (int i = 0; i < s; ++i) g.add_vertex(1);
  std::vector<int> perm(s);
  for (int round = 0; round < k; ++round) {
    for (int i = 0; i < s; ++i) perm[i] = i;
    for (int i = s - 1; i > 0; --i) {
      int j = static_cast<int>(rng.below(i + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < s; ++i) g.add_edge(i, s + perm[i]);
  }
  return g;
}

}  // namespace testsupport

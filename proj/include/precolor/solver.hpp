#pragma once

// Exact decision procedure for partial edge coloring extension, plus exact
// extension counting and instance enumeration.  The search is complete
// backtracking over uncolored edges with a fewest-remaining-colors pick and
// (in decision mode only) first-use ordering of colors that do not appear in
// the precoloring.  A node cap turns the answer into "unknown" instead of
// silently degrading.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/hypercube.hpp"

namespace precolor {

enum class GraphKind { hypercube, bipartite, knn_power };

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::hypercube: return "hypercube";
    case GraphKind::bipartite: return "bipartite";
    case GraphKind::knn_power: return "knn_power";
  }
  return "?";
}

// A solvable unit: a bipartite multigraph, a partial coloring of its edges
// and the palette budget.  Hypercube and power instances keep their shape
// parameters for serialization and shape-aware algorithms.
struct Instance {
  GraphKind kind = GraphKind::bipartite;
  int dim = 0;    // hypercube dimension when kind == hypercube
  int knn_n = 0;  // K_{n,n} power parameters when kind == knn_power
  int knn_d = 0;
  BipartiteGraph graph;
  PartialColoring pc;
};

inline Instance make_hypercube_instance(int d, int budget) {
  check_dimension(d);
  Instance inst;
  inst.kind = GraphKind::hypercube;
  inst.dim = d;
  inst.graph = make_hypercube_graph(d);
  inst.pc = PartialColoring(edge_count(d), budget);
  return inst;
}

inline Instance make_bipartite_instance(BipartiteGraph g, int budget) {
  Instance inst;
  inst.kind = GraphKind::bipartite;
  std::size_t m = static_cast<std::size_t>(g.edge_count());
  inst.graph = std::move(g);
  inst.pc = PartialColoring(m, budget);
  return inst;
}

inline Instance make_knn_power_instance(int n, int d, int budget) {
  Instance inst;
  inst.kind = GraphKind::knn_power;
  inst.knn_n = n;
  inst.knn_d = d;
  inst.graph = make_knn_power_graph(n, d);
  inst.pc = PartialColoring(inst.graph.edge_count(), budget);
  return inst;
}

// Sets the color of the hypercube edge (u, v) in an instance's precoloring.
inline void set_cube_color(Instance& inst, Vertex u, Vertex v, int c) {
  if (inst.kind != GraphKind::hypercube)
    throw std::invalid_argument("set_cube_color requires a hypercube instance");
  inst.pc.color.at(edge_index(inst.dim, make_edge(u, v))) = c;
}

inline void validate_instance(const Instance& inst) {
  check_budget(inst.pc);
  if (static_cast<int>(inst.pc.color.size()) != inst.graph.edge_count())
    throw std::invalid_argument("coloring size does not match edge count");
  if (!is_proper(inst.graph, inst.pc))
    throw std::invalid_argument("precoloring is not proper");
}

enum class ExtendStatus { extendable, not_extendable, unknown };

inline const char* to_string(ExtendStatus s) {
  switch (s) {
    case ExtendStatus::extendable: return "extendable";
    case ExtendStatus::not_extendable: return "not_extendable";
    case ExtendStatus::unknown: return "unknown";
  }
  return "?";
}

struct ExtendResult {
  ExtendStatus status = ExtendStatus::unknown;
  std::vector<int> coloring;  // total proper coloring when extendable
  std::uint64_t nodes = 0;
};

struct CountResult {
  unsigned long long count = 0;
  bool exact = false;
  std::uint64_t nodes = 0;
};

inline std::uint64_t default_node_cap() {
  if (const char* s = std::getenv("PRECOLOR_NODE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 20'000'000;
}

struct SolveOptions {
  std::uint64_t node_cap = default_node_cap();
};

namespace detail {

struct Searcher {
  const BipartiteGraph& g;
  int t;
  std::uint64_t cap;
  bool counting;

  std::vector<int> color;
  std::vector<std::uint64_t> used;  // per-vertex mask of incident colors
  std::vector<int> open;            // uncolored edge ids
  std::uint64_t full;
  std::uint64_t nodes = 0;
  bool aborted = false;
  unsigned long long count = 0;
  bool found = false;

  // Colors absent from the precoloring may only enter the search in fixed
  // ascending order; this prunes palette symmetry without losing exactness.
  std::vector<int> fresh;
  std::uint64_t stale_mask = 0;  // colors appearing in the precoloring
  int fresh_used = 0;

  Searcher(const BipartiteGraph& graph, const PartialColoring& pc, std::uint64_t node_cap,
           bool count_mode)
      : g(graph), t(pc.budget), cap(node_cap), counting(count_mode), color(pc.color) {
    used.assign(g.vertex_count(), 0);
    full = ColorSet::full(t).bits();
    for (int e = 0; e < g.edge_count(); ++e) {
      int c = color[e];
      if (c == 0) {
        open.push_back(e);
      } else {
        std::uint64_t b = std::uint64_t{1} << (c - 1);
        stale_mask |= b;
        const auto& [u, v] = g.endpoints(e);
        used[u] |= b;
        used[v] |= b;
      }
    }
    for (int c = 1; c <= t; ++c)
      if (!(stale_mask & (std::uint64_t{1} << (c - 1)))) fresh.push_back(c);
  }

  std::uint64_t avail(int e) const {
    const auto& [u, v] = g.endpoints(e);
    return full & ~(used[u] | used[v]);
  }

  // In decision mode, restrict to precoloring colors plus the next unused
  // fresh color.
  std::uint64_t allowed(int e) const {
    std::uint64_t a = avail(e);
    if (counting) return a;
    std::uint64_t m = stale_mask;
    for (int i = 0; i < fresh_used; ++i) m |= std::uint64_t{1} << (fresh[i] - 1);
    if (fresh_used < static_cast<int>(fresh.size()))
      m |= std::uint64_t{1} << (fresh[fresh_used] - 1);
    return a & m;
  }

  bool dfs() {
    if (++nodes > cap) {
      aborted = true;
      return false;
    }
    if (open.empty()) {
      if (counting) {
        ++count;
        return false;  // keep enumerating
      }
      found = true;
      return true;
    }
    // Fewest-remaining-colors pick, ties by edge id.
    int best_pos = -1;
    int best_n = t + 1;
    for (int i = 0; i < static_cast<int>(open.size()); ++i) {
      int n = std::popcount(allowed(open[i]));
      if (n < best_n || (n == best_n && (best_pos < 0 || open[i] < open[best_pos]))) {
        best_n = n;
        best_pos = i;
      }
      if (n == 0) break;
    }
    if (best_n == 0) return false;
    int e = open[best_pos];
    std::swap(open[best_pos], open.back());
    open.pop_back();
    const auto& [u, v] = g.endpoints(e);
    std::uint64_t options = allowed(e);
    for (std::uint64_t b = options; b != 0; b &= b - 1) {
      std::uint64_t lowbit = b & -b;
      int c = std::countr_zero(lowbit) + 1;
      bool new_fresh = !counting && fresh_used < static_cast<int>(fresh.size()) &&
                       c == fresh[fresh_used];
      color[e] = c;
      used[u] |= lowbit;
      used[v] |= lowbit;
      if (new_fresh) ++fresh_used;
      if (dfs()) return true;
      if (new_fresh) --fresh_used;
      used[u] &= ~lowbit;
      used[v] &= ~lowbit;
      color[e] = 0;
      if (aborted) return false;
    }
    open.push_back(e);
    std::swap(open[best_pos], open.back());
    return false;
  }
};

}  // namespace detail

inline ExtendResult is_extendable(const Instance& inst, const SolveOptions& opts = {}) {
  validate_instance(inst);
  detail::Searcher s(inst.graph, inst.pc, opts.node_cap, /*count_mode=*/false);
  s.dfs();
  ExtendResult out;
  out.nodes = s.nodes;
  if (s.found) {
    out.status = ExtendStatus::extendable;
    out.coloring = s.color;
  } else if (s.aborted) {
    out.status = ExtendStatus::unknown;
  } else {
    out.status = ExtendStatus::not_extendable;
  }
  return out;
}

// Exact number of total proper colorings agreeing with the precoloring.  No
// symmetry pruning: colorings differing only by palette relabeling are
// counted separately.
inline CountResult count_extensions(const Instance& inst, const SolveOptions& opts = {}) {
  validate_instance(inst);
  detail::Searcher s(inst.graph, inst.pc, opts.node_cap, /*count_mode=*/true);
  s.dfs();
  CountResult out;
  out.nodes = s.nodes;
  out.count = s.count;
  out.exact = !s.aborted;
  return out;
}

// Deterministic bounded draw from a 64-bit generator (avoids the
// implementation-defined std::uniform_int_distribution).
template <typename Rng>
std::uint64_t bounded_draw(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded_draw of zero");
  std::uint64_t reject = (~std::uint64_t{0} % n + 1) % n;  // 2^64 mod n
  std::uint64_t limit = ~std::uint64_t{0} - reject;
  for (;;) {
    std::uint64_t r = rng();
    if (r <= limit) return r % n;
  }
}

enum class EnumMode { exhaustive, random };

struct EnumOptions {
  int d = 2;
  int m = 1;
  int budget = 0;  // defaults to d
  EnumMode mode = EnumMode::exhaustive;
  std::uint64_t seed = 0;
  int samples = 0;  // random mode only
};

// Streams proper m-edge precolorings of Q_d with colors 1..budget in a
// deterministic order.  Exhaustive mode is capped at desk scale; random mode
// rejection-samples proper instances from the given seed.
inline void enumerate_precolorings(const EnumOptions& opts,
                                   const std::function<void(const Instance&)>& emit) {
  check_dimension(opts.d);
  int t = opts.budget == 0 ? opts.d : opts.budget;
  int m = opts.m;
  std::size_t edges = edge_count(opts.d);
  if (m < 0 || static_cast<std::size_t>(m) > edges)
    throw std::invalid_argument("edge count out of range");
  Instance inst = make_hypercube_instance(opts.d, t);

  if (opts.mode == EnumMode::exhaustive) {
    if (opts.d > 4 || m > opts.d)
      throw std::invalid_argument("exhaustive enumeration capped at d <= 4, m <= d");
    if (m == 0) {
      emit(inst);
      return;
    }
    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i) pick[i] = i;
    std::vector<int> colors(m, 1);
    for (;;) {
      // All color tuples for the current edge subset.
      std::fill(colors.begin(), colors.end(), 1);
      for (;;) {
        for (int i = 0; i < m; ++i) inst.pc.color[pick[i]] = colors[i];
        if (is_proper(inst.graph, inst.pc)) emit(inst);
        int j = m - 1;
        while (j >= 0 && colors[j] == t) --j;
        if (j < 0) break;
        ++colors[j];
        for (int i = j + 1; i < m; ++i) colors[i] = 1;
      }
      for (int i = 0; i < m; ++i) inst.pc.color[pick[i]] = 0;
      // Next m-subset in lexicographic order.
      int j = m - 1;
      while (j >= 0 && pick[j] == static_cast<int>(edges) - m + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int i = j + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
    }
    return;
  }

  if (opts.samples <= 0) throw std::invalid_argument("random mode needs samples > 0");
  std::uint64_t state = opts.seed ? opts.seed : 0x9e3779b97f4a7c15ULL;
  auto rng = [&state]() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::vector<int> ids(edges);
  for (std::size_t i = 0; i < edges; ++i) ids[i] = static_cast<int>(i);
  int produced = 0;
  while (produced < opts.samples) {
    std::fill(inst.pc.color.begin(), inst.pc.color.end(), 0);
    for (int i = 0; i < m; ++i) {
      std::size_t j = i + bounded_draw(rng, edges - i);
      std::swap(ids[i], ids[j]);
      inst.pc.color[ids[i]] = 1 + static_cast<int>(bounded_draw(rng, t));
    }
    if (!is_proper(inst.graph, inst.pc)) continue;
    emit(inst);
    ++produced;
  }
}

}  // namespace precolor

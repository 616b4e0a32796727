#pragma once

// Instance families with known extension behavior: minimal non-extendable
// precolorings of Q_d, d-regular bipartite graphs where two precolored edges
// already block extension, and random instances on powers of K_{n,n}.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/hypercube.hpp"
#include "precolor/solver.hpp"

namespace precolor {

// d precolored edges of Q_d (d even) crowding one uncolored edge: inside a
// (d/2+1)-subcube, the other d/2 edges at u get colors 1..d/2 and the other
// d/2 edges at v get d/2+1..d, so edge uv can never be colored.
inline Instance saturated_edge_instance(int d) {
  check_dimension(d);
  if (d % 2 != 0) throw std::invalid_argument("saturated edge family needs even d");
  Instance inst = make_hypercube_instance(d, d);
  int h = d / 2;
  for (int i = 1; i <= h; ++i) {
    set_cube_color(inst, 0, bit(i), i);            // at u = 0...0
    set_cube_color(inst, 1, 1 ^ bit(i), h + i);    // at v = 0...01
  }
  return inst;
}

// A maximum induced matching inside dimensional matching 0 (bases whose
// upper bits have even parity), all colored 1, plus one further dim-0 edge
// colored 2.  Color 1 then forces a full dimensional matching, which the
// color-2 edge breaks.
inline Instance spoiled_matching_instance(int d) {
  check_dimension(d);
  if (d < 3) throw std::invalid_argument("spoiled matching family needs d >= 3");
  Instance inst = make_hypercube_instance(d, d);
  for (Vertex z = 0; z < (Vertex{1} << (d - 1)); ++z)
    if (std::popcount(z) % 2 == 0) set_cube_color(inst, z << 1, (z << 1) | 1, 1);
  set_cube_color(inst, 0b10, 0b11, 2);
  return inst;
}

namespace detail {

struct ChainParts {
  Instance inst;
  std::vector<int> bridge;                         // edge id of x_i -> y_{i+1}
  std::vector<std::vector<std::vector<int>>> xy;   // xy[i][a][b] internal edge ids, -1 if removed
};

// r copies of K_{d,d} minus an edge, bridged cyclically between the two
// deficient vertices of consecutive copies; every vertex has degree d.
inline ChainParts build_chain(int d, int r) {
  if (d < 2) throw std::invalid_argument("chain needs d >= 2");
  if (r < 2) throw std::invalid_argument("chain needs r >= 2");
  BipartiteGraph g;
  std::vector<std::vector<int>> xs(r, std::vector<int>(d)), ys(r, std::vector<int>(d));
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < d; ++a) {
      xs[i][a] = g.add_vertex(0);
      ys[i][a] = g.add_vertex(1);
    }
  ChainParts parts;
  parts.xy.assign(r, std::vector<std::vector<int>>(d, std::vector<int>(d, -1)));
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;  // the removed edge; x_i, y_i stay deficient
        parts.xy[i][a][b] = g.add_edge(xs[i][a], ys[i][b]);
      }
  parts.bridge.resize(r);
  for (int i = 0; i < r; ++i)
    parts.bridge[i] = g.add_edge(xs[i][0], ys[(i + 1) % r][0]);
  parts.inst = make_bipartite_instance(std::move(g), d);
  return parts;
}

}  // namespace detail

// Two bridge edges of the chain colored 1 and 2.  Any proper d-coloring
// forces every bridge to carry the same color, so this cannot extend.
inline Instance chain_instance(int d, int r) {
  detail::ChainParts parts = detail::build_chain(d, r);
  parts.inst.pc.color[parts.bridge[0]] = 1;
  parts.inst.pc.color[parts.bridge[1]] = 2;
  return parts.inst;
}

// Two edges colored 1: one bridge, plus an internal edge at a deficient
// vertex of a far-away copy.  The bridge forces color class 1 to avoid every
// deficient vertex inside the copies, which the second edge violates.
inline Instance chain_mono_instance(int d, int r) {
  detail::ChainParts parts = detail::build_chain(d, r);
  int j = std::max(1, r / 2);
  parts.inst.pc.color[parts.bridge[0]] = 1;
  parts.inst.pc.color[parts.xy[j][0][1]] = 1;
  return parts.inst;
}

// Two copies of K_{n,n-1} joined by a matching on their degree-(n-1) sides,
// with two of the matching edges colored 1.  In any proper n-coloring the
// matching colors are a bijection onto 1..n, so a repeat is fatal.  The
// graph is n-regular and (n-1)-connected.
inline Instance doubling_instance(int n) {
  if (n < 2) throw std::invalid_argument("doubling needs n >= 2");
  BipartiteGraph g;
  std::vector<int> x1(n), y1(n - 1), x2(n), y2(n - 1);
  for (int i = 0; i < n; ++i) x1[i] = g.add_vertex(0);
  for (int i = 0; i < n - 1; ++i) y1[i] = g.add_vertex(1);
  for (int i = 0; i < n; ++i) x2[i] = g.add_vertex(1);
  for (int i = 0; i < n - 1; ++i) y2[i] = g.add_vertex(0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n - 1; ++b) {
      g.add_edge(x1[a], y1[b]);
      g.add_edge(x2[a], y2[b]);
    }
  std::vector<int> cross(n);
  for (int k = 0; k < n; ++k) cross[k] = g.add_edge(x1[k], x2[k]);
  Instance inst = make_bipartite_instance(std::move(g), n);
  inst.pc.color[cross[0]] = 1;
  inst.pc.color[cross[1]] = 1;
  return inst;
}

// Random proper precoloring of m edges of (K_{n,n})^d with colors 1..nd.
// m < 0 selects the extremal nd-1.  Deterministic in the seed.
inline Instance random_knn_power_instance(int n, int d, int m, std::uint64_t seed) {
  Instance inst = make_knn_power_instance(n, d, n * d);
  std::size_t edges = static_cast<std::size_t>(inst.graph.edge_count());
  if (m < 0) m = n * d - 1;
  if (static_cast<std::size_t>(m) > edges)
    throw std::invalid_argument("more precolored edges than the graph has");
  std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
  auto rng = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::vector<int> ids(edges);
  for (std::size_t i = 0; i < edges; ++i) ids[i] = static_cast<int>(i);
  for (;;) {
    std::fill(inst.pc.color.begin(), inst.pc.color.end(), 0);
    for (int i = 0; i < m; ++i) {
      std::size_t j = i + bounded_draw(rng, edges - i);
      std::swap(ids[i], ids[j]);
      inst.pc.color[ids[i]] = 1 + static_cast<int>(bounded_draw(rng, n * d));
    }
    if (is_proper(inst.graph, inst.pc)) return inst;
  }
}

}  // namespace precolor

#pragma once

// Edge colorings of bipartite multigraphs.  Colors are 1-based ints; color 0
// means "uncolored".  ColorSet packs colors 1..64 into a word.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "precolor/hypercube.hpp"

namespace precolor {

inline constexpr int max_color = 64;

class ColorSet {
 public:
  ColorSet() = default;
  explicit ColorSet(std::uint64_t bits) : bits_(bits) {}

  static ColorSet full(int t) {
    return ColorSet(t >= max_color ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1);
  }

  void add(int c) { bits_ |= word(c); }
  void remove(int c) { bits_ &= ~word(c); }
  bool contains(int c) const { return c >= 1 && c <= max_color && (bits_ & word(c)); }
  int count() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  // Smallest member, or 0 if empty.
  int lowest() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  // j-th smallest member (0-based); 0 if out of range.
  int nth(int j) const {
    std::uint64_t b = bits_;
    while (j > 0 && b != 0) {
      b &= b - 1;
      --j;
    }
    return b == 0 ? 0 : std::countr_zero(b) + 1;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  friend ColorSet operator|(ColorSet a, ColorSet b) { return ColorSet(a.bits_ | b.bits_); }
  friend ColorSet operator&(ColorSet a, ColorSet b) { return ColorSet(a.bits_ & b.bits_); }
  friend ColorSet operator-(ColorSet a, ColorSet b) { return ColorSet(a.bits_ & ~b.bits_); }
  friend bool operator==(const ColorSet&, const ColorSet&) = default;

 private:
  static std::uint64_t word(int c) {
    if (c < 1 || c > max_color) throw std::invalid_argument("color out of range");
    return std::uint64_t{1} << (c - 1);
  }
  std::uint64_t bits_ = 0;
};

// Bipartite multigraph.  Vertices carry a side (0 or 1); edges are stored in
// insertion order and referenced everywhere by index.
class BipartiteGraph {
 public:
  int add_vertex(int side) {
    if (side != 0 && side != 1) throw std::invalid_argument("side must be 0 or 1");
    side_.push_back(static_cast<std::uint8_t>(side));
    incident_.emplace_back();
    return static_cast<int>(side_.size()) - 1;
  }

  int add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (side_[u] == side_[v]) throw std::invalid_argument("edge endpoints on the same side");
    if (side_[u] == 1) std::swap(u, v);
    int id = static_cast<int>(edges_.size());
    edges_.emplace_back(u, v);
    incident_[u].push_back(id);
    incident_[v].push_back(id);
    return id;
  }

  int vertex_count() const { return static_cast<int>(side_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int side(int v) const {
    check_vertex(v);
    return side_[v];
  }
  const std::pair<int, int>& endpoints(int e) const { return edges_.at(e); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const {
    check_vertex(v);
    return incident_[v];
  }
  int degree(int v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const {
    int m = 0;
    for (int v = 0; v < vertex_count(); ++v) m = std::max(m, degree(v));
    return m;
  }
  int other_end(int e, int v) const {
    const auto& [x, y] = endpoints(e);
    if (v == x) return y;
    if (v == y) return x;
    throw std::invalid_argument("vertex not on edge");
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::invalid_argument("vertex id out of range");
  }
  std::vector<std::uint8_t> side_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> incident_;
};

// Partial edge coloring over a graph's edge ids.  budget is the number of
// admissible colors (palette 1..budget).
struct PartialColoring {
  std::vector<int> color;
  int budget = 0;

  PartialColoring() = default;
  PartialColoring(std::size_t edges, int t) : color(edges, 0), budget(t) {}

  int colored_count() const {
    int n = 0;
    for (int c : color) n += (c != 0);
    return n;
  }
  bool is_total() const {
    for (int c : color)
      if (c == 0) return false;
    return true;
  }
  ColorSet used_colors() const {
    ColorSet s;
    for (int c : color)
      if (c != 0) s.add(c);
    return s;
  }
};

inline void check_budget(const PartialColoring& pc) {
  if (pc.budget < 1 || pc.budget > max_color)
    throw std::invalid_argument("budget out of range");
  for (int c : pc.color)
    if (c < 0 || c > pc.budget)
      throw std::invalid_argument("edge color outside palette 1..t");
}

// True iff no two edges sharing a vertex carry the same nonzero color.
inline bool is_proper(const BipartiteGraph& g, const PartialColoring& pc) {
  if (static_cast<int>(pc.color.size()) != g.edge_count())
    throw std::invalid_argument("coloring size does not match edge count");
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::uint64_t seen = 0;
    for (int e : g.incident(v)) {
      int c = pc.color[e];
      if (c == 0) continue;
      std::uint64_t b = std::uint64_t{1} << (c - 1);
      if (seen & b) return false;
      seen |= b;
    }
  }
  return true;
}

// Colors present at vertex v.
inline ColorSet colors_at(const BipartiteGraph& g, const PartialColoring& pc, int v) {
  ColorSet s;
  for (int e : g.incident(v)) {
    if (pc.color[e] != 0) s.add(pc.color[e]);
  }
  return s;
}

// Colors present at a hypercube vertex, straight off the edge-indexed color
// vector (no graph object needed).
inline ColorSet cube_colors_at(int d, const std::vector<int>& color, Vertex v) {
  ColorSet s;
  for (int j = 0; j < d; ++j) {
    int c = color[edge_index(d, make_edge(v, v ^ bit(j)))];
    if (c != 0) s.add(c);
  }
  return s;
}

// Properness of a (partial) hypercube edge coloring without building a graph.
inline bool is_proper_cube(int d, const std::vector<int>& color) {
  if (color.size() != edge_count(d))
    throw std::invalid_argument("coloring size does not match Q_d edge count");
  for (Vertex v = 0; v < vertex_count(d); ++v) {
    std::uint64_t seen = 0;
    for (int j = 0; j < d; ++j) {
      int c = color[edge_index(d, make_edge(v, v ^ bit(j)))];
      if (c == 0) continue;
      std::uint64_t b = std::uint64_t{1} << (c - 1);
      if (seen & b) return false;
      seen |= b;
    }
  }
  return true;
}

// Total proper d-coloring of Q_d agreeing with pc everywhere pc is set.
inline bool is_cube_extension(int d, const PartialColoring& pc, const std::vector<int>& f) {
  if (pc.color.size() != edge_count(d) || f.size() != edge_count(d)) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 1 || f[i] > d) return false;
    if (pc.color[i] != 0 && pc.color[i] != f[i]) return false;
  }
  return is_proper_cube(d, f);
}

// Total proper coloring of g within pc's budget agreeing with pc everywhere
// pc is set.
inline bool is_proper_extension(const BipartiteGraph& g, const PartialColoring& pc,
                                const std::vector<int>& f) {
  if (pc.color.size() != f.size()) return false;
  if (static_cast<int>(f.size()) != g.edge_count()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 1 || f[i] > pc.budget) return false;
    if (pc.color[i] != 0 && pc.color[i] != f[i]) return false;
  }
  PartialColoring total(f.size(), pc.budget);
  total.color = f;
  return is_proper(g, total);
}

// Q_d as a bipartite graph: vertex ids are the masks, sides by parity, edge
// ids equal edge_index order.
inline BipartiteGraph make_hypercube_graph(int d) {
  check_dimension(d);
  BipartiteGraph g;
  for (Vertex v = 0; v < vertex_count(d); ++v)
    g.add_vertex(std::popcount(v) & 1);
  for (const Edge& e : all_edges(d))
    g.add_edge(static_cast<int>(e.lo()), static_cast<int>(e.hi()));
  return g;
}

// Complete bipartite K_{a,b}: left ids 0..a-1, right ids a..a+b-1, edges in
// row-major order.
inline BipartiteGraph make_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("part sizes must be positive");
  BipartiteGraph g;
  for (int i = 0; i < a; ++i) g.add_vertex(0);
  for (int j = 0; j < b; ++j) g.add_vertex(1);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

inline constexpr int max_power_vertices = 64;

// d-fold Cartesian power of K_{n,n}.  Vertices are base-2n digit strings
// (least significant digit = coordinate 0); two vertices are adjacent iff
// they differ in one coordinate and the differing digits lie on opposite
// sides (digit < n vs digit >= n).  Edges in ascending (u, v) order.
inline BipartiteGraph make_knn_power_graph(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
  long long total = 1;
  for (int i = 0; i < d; ++i) {
    total *= 2 * n;
    if (total > max_power_vertices)
      throw std::invalid_argument("power graph exceeds 64 vertices");
  }
  int nv = static_cast<int>(total);
  auto digit = [&](int v, int pos) {
    for (int i = 0; i < pos; ++i) v /= 2 * n;
    return v % (2 * n);
  };
  BipartiteGraph g;
  for (int v = 0; v < nv; ++v) {
    int odd = 0;
    for (int p = 0; p < d; ++p) odd ^= (digit(v, p) >= n);
    g.add_vertex(odd);
  }
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v) {
      int diff_pos = -1;
      bool ok = true;
      for (int p = 0; p < d && ok; ++p) {
        int du = digit(u, p), dv = digit(v, p);
        if (du == dv) continue;
        if (diff_pos >= 0) {
          ok = false;
        } else {
          diff_pos = p;
          ok = (du < n) != (dv < n);
        }
      }
      if (ok && diff_pos >= 0) g.add_edge(u, v);
    }
  return g;
}

}  // namespace precolor

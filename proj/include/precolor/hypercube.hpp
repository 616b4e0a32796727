#pragma once

// Core types for the hypercube Q_d: vertices are d-bit masks, edges flip a
// single bit, subcubes are (base, free-dimension-set) pairs.  Everything is
// a small value type; d is capped at max_dimension so masks fit in 32 bits.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace precolor {

using Vertex = std::uint32_t;

inline constexpr int max_dimension = 20;

inline constexpr Vertex bit(int i) { return Vertex{1} << i; }

inline void check_dimension(int d) {
  if (d < 1 || d > max_dimension)
    throw std::invalid_argument("dimension out of range: " + std::to_string(d));
}

inline Vertex vertex_count(int d) { return Vertex{1} << d; }

// Removes bit `dim` from `v`, shifting higher bits down.
inline Vertex squeeze_bit(Vertex v, int dim) {
  Vertex low = v & (bit(dim) - 1);
  return ((v >> (dim + 1)) << dim) | low;
}

// Inverse of squeeze_bit with the inserted bit cleared.
inline Vertex unsqueeze_bit(Vertex v, int dim) {
  Vertex low = v & (bit(dim) - 1);
  return ((v >> dim) << (dim + 1)) | low;
}

// Gathers the bits of v selected by mask into a compact value.
inline Vertex project_onto(Vertex v, Vertex mask) {
  Vertex out = 0;
  int j = 0;
  for (Vertex m = mask; m != 0; m &= m - 1, ++j) {
    if (v & (m & -m)) out |= bit(j);
  }
  return out;
}

// Scatters the low bits of x onto the positions selected by mask.
inline Vertex spread_onto(Vertex x, Vertex mask) {
  Vertex out = 0;
  int j = 0;
  for (Vertex m = mask; m != 0; m &= m - 1, ++j) {
    if (x & bit(j)) out |= (m & -m);
  }
  return out;
}

inline std::vector<int> mask_to_dims(Vertex mask) {
  std::vector<int> dims;
  for (int i = 0; mask != 0; mask >>= 1, ++i)
    if (mask & 1) dims.push_back(i);
  return dims;
}

inline Vertex dims_to_mask(const std::vector<int>& dims) {
  Vertex m = 0;
  for (int i : dims) m |= bit(i);
  return m;
}

// Edge of Q_d in canonical form: `base` has bit `dim` cleared, the other
// endpoint is base ^ bit(dim).
struct Edge {
  Vertex base = 0;
  int dim = 0;

  Vertex lo() const { return base; }
  Vertex hi() const { return base ^ bit(dim); }
  Vertex other(Vertex v) const { return v ^ bit(dim); }
  bool touches(Vertex v) const { return v == lo() || v == hi(); }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex u, Vertex v) {
  Vertex diff = u ^ v;
  if (std::popcount(diff) != 1)
    throw std::invalid_argument("not a hypercube edge: endpoints differ in more than one bit");
  int dim = std::countr_zero(diff);
  return Edge{u & ~bit(dim), dim};
}

inline std::size_t edge_count(int d) {
  return d == 0 ? 0 : static_cast<std::size_t>(d) << (d - 1);
}

// Edges are indexed by (dim, squeezed base); this matches all_edges order.
inline int edge_index(int d, const Edge& e) {
  return e.dim * (1 << (d - 1)) + static_cast<int>(squeeze_bit(e.base, e.dim));
}

inline Edge edge_at(int d, int index) {
  int per_dim = 1 << (d - 1);
  int dim = index / per_dim;
  Vertex base = unsqueeze_bit(static_cast<Vertex>(index % per_dim), dim);
  return Edge{base, dim};
}

inline std::vector<Edge> all_edges(int d) {
  check_dimension(d);
  std::vector<Edge> out;
  out.reserve(edge_count(d));
  for (int dim = 0; dim < d; ++dim)
    for (Vertex x = 0; x < (Vertex{1} << (d - 1)); ++x)
      out.push_back(Edge{unsqueeze_bit(x, dim), dim});
  return out;
}

// All edges flipping bit j: a perfect matching of Q_d.
inline std::vector<Edge> dimensional_matching(int d, int j) {
  check_dimension(d);
  if (j < 0 || j >= d) throw std::invalid_argument("dimension index out of range");
  std::vector<Edge> out;
  out.reserve(std::size_t{1} << (d - 1));
  for (Vertex x = 0; x < (Vertex{1} << (d - 1)); ++x)
    out.push_back(Edge{unsqueeze_bit(x, j), j});
  return out;
}

// Subcube of Q_d: vertices {base ^ s : s subset of dims}; base has zero bits
// on all free dimensions.
struct Subcube {
  Vertex base = 0;
  Vertex dims = 0;

  int dimension() const { return std::popcount(dims); }
  std::size_t vertex_count() const { return std::size_t{1} << dimension(); }
  bool contains(Vertex v) const { return (v & ~dims) == base; }
  bool contains(const Edge& e) const {
    return (dims & bit(e.dim)) && contains(e.lo());
  }

  Vertex vertex_at(Vertex local) const { return base ^ spread_onto(local, dims); }
  Vertex to_local(Vertex v) const { return project_onto(v, dims); }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(vertex_count());
    for (Vertex x = 0; x < (Vertex{1} << dimension()); ++x) out.push_back(vertex_at(x));
    return out;
  }

  friend bool operator==(const Subcube&, const Subcube&) = default;
  friend auto operator<=>(const Subcube&, const Subcube&) = default;
};

inline Subcube make_subcube(Vertex base, Vertex dims) {
  return Subcube{base & ~dims, dims};
}

// Edges of the subcube in ambient coordinates, ordered like all_edges of the
// local cube (local dimension i = i-th lowest bit of dims).
inline std::vector<Edge> subcube_edges(const Subcube& c) {
  std::vector<Edge> out;
  int r = c.dimension();
  if (r == 0) return out;
  out.reserve(edge_count(r));
  std::vector<int> dims = mask_to_dims(c.dims);
  for (int i = 0; i < r; ++i)
    for (Vertex x = 0; x < (Vertex{1} << (r - 1)); ++x) {
      Vertex local = unsqueeze_bit(x, i);
      out.push_back(Edge{c.vertex_at(local), dims[i]});
    }
  return out;
}

// Maps a local edge of the r-cube to ambient coordinates.
inline Edge subcube_edge_to_ambient(const Subcube& c, const Edge& local) {
  std::vector<int> dims = mask_to_dims(c.dims);
  return Edge{c.vertex_at(local.base), dims[local.dim]};
}

// Components of the subgraph of Q_d induced by a set of dimensional
// matchings: 2^(d-r) pairwise disjoint subcubes with the given free set.
inline std::vector<Subcube> induced_by_dims(int d, Vertex dims) {
  check_dimension(d);
  if (dims >= vertex_count(d)) throw std::invalid_argument("dimension mask out of range");
  Vertex fixed = (vertex_count(d) - 1) & ~dims;
  std::vector<Subcube> out;
  out.reserve(std::size_t{1} << std::popcount(fixed));
  // Enumerate all submasks of `fixed` in increasing order.
  std::vector<int> fixed_dims = mask_to_dims(fixed);
  for (Vertex x = 0; x < (Vertex{1} << fixed_dims.size()); ++x)
    out.push_back(Subcube{spread_onto(x, fixed), dims});
  return out;
}

// Intersection of two subcubes; empty unless the bases agree outside both
// free sets.
inline std::optional<Subcube> subcube_intersection(const Subcube& a, const Subcube& b) {
  if (((a.base ^ b.base) & ~a.dims & ~b.dims) != 0) return std::nullopt;
  Vertex dims = a.dims & b.dims;
  Vertex base = (a.base | b.base) & ~dims;
  return Subcube{base, dims};
}

// Automorphism of Q_d: a permutation of the dimensions followed by a
// coordinate flip.  These 2^d * d! maps form the full symmetry group.
struct SignedPermutation {
  int d = 0;
  std::array<std::uint8_t, max_dimension> perm{};
  Vertex flip = 0;

  static SignedPermutation identity(int d) {
    SignedPermutation s;
    s.d = d;
    for (int i = 0; i < d; ++i) s.perm[i] = static_cast<std::uint8_t>(i);
    return s;
  }

  Vertex apply(Vertex v) const {
    Vertex out = 0;
    for (int i = 0; i < d; ++i)
      if (v & bit(i)) out |= bit(perm[i]);
    return out ^ flip;
  }

  Edge apply(const Edge& e) const {
    int nd = perm[e.dim];
    return Edge{apply(e.lo()) & ~bit(nd), nd};
  }

  // (a.then(b))(v) == b(a(v))
  SignedPermutation then(const SignedPermutation& b) const {
    SignedPermutation out;
    out.d = d;
    for (int i = 0; i < d; ++i) out.perm[i] = b.perm[perm[i]];
    out.flip = b.apply(flip);
    return out;
  }
};

inline constexpr int max_symmetry_dimension = 5;

// The full symmetry group of Q_d, enumerated deterministically.
inline std::vector<SignedPermutation> hypercube_symmetries(int d) {
  check_dimension(d);
  if (d > max_symmetry_dimension)
    throw std::invalid_argument("symmetry enumeration capped at d <= 5");
  std::vector<int> p(d);
  for (int i = 0; i < d; ++i) p[i] = i;
  std::vector<SignedPermutation> out;
  do {
    for (Vertex f = 0; f < vertex_count(d); ++f) {
      SignedPermutation s;
      s.d = d;
      for (int i = 0; i < d; ++i) s.perm[i] = static_cast<std::uint8_t>(p[i]);
      s.flip = f;
      out.push_back(s);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace precolor

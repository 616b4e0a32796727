#include <algorithm>
#include <map>
#include <set>

#include "catch2/catch_amalgamated.hpp"
#include "precolor/embed.hpp"
#include "precolor/hypercube.hpp"

using namespace precolor;

TEST_CASE("edge indexing round-trips and all_edges is sorted by (dim, base)") {
  for (int d = 1; d <= 6; ++d) {
    auto edges = all_edges(d);
    REQUIRE(edges.size() == edge_count(d));
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      REQUIRE((e.base & bit(e.dim)) == 0);
      REQUIRE(edge_index(d, e) == static_cast<int>(i));
      REQUIRE(edge_at(d, static_cast<int>(i)) == e);
      seen.insert({e.lo(), e.hi()});
    }
    REQUIRE(seen.size() == edges.size());
  }
}

TEST_CASE("make_edge normalizes endpoints in either order") {
  Edge e = make_edge(5, 7);  // 101 ^ 111 = 010
  REQUIRE(e.base == 5);
  REQUIRE(e.dim == 1);
  REQUIRE(make_edge(7, 5) == e);
  REQUIRE_THROWS_AS(make_edge(3, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(make_edge(4, 4), std::invalid_argument);
}

TEST_CASE("dimensional matchings partition the edge set") {
  for (int d = 2; d <= 8; ++d) {
    std::set<std::pair<Vertex, int>> all;
    for (int j = 0; j < d; ++j) {
      auto m = dimensional_matching(d, j);
      REQUIRE(m.size() == edge_count(d) / d);
      std::set<Vertex> covered;
      for (const Edge& e : m) {
        REQUIRE(e.dim == j);
        covered.insert(e.lo());
        covered.insert(e.hi());
        all.insert({e.base, e.dim});
      }
      REQUIRE(covered.size() == vertex_count(d));  // perfect matching
    }
    REQUIRE(all.size() == edge_count(d));
  }
}

TEST_CASE("induced_by_dims yields disjoint parallel subcubes") {
  for (int d = 2; d <= 6; ++d) {
    for (Vertex dims : {Vertex{1}, Vertex{3}, Vertex(vertex_count(d) - 2)}) {
      if (dims >= vertex_count(d)) continue;
      auto blocks = induced_by_dims(d, dims);
      int r = std::popcount(dims);
      REQUIRE(blocks.size() == (std::size_t{1} << (d - r)));
      std::set<Vertex> covered;
      for (const Subcube& b : blocks) {
        REQUIRE(b.dims == dims);
        REQUIRE((b.base & dims) == 0);
        for (Vertex v : b.vertices()) covered.insert(v);
      }
      REQUIRE(covered.size() == vertex_count(d));
    }
  }
}

TEST_CASE("each induced block re-indexes to a hypercube of its own order") {
  // Every block, re-labeled through its local coordinates, is a copy of
  // Q_r: realized by checking the dimension-colored edge list embeds.
  for (int d = 2; d <= 6; ++d) {
    Vertex dims = (d >= 4) ? Vertex{0b1011} : Vertex{0b11};
    if (dims >= vertex_count(d)) dims &= vertex_count(d) - 1;
    auto blocks = induced_by_dims(d, dims);
    int r = std::popcount(dims);
    for (const Subcube& b : blocks) {
      EdgeColoredGraph g;
      g.n = static_cast<int>(b.vertex_count());
      auto dims_vec = mask_to_dims(b.dims);
      for (const Edge& e : subcube_edges(b)) {
        int lu = static_cast<int>(b.to_local(e.lo()));
        int lv = static_cast<int>(b.to_local(e.hi()));
        int local_dim = static_cast<int>(std::find(dims_vec.begin(), dims_vec.end(), e.dim) -
                                         dims_vec.begin());
        g.edges.push_back({lu, lv, local_dim + 1});
      }
      auto labels = embed_into_hypercube(g, r);
      REQUIRE(labels.has_value());
    }
  }
}

TEST_CASE("subcube_intersection matches brute-force vertex intersection") {
  const int d = 4;
  std::vector<Subcube> cubes;
  for (Vertex dims = 0; dims < vertex_count(d); ++dims) {
    Vertex fixed = (vertex_count(d) - 1) & ~dims;
    for (Vertex x = 0; x < vertex_count(d); ++x) {
      if ((x & dims) != 0) continue;
      if ((x & ~fixed) != 0) continue;
      cubes.push_back(Subcube{x, dims});
    }
  }
  for (const Subcube& a : cubes)
    for (const Subcube& b : cubes) {
      std::set<Vertex> va, vb, inter;
      for (Vertex v : a.vertices()) va.insert(v);
      for (Vertex v : b.vertices()) vb.insert(v);
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                            std::inserter(inter, inter.begin()));
      auto got = subcube_intersection(a, b);
      if (inter.empty()) {
        REQUIRE(!got.has_value());
      } else {
        REQUIRE(got.has_value());
        std::set<Vertex> gv;
        for (Vertex v : got->vertices()) gv.insert(v);
        REQUIRE(gv == inter);
      }
    }
}

TEST_CASE("subcube intersection worked example") {
  // Two 2-faces of Q_3 sharing an edge.
  Subcube a{0, 0b011};
  Subcube b{0, 0b110};
  auto i = subcube_intersection(a, b);
  REQUIRE(i.has_value());
  REQUIRE(i->dims == 0b010);
  REQUIRE(i->base == 0);
  // Parallel 2-faces at different offsets are disjoint.
  REQUIRE(!subcube_intersection(a, Subcube{0b100, 0b011}).has_value());
  Subcube c{0b001, 0b110};
  REQUIRE(!subcube_intersection(c, Subcube{0b000, 0b110}).has_value());
}

TEST_CASE("signed permutations act as automorphisms and compose") {
  const int d = 3;
  auto group = hypercube_symmetries(d);
  REQUIRE(group.size() == 48);  // 2^3 * 3!
  auto edges = all_edges(d);
  for (const auto& s : group) {
    std::set<int> image;
    for (const Edge& e : edges) {
      Edge f = s.apply(e);
      // adjacency preserved: f's endpoints are images of e's
      std::set<Vertex> want{s.apply(e.lo()), s.apply(e.hi())};
      std::set<Vertex> got{f.lo(), f.hi()};
      REQUIRE(want == got);
      image.insert(edge_index(d, f));
    }
    REQUIRE(image.size() == edges.size());
  }
  // spot-check composition
  const auto& a = group[7];
  const auto& b = group[23];
  auto ab = a.then(b);
  for (Vertex v = 0; v < vertex_count(d); ++v) REQUIRE(ab.apply(v) == b.apply(a.apply(v)));
}

TEST_CASE("projection helpers invert each other") {
  Vertex mask = 0b10110;
  for (Vertex x = 0; x < 8; ++x) REQUIRE(project_onto(spread_onto(x, mask), mask) == x);
  REQUIRE(squeeze_bit(0b1011, 1) == 0b101);
  REQUIRE(unsqueeze_bit(0b101, 1) == 0b1001);
}

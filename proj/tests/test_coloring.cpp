#include <set>

#include "catch2/catch_amalgamated.hpp"
#include "precolor/coloring.hpp"
#include "precolor/galvin.hpp"
#include "precolor/konig.hpp"
#include "support/naive.hpp"

using namespace precolor;

namespace {

void require_proper_total(const BipartiteGraph& g, const std::vector<int>& color, int budget) {
  PartialColoring pc(color.size(), budget);
  pc.color = color;
  for (int c : color) REQUIRE(c >= 1);
  REQUIRE(is_proper(g, pc));
}

}  // namespace

TEST_CASE("ColorSet basics") {
  ColorSet s;
  s.add(3);
  s.add(1);
  REQUIRE(s.count() == 2);
  REQUIRE(s.contains(1));
  REQUIRE(!s.contains(2));
  REQUIRE(s.lowest() == 1);
  REQUIRE(s.nth(1) == 3);
  REQUIRE(s.nth(2) == 0);
  ColorSet f = ColorSet::full(4);
  REQUIRE((f - s).to_vector() == std::vector<int>{2, 4});
  REQUIRE_THROWS_AS(s.add(0), std::invalid_argument);
}

TEST_CASE("is_proper flags conflicts at shared vertices only") {
  BipartiteGraph g = make_complete_bipartite(2, 2);
  PartialColoring pc(g.edge_count(), 2);
  // edges: (0,2) (0,3) (1,2) (1,3)
  pc.color = {1, 2, 2, 1};
  REQUIRE(is_proper(g, pc));
  pc.color = {1, 1, 0, 0};
  REQUIRE(!is_proper(g, pc));
  pc.color = {1, 0, 0, 1};
  REQUIRE(is_proper(g, pc));
}

TEST_CASE("hypercube graph edges follow edge_index order") {
  for (int d = 1; d <= 5; ++d) {
    BipartiteGraph g = make_hypercube_graph(d);
    REQUIRE(g.edge_count() == static_cast<int>(edge_count(d)));
    REQUIRE(g.max_degree() == d);
    auto edges = all_edges(d);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& [u, v] = g.endpoints(static_cast<int>(i));
      std::set<Vertex> got{static_cast<Vertex>(u), static_cast<Vertex>(v)};
      std::set<Vertex> want{edges[i].lo(), edges[i].hi()};
      REQUIRE(got == want);
      REQUIRE(g.side(u) == 0);  // side-0 endpoint stored first
    }
  }
}

TEST_CASE("knn power graph shape") {
  BipartiteGraph g = make_knn_power_graph(3, 1);
  REQUIRE(g.vertex_count() == 6);
  REQUIRE(g.edge_count() == 9);
  BipartiteGraph p = make_knn_power_graph(2, 2);
  REQUIRE(p.vertex_count() == 16);
  REQUIRE(p.max_degree() == 4);
  REQUIRE(p.edge_count() == 16 * 4 / 2);
  REQUIRE_THROWS_AS(make_knn_power_graph(2, 7), std::invalid_argument);
  // n = 1 reduces to the hypercube
  BipartiteGraph q = make_knn_power_graph(1, 3);
  BipartiteGraph h = make_hypercube_graph(3);
  REQUIRE(q.edge_count() == h.edge_count());
  std::set<std::pair<int, int>> qe, he;
  for (int e = 0; e < q.edge_count(); ++e) qe.insert(q.endpoints(e));
  for (int e = 0; e < h.edge_count(); ++e) he.insert(h.endpoints(e));
  REQUIRE(qe == he);
}

TEST_CASE("konig_color uses exactly max degree colors on standard graphs") {
  for (int d = 1; d <= 6; ++d) {
    BipartiteGraph g = make_hypercube_graph(d);
    auto col = konig_color(g);
    require_proper_total(g, col, d);
    std::set<int> used(col.begin(), col.end());
    REQUIRE(static_cast<int>(used.size()) == d);
    REQUIRE(*used.rbegin() == d);
  }
  for (int n = 1; n <= 6; ++n) {
    BipartiteGraph g = make_complete_bipartite(n, n);
    auto col = konig_color(g);
    require_proper_total(g, col, n);
  }
  BipartiteGraph star = make_complete_bipartite(1, 4);
  auto col = konig_color(star);
  require_proper_total(star, col, 4);
}

TEST_CASE("konig_color handles irregular and parallel-edge graphs") {
  testsupport::TestRng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    int s = 2 + static_cast<int>(rng.below(18));
    int k = 1 + static_cast<int>(rng.below(6));
    BipartiteGraph g = testsupport::random_regular_multigraph(s, k, rng);
    // drop a few edges to break regularity in half of the trials
    if (trial % 2 == 0) {
      auto col = konig_color(g);
      require_proper_total(g, col, k);
    } else {
      BipartiteGraph h;
      for (int v = 0; v < g.vertex_count(); ++v) h.add_vertex(g.side(v));
      for (int e = 0; e < g.edge_count(); ++e) {
        if (rng.below(5) == 0) continue;
        h.add_edge(g.endpoints(e).first, g.endpoints(e).second);
      }
      if (h.edge_count() == 0) continue;
      auto col = konig_color(h);
      require_proper_total(h, col, h.max_degree());
      std::set<int> used(col.begin(), col.end());
      REQUIRE(static_cast<int>(used.size()) <= h.max_degree());
    }
  }
}

TEST_CASE("konig_color is deterministic") {
  BipartiteGraph g = make_hypercube_graph(4);
  REQUIRE(konig_color(g) == konig_color(g));
}

TEST_CASE("complete_partial: single colored edge on the 4-cycle") {
  BipartiteGraph g = make_hypercube_graph(2);
  PartialColoring pc(g.edge_count(), 2);
  pc.color[0] = 1;
  auto r = complete_partial(g, pc);
  REQUIRE(r.status == CompletionStatus::completed);
  REQUIRE(r.coloring[0] == 1);
  require_proper_total(g, r.coloring, 2);
}

TEST_CASE("complete_partial: one dimensional matching colored, budget 3") {
  BipartiteGraph g = make_hypercube_graph(3);
  PartialColoring pc(g.edge_count(), 3);
  for (const Edge& e : dimensional_matching(3, 0)) pc.color[edge_index(3, e)] = 3;
  auto r = complete_partial(g, pc);
  REQUIRE(r.status == CompletionStatus::completed);
  REQUIRE(r.route == "konig");
  for (const Edge& e : dimensional_matching(3, 0)) REQUIRE(r.coloring[edge_index(3, e)] == 3);
  require_proper_total(g, r.coloring, 3);
}

TEST_CASE("complete_partial: two-color skeleton covering every vertex, budget d") {
  // Q_3 with one dimensional matching colored 1 and one edge colored 2;
  // every vertex is covered, so the unused palette suffices directly.
  const int d = 4;  // palette larger than the cube's degree
  BipartiteGraph g = make_hypercube_graph(3);
  PartialColoring pc(g.edge_count(), d);
  for (const Edge& e : dimensional_matching(3, 0)) pc.color[edge_index(3, e)] = 1;
  pc.color[edge_index(3, Edge{0, 1})] = 2;
  auto r = complete_partial(g, pc);
  REQUIRE(r.status == CompletionStatus::completed);
  REQUIRE(r.route == "konig");
  require_proper_total(g, r.coloring, d);
  REQUIRE(r.coloring[edge_index(3, Edge{0, 1})] == 2);
}

TEST_CASE("complete_partial falls back to search when palettes must mix") {
  BipartiteGraph g = make_hypercube_graph(2);
  PartialColoring pc(g.edge_count(), 2);
  pc.color[edge_index(2, Edge{0, 0})] = 1;  // edge (0,1)
  pc.color[edge_index(2, Edge{1, 1})] = 2;  // edge (1,3)
  auto r = complete_partial(g, pc);
  REQUIRE(r.status == CompletionStatus::completed);
  require_proper_total(g, r.coloring, 2);
  REQUIRE(r.route == "solver");
}

TEST_CASE("galvin matches fixed lists on the 4-cycle") {
  BipartiteGraph g = make_hypercube_graph(2);
  std::vector<ColorSet> lists(g.edge_count());
  for (auto& l : lists) l = ColorSet::full(2);
  auto col = galvin_list_color(g, lists);
  require_proper_total(g, col, 2);
}

TEST_CASE("galvin colors Q_3 from its own palette and from shifted lists") {
  BipartiteGraph g = make_hypercube_graph(3);
  std::vector<ColorSet> lists(g.edge_count());
  for (auto& l : lists) l = ColorSet::full(3);
  auto col = galvin_list_color(g, lists);
  require_proper_total(g, col, 3);

  // distinct 3-element lists drawn from 1..6
  testsupport::TestRng rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    for (auto& l : lists) {
      l = ColorSet();
      while (l.count() < 3) l.add(1 + static_cast<int>(rng.below(6)));
    }
    auto got = galvin_list_color(g, lists);
    for (int e = 0; e < g.edge_count(); ++e) REQUIRE(lists[e].contains(got[e]));
    require_proper_total(g, got, 6);
    REQUIRE(testsupport::naive_list_colorable(g, lists));
  }
}

TEST_CASE("galvin handles uneven and oversized lists on K_{3,3}") {
  BipartiteGraph g = make_complete_bipartite(3, 3);
  testsupport::TestRng rng(99);
  std::vector<ColorSet> lists(g.edge_count());
  for (int trial = 0; trial < 120; ++trial) {
    for (auto& l : lists) {
      l = ColorSet();
      int size = 3 + static_cast<int>(rng.below(3));
      while (l.count() < size) l.add(1 + static_cast<int>(rng.below(8)));
    }
    auto got = galvin_list_color(g, lists);
    for (int e = 0; e < g.edge_count(); ++e) REQUIRE(lists[e].contains(got[e]));
    require_proper_total(g, got, 8);
  }
}

TEST_CASE("galvin rejects short lists") {
  BipartiteGraph g = make_complete_bipartite(2, 2);
  std::vector<ColorSet> lists(g.edge_count(), ColorSet::full(1));
  REQUIRE_THROWS_AS(galvin_list_color(g, lists), std::invalid_argument);
}

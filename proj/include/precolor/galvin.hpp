#pragma once

// List edge coloring of bipartite multigraphs from lists of size at least
// the maximum degree.  A reference konig_color coloring psi orders the edges;
// for each color value we pick a stable set of eligible edges by a
// propose-dispose loop (side-0 endpoints propose their lowest-psi edge,
// side-1 endpoints keep the highest-psi proposal) and color it.  Every edge
// is blocked at most max-degree-minus-one times, so lists never run dry.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/konig.hpp"

namespace precolor {

inline std::vector<int> galvin_list_color(const BipartiteGraph& g,
                                          const std::vector<ColorSet>& lists) {
  int m = g.edge_count();
  if (static_cast<int>(lists.size()) != m)
    throw std::invalid_argument("one list per edge required");
  int delta = g.max_degree();
  for (const ColorSet& l : lists)
    if (l.count() < delta)
      throw std::invalid_argument("every list must have at least max_degree colors");

  std::vector<int> psi = konig_color(g);
  std::vector<int> out(m, 0);

  std::set<int> palette;
  for (const ColorSet& l : lists)
    for (int c : l.to_vector()) palette.insert(c);

  std::vector<char> alive(m, 0);
  std::vector<int> held(g.vertex_count(), -1);  // per side-1 vertex
  for (int c : palette) {
    // Candidate edges of the current round, per side-0 endpoint, sorted by
    // reference color (psi values at one vertex are distinct).
    std::map<int, std::map<int, int>> candidates;  // x -> psi -> edge
    for (int e = 0; e < m; ++e) {
      alive[e] = (out[e] == 0 && lists[e].contains(c));
      if (alive[e]) candidates[g.endpoints(e).first][psi[e]] = e;
    }
    std::fill(held.begin(), held.end(), -1);
    std::set<int> free_proposers;
    for (const auto& [x, _] : candidates) free_proposers.insert(x);
    while (!free_proposers.empty()) {
      int x = *free_proposers.begin();
      free_proposers.erase(free_proposers.begin());
      auto& mine = candidates[x];
      while (!mine.empty() && !alive[mine.begin()->second]) mine.erase(mine.begin());
      if (mine.empty()) continue;
      int e = mine.begin()->second;
      int y = g.endpoints(e).second;
      if (held[y] < 0) {
        held[y] = e;
      } else if (psi[held[y]] < psi[e]) {
        int loser = held[y];
        held[y] = e;
        alive[loser] = 0;
        free_proposers.insert(g.endpoints(loser).first);
      } else {
        alive[e] = 0;
        free_proposers.insert(x);
      }
    }
    for (int y = 0; y < g.vertex_count(); ++y)
      if (held[y] >= 0) out[held[y]] = c;
  }

  for (int e = 0; e < m; ++e)
    if (out[e] == 0) throw std::logic_error("list coloring left an edge uncolored");
  return out;
}

}  // namespace precolor

#pragma once

// Canonical forms for hypercube precolorings: the minimum image under the
// full symmetry group of Q_d combined with first-appearance relabeling of
// the palette.  Also enumerates one representative per orbit of m-edge
// precolorings, which keeps exhaustive d=4 sweeps tractable.

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/hypercube.hpp"
#include "precolor/solver.hpp"

namespace precolor {

struct CanonicalForm {
  std::vector<std::pair<int, int>> cells;  // (edge index, relabeled color), sorted
  int budget = 0;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

// Relabels colors to 1,2,... in order of first appearance along the cells.
inline void relabel_colors(std::vector<std::pair<int, int>>& cells) {
  int next = 0;
  int map[max_color + 1] = {};
  for (auto& [e, c] : cells) {
    if (map[c] == 0) map[c] = ++next;
    c = map[c];
  }
}

// Edge-index permutation induced by a hypercube symmetry.
inline std::vector<int> edge_permutation(int d, const SignedPermutation& s) {
  std::vector<int> out(edge_count(d));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = edge_index(d, s.apply(edge_at(d, static_cast<int>(i))));
  return out;
}

}  // namespace detail

// Applies a symmetry to a precoloring of Q_d (no palette relabeling).
inline PartialColoring apply_symmetry(int d, const SignedPermutation& s,
                                      const PartialColoring& pc) {
  PartialColoring out(pc.color.size(), pc.budget);
  for (std::size_t i = 0; i < pc.color.size(); ++i)
    if (pc.color[i] != 0)
      out.color[edge_index(d, s.apply(edge_at(d, static_cast<int>(i))))] = pc.color[i];
  return out;
}

// Minimum image of a precoloring under symmetry x palette relabeling.
// Exhaustive over the group, so capped at d <= 5.
inline CanonicalForm canonicalize(int d, const PartialColoring& pc) {
  check_dimension(d);
  if (pc.color.size() != edge_count(d))
    throw std::invalid_argument("coloring size does not match Q_d edge count");
  auto group = hypercube_symmetries(d);
  CanonicalForm best;
  best.budget = pc.budget;
  bool first = true;
  std::vector<std::pair<int, int>> cells;
  for (const auto& s : group) {
    cells.clear();
    for (std::size_t i = 0; i < pc.color.size(); ++i)
      if (pc.color[i] != 0)
        cells.push_back({edge_index(d, s.apply(edge_at(d, static_cast<int>(i)))), pc.color[i]});
    std::sort(cells.begin(), cells.end());
    detail::relabel_colors(cells);
    if (first || cells < best.cells) {
      best.cells = cells;
      first = false;
    }
  }
  return best;
}

// Enumerates the lexicographically-least member of every orbit of m-element
// edge subsets of Q_d, passing the subset together with the group elements
// that stabilize it.
inline void canonical_edge_subsets(
    int d, int m,
    const std::function<void(const std::vector<int>&, const std::vector<std::vector<int>>&)>&
        emit) {
  check_dimension(d);
  int edges = static_cast<int>(edge_count(d));
  if (m < 0 || m > edges) throw std::invalid_argument("subset size out of range");
  auto group = hypercube_symmetries(d);
  std::vector<std::vector<int>> eperm;
  eperm.reserve(group.size());
  for (const auto& s : group) eperm.push_back(detail::edge_permutation(d, s));

  std::vector<int> pick(m);
  for (int i = 0; i < m; ++i) pick[i] = i;
  std::vector<int> mapped(m);
  std::vector<std::vector<int>> stabilizer;
  for (;;) {
    bool minimal = true;
    stabilizer.clear();
    for (const auto& p : eperm) {
      for (int i = 0; i < m; ++i) mapped[i] = p[pick[i]];
      std::sort(mapped.begin(), mapped.end());
      if (mapped < pick) {
        minimal = false;
        break;
      }
      if (mapped == pick) stabilizer.push_back(p);
    }
    if (minimal) emit(pick, stabilizer);
    if (m == 0) return;
    int j = m - 1;
    while (j >= 0 && pick[j] == edges - m + j) --j;
    if (j < 0) break;
    ++pick[j];
    for (int i = j + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
  }
}

// Streams one representative per orbit of proper m-edge precolorings of Q_d
// with colors 1..t, under symmetry x palette relabeling.
inline void canonical_precolorings(int d, int m, int t,
                                   const std::function<void(const Instance&)>& emit) {
  Instance inst = make_hypercube_instance(d, t);
  canonical_edge_subsets(d, m, [&](const std::vector<int>& subset,
                                   const std::vector<std::vector<int>>& stabilizer) {
    if (m == 0) {
      emit(inst);
      return;
    }
    // Positions of each subset edge under every stabilizer element.
    std::vector<std::vector<int>> pos(stabilizer.size(), std::vector<int>(m));
    for (std::size_t s = 0; s < stabilizer.size(); ++s)
      for (int i = 0; i < m; ++i) {
        int target = stabilizer[s][subset[i]];
        pos[s][i] = static_cast<int>(
            std::lower_bound(subset.begin(), subset.end(), target) - subset.begin());
      }

    std::vector<int> tuple(m, 1), moved(m), relabeled(m);
    auto relabel = [&](std::vector<int>& v) {
      int next = 0;
      int map[max_color + 1] = {};
      for (int& c : v) {
        if (map[c] == 0) map[c] = ++next;
        c = map[c];
      }
    };
    for (;;) {
      for (int i = 0; i < m; ++i) inst.pc.color[subset[i]] = tuple[i];
      bool proper = is_proper(inst.graph, inst.pc);
      if (proper) {
        relabeled = tuple;
        relabel(relabeled);
        bool canonical = (relabeled == tuple);
        if (canonical) {
          for (std::size_t s = 0; s < stabilizer.size() && canonical; ++s) {
            for (int i = 0; i < m; ++i) moved[pos[s][i]] = tuple[i];
            relabel(moved);
            if (moved < tuple) canonical = false;
          }
          if (canonical) emit(inst);
        }
      }
      int j = m - 1;
      while (j >= 0 && tuple[j] == t) --j;
      if (j < 0) break;
      ++tuple[j];
      for (int i = j + 1; i < m; ++i) tuple[i] = 1;
    }
    for (int i = 0; i < m; ++i) inst.pc.color[subset[i]] = 0;
  });
}

}  // namespace precolor

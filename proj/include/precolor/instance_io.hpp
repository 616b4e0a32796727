#pragma once

// Line-oriented text serialization for solver instances, plus a DOT export.
//
// Format (version 1):
//   pcx 1
//   kind hypercube            kind knn_power          kind bipartite
//   d 3                       n 3                     parts 4 4
//   t 3                       d 2                     edges 8
//   pre 0 1 2                 t 6                     e 0 4
//   end                       pre 0 6 1               ...
//                             end                     t 3
//                                                     pre 0 4 1
//                                                     end
//
// `pre u v c` colors the edge with endpoints u, v.  Writers emit a canonical
// form: side-contiguous vertex numbering for bipartite graphs, edge lists
// sorted by endpoints, pre lines sorted by edge order, so write -> read ->
// write is byte-stable.  Readers reject malformed input, unknown edges and
// improper precolorings with errors carrying the offending line number.
// Blank lines and lines starting with '#' are skipped.

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "precolor/coloring.hpp"
#include "precolor/hypercube.hpp"
#include "precolor/solver.hpp"

namespace precolor {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

namespace detail {

// Renumbering that puts side-0 vertices first, keeping relative order.
inline std::vector<int> side_contiguous_map(const BipartiteGraph& g) {
  std::vector<int> map(g.vertex_count());
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.side(v) == 0) map[v] = next++;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.side(v) == 1) map[v] = next++;
  return map;
}

struct EdgeRow {
  int u, v, id;
  bool operator<(const EdgeRow& o) const {
    return std::tie(u, v, id) < std::tie(o.u, o.v, o.id);
  }
};

inline std::vector<EdgeRow> sorted_edge_rows(const BipartiteGraph& g,
                                             const std::vector<int>& map) {
  std::vector<EdgeRow> rows;
  rows.reserve(static_cast<std::size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);  // a is side 0 by construction
    rows.push_back({map[a], map[b], e});
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace detail

inline std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "pcx 1\n";
  out << "kind " << to_string(inst.kind) << "\n";
  switch (inst.kind) {
    case GraphKind::hypercube: {
      out << "d " << inst.dim << "\n";
      out << "t " << inst.pc.budget << "\n";
      for (const Edge& e : all_edges(inst.dim)) {
        int c = inst.pc.color[edge_index(inst.dim, e)];
        if (c != 0) out << "pre " << e.lo() << " " << e.hi() << " " << c << "\n";
      }
      break;
    }
    case GraphKind::knn_power: {
      out << "n " << inst.knn_n << "\n";
      out << "d " << inst.knn_d << "\n";
      out << "t " << inst.pc.budget << "\n";
      // power graph edges are already in ascending endpoint order
      for (int e = 0; e < inst.graph.edge_count(); ++e) {
        int c = inst.pc.color[e];
        auto [u, v] = inst.graph.endpoints(e);
        if (u > v) std::swap(u, v);
        if (c != 0) out << "pre " << u << " " << v << " " << c << "\n";
      }
      break;
    }
    case GraphKind::bipartite: {
      std::vector<int> map = detail::side_contiguous_map(inst.graph);
      auto rows = detail::sorted_edge_rows(inst.graph, map);
      int n0 = 0;
      for (int v = 0; v < inst.graph.vertex_count(); ++v)
        if (inst.graph.side(v) == 0) ++n0;
      out << "parts " << n0 << " " << inst.graph.vertex_count() - n0 << "\n";
      out << "edges " << inst.graph.edge_count() << "\n";
      for (const auto& r : rows) out << "e " << r.u << " " << r.v << "\n";
      out << "t " << inst.pc.budget << "\n";
      for (const auto& r : rows) {
        int c = inst.pc.color[r.id];
        if (c != 0) out << "pre " << r.u << " " << r.v << " " << c << "\n";
      }
      break;
    }
  }
  out << "end\n";
  return out.str();
}

inline Instance read_instance(std::istream& in) {
  int line_no = 0;
  std::string line;

  // Splits the next meaningful line into tokens; empty result means EOF.
  auto next_tokens = [&]() {
    std::vector<std::string> toks;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (toks.empty()) continue;          // blank
      if (toks[0][0] == '#') {             // comment
        toks.clear();
        continue;
      }
      return toks;
    }
    return toks;
  };
  auto fail = [&](const std::string& msg) -> void { throw ParseError(line_no, msg); };
  auto to_int = [&](const std::string& s, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v < -1000000000L || v > 1000000000L)
      fail(std::string("expected an integer ") + what + ", got '" + s + "'");
    return static_cast<int>(v);
  };
  // Reads "key <n> [<n2>...]" with an exact token count.
  auto keyed_ints = [&](const char* key, int count) {
    auto toks = next_tokens();
    if (toks.empty()) fail(std::string("expected '") + key + "', got end of input");
    if (toks[0] != key || static_cast<int>(toks.size()) != count + 1)
      fail(std::string("expected '") + key + "' with " + std::to_string(count) +
           " value(s), got '" + line + "'");
    std::vector<int> vals;
    for (int i = 1; i <= count; ++i) vals.push_back(to_int(toks[i], key));
    return vals;
  };

  auto header = next_tokens();
  if (header.empty()) fail("empty input, expected 'pcx 1' header");
  if (header.size() != 2 || header[0] != "pcx" || header[1] != "1")
    fail("unsupported header, expected 'pcx 1'");

  auto kind_toks = next_tokens();
  if (kind_toks.size() != 2 || kind_toks[0] != "kind")
    fail("expected 'kind hypercube|bipartite|knn_power'");

  Instance inst;
  // Per-endpoint-pair queues of unconsumed edge ids, for pre-line resolution.
  std::map<std::pair<int, int>, std::vector<int>> pool;
  auto fill_pool = [&]() {
    for (int e = inst.graph.edge_count() - 1; e >= 0; --e) {
      auto [u, v] = inst.graph.endpoints(e);
      if (u > v) std::swap(u, v);
      pool[{u, v}].push_back(e);  // reversed so pop_back walks ids in order
    }
  };

  if (kind_toks[1] == "hypercube") {
    int d = keyed_ints("d", 1)[0];
    if (d < 1 || d > max_dimension) fail("dimension out of range");
    int t = keyed_ints("t", 1)[0];
    if (t < 1 || t > max_color) fail("budget out of range");
    inst = make_hypercube_instance(d, t);
  } else if (kind_toks[1] == "knn_power") {
    int n = keyed_ints("n", 1)[0];
    int d = keyed_ints("d", 1)[0];
    try {
      make_knn_power_graph(n, d);
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    }
    int t = keyed_ints("t", 1)[0];
    if (t < 1 || t > max_color) fail("budget out of range");
    inst = make_knn_power_instance(n, d, t);
    fill_pool();
  } else if (kind_toks[1] == "bipartite") {
    auto parts = keyed_ints("parts", 2);
    if (parts[0] < 0 || parts[1] < 0 || parts[0] + parts[1] > 4096)
      fail("part sizes out of range");
    int m = keyed_ints("edges", 1)[0];
    if (m < 0 || m > 1000000) fail("edge count out of range");
    BipartiteGraph g;
    for (int i = 0; i < parts[0]; ++i) g.add_vertex(0);
    for (int i = 0; i < parts[1]; ++i) g.add_vertex(1);
    for (int i = 0; i < m; ++i) {
      auto vals = keyed_ints("e", 2);
      if (vals[0] < 0 || vals[0] >= parts[0]) fail("left endpoint out of range");
      if (vals[1] < parts[0] || vals[1] >= parts[0] + parts[1])
        fail("right endpoint out of range");
      g.add_edge(vals[0], vals[1]);
    }
    int t = keyed_ints("t", 1)[0];
    if (t < 1 || t > max_color) fail("budget out of range");
    inst = make_bipartite_instance(std::move(g), t);
    fill_pool();
  } else {
    fail("unknown kind '" + kind_toks[1] + "'");
  }

  // colors already used at each vertex, for located propriety errors
  std::vector<ColorSet> used(static_cast<std::size_t>(inst.graph.vertex_count()));
  for (;;) {
    auto toks = next_tokens();
    if (toks.empty()) fail("missing 'end' line");
    if (toks[0] == "end") {
      if (toks.size() != 1) fail("trailing tokens after 'end'");
      break;
    }
    if (toks[0] != "pre" || toks.size() != 4)
      fail("expected 'pre <u> <v> <c>' or 'end', got '" + line + "'");
    int u = to_int(toks[1], "vertex");
    int v = to_int(toks[2], "vertex");
    int c = to_int(toks[3], "color");
    if (c < 1 || c > inst.pc.budget)
      fail("color " + std::to_string(c) + " outside 1.." +
           std::to_string(inst.pc.budget));
    int id = -1;
    if (inst.kind == GraphKind::hypercube) {
      Vertex n = vertex_count(inst.dim);
      if (u < 0 || v < 0 || static_cast<Vertex>(u) >= n || static_cast<Vertex>(v) >= n)
        fail("vertex out of range");
      if (std::popcount(static_cast<unsigned>(u ^ v)) != 1)
        fail("vertices " + std::to_string(u) + " and " + std::to_string(v) +
             " are not adjacent");
      id = static_cast<int>(
          edge_index(inst.dim, make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))));
      if (inst.pc.color[id] != 0)
        fail("edge " + std::to_string(u) + "-" + std::to_string(v) +
             " colored twice");
    } else {
      if (u > v) std::swap(u, v);
      auto it = pool.find({u, v});
      if (it == pool.end() || it->second.empty())
        fail("no uncolored edge with endpoints " + std::to_string(u) + " and " +
             std::to_string(v));
      id = it->second.back();
      it->second.pop_back();
    }
    int gu = inst.graph.endpoints(id).first;
    int gv = inst.graph.endpoints(id).second;
    for (int w : {gu, gv})
      if (used[static_cast<std::size_t>(w)].contains(c))
        fail("color " + std::to_string(c) + " repeats at a vertex of edge " +
             std::to_string(u) + "-" + std::to_string(v));
    used[static_cast<std::size_t>(gu)].add(c);
    used[static_cast<std::size_t>(gv)].add(c);
    inst.pc.color[static_cast<std::size_t>(id)] = c;
  }
  if (!next_tokens().empty()) fail("content after 'end'");
  return inst;
}

inline Instance read_instance(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in);
}

inline void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << write_instance(inst);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

// Graphviz export.  Hypercube vertices are labeled with bit strings, power
// graph vertices with base-2n digit strings, bipartite vertices as l<i>/r<i>.
// Colored edges carry their color as a label and are drawn bold.
inline std::string to_dot(const Instance& inst) {
  auto label = [&](int v) -> std::string {
    switch (inst.kind) {
      case GraphKind::hypercube: {
        std::string s;
        for (int j = inst.dim - 1; j >= 0; --j)
          s += ((v >> j) & 1) ? '1' : '0';
        return s;
      }
      case GraphKind::knn_power: {
        std::string s;
        int x = v;
        for (int i = 0; i < inst.knn_d; ++i) {
          s.insert(s.begin(), static_cast<char>('0' + x % (2 * inst.knn_n)));
          x /= 2 * inst.knn_n;
        }
        return s;
      }
      case GraphKind::bipartite:
        return (inst.graph.side(v) == 0 ? "l" : "r") + std::to_string(v);
    }
    return std::to_string(v);
  };
  std::ostringstream out;
  out << "graph instance {\n";
  out << "  node [shape=circle fontsize=10];\n";
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [u, v] = inst.graph.endpoints(e);
    out << "  \"" << label(u) << "\" -- \"" << label(v) << "\"";
    int c = inst.pc.color[static_cast<std::size_t>(e)];
    if (c != 0) out << " [label=\"" << c << "\" penwidth=2]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace precolor

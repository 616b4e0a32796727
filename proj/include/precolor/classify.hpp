#pragma once

// Recognizes precolorings of Q_d that are provably not extendable because of
// a local obstruction, and a harness checking that at exactly d precolored
// edges these obstructions are the only reason extension can fail.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "precolor/canonical.hpp"
#include "precolor/coloring.hpp"
#include "precolor/hypercube.hpp"
#include "precolor/solver.hpp"

namespace precolor {

enum class ObstructionKind {
  saturated_edge,     // C1: an uncolored edge already sees all d colors
  blocked_color,      // C2: a color a vertex can never receive
  surrounded_vertex,  // C3: an uncolored vertex walled in by one color
  split_matching,     // C4: d=3, a dimensional matching carrying 3 colors
};

inline constexpr int obstruction_kinds = 4;

inline const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::saturated_edge: return "saturated_edge";
    case ObstructionKind::blocked_color: return "blocked_color";
    case ObstructionKind::surrounded_vertex: return "surrounded_vertex";
    case ObstructionKind::split_matching: return "split_matching";
  }
  return "?";
}

// short report labels, C1..C4
inline const char* condition_label(ObstructionKind k) {
  static const char* names[] = {"C1", "C2", "C3", "C4"};
  return names[static_cast<int>(k)];
}

struct Obstruction {
  ObstructionKind kind = ObstructionKind::saturated_edge;
  Edge edge{};       // saturated_edge
  Vertex vertex = 0; // blocked_color, surrounded_vertex
  int color = 0;     // blocked_color, surrounded_vertex
  int dim = -1;      // split_matching
};

struct ObstructionReport {
  bool member = false;     // some obstruction applies
  bool decisive = false;    // exactly d precolored edges: membership is
                            // equivalent to non-extendability
  std::vector<Obstruction> found;  // one witness per satisfied condition

  bool has(ObstructionKind k) const {
    for (const Obstruction& ob : found)
      if (ob.kind == k) return true;
    return false;
  }
};

namespace detail {

inline void validate_cube_precoloring(int d, const PartialColoring& pc) {
  check_dimension(d);
  if (pc.color.size() != edge_count(d))
    throw std::invalid_argument("coloring size does not match Q_d edge count");
  for (int c : pc.color)
    if (c < 0 || c > d) throw std::invalid_argument("precolor outside palette 1..d");
  if (!is_proper_cube(d, pc.color)) throw std::invalid_argument("precoloring is not proper");
}

}  // namespace detail

// Re-checks one reported obstruction from scratch.
inline bool check_obstruction(int d, const PartialColoring& pc, const Obstruction& ob) {
  detail::validate_cube_precoloring(d, pc);
  switch (ob.kind) {
    case ObstructionKind::saturated_edge: {
      if (ob.edge.dim < 0 || ob.edge.dim >= d || (ob.edge.base & bit(ob.edge.dim))) return false;
      if (pc.color[edge_index(d, ob.edge)] != 0) return false;
      ColorSet su = cube_colors_at(d, pc.color, ob.edge.lo());
      ColorSet sv = cube_colors_at(d, pc.color, ob.edge.hi());
      return (su & sv).empty() && su.count() + sv.count() == d;
    }
    case ObstructionKind::blocked_color: {
      if (ob.color < 1 || ob.color > d) return false;
      Vertex u = ob.vertex;
      if (cube_colors_at(d, pc.color, u).contains(ob.color)) return false;
      bool any_uncolored = false;
      for (int j = 0; j < d; ++j) {
        Edge e = make_edge(u, u ^ bit(j));
        if (pc.color[edge_index(d, e)] != 0) continue;
        any_uncolored = true;
        if (!cube_colors_at(d, pc.color, u ^ bit(j)).contains(ob.color)) return false;
      }
      return any_uncolored;
    }
    case ObstructionKind::surrounded_vertex: {
      if (ob.color < 1 || ob.color > d) return false;
      Vertex u = ob.vertex;
      for (int j = 0; j < d; ++j) {
        Edge e = make_edge(u, u ^ bit(j));
        if (pc.color[edge_index(d, e)] != 0) return false;
        if (!cube_colors_at(d, pc.color, u ^ bit(j)).contains(ob.color)) return false;
      }
      return true;
    }
    case ObstructionKind::split_matching: {
      if (d != 3 || pc.colored_count() != 3 || ob.dim < 0 || ob.dim >= 3) return false;
      ColorSet colors;
      int in_dim = 0;
      for (std::size_t i = 0; i < pc.color.size(); ++i) {
        if (pc.color[i] == 0) continue;
        if (edge_at(d, static_cast<int>(i)).dim != ob.dim) return false;
        colors.add(pc.color[i]);
        ++in_dim;
      }
      return in_dim == 3 && colors.count() == 3;
    }
  }
  return false;
}

// Scans the precoloring for every obstruction kind, recording the first
// witness of each.  Sound for any number of precolored edges; with exactly d
// of them the converse holds as well (no obstruction means extendable).
inline ObstructionReport find_obstructions(int d, const PartialColoring& pc) {
  detail::validate_cube_precoloring(d, pc);
  ObstructionReport report;
  report.decisive = pc.colored_count() == d;

  std::vector<ColorSet> at(vertex_count(d));
  for (Vertex v = 0; v < vertex_count(d); ++v) at[v] = cube_colors_at(d, pc.color, v);

  // C1: an uncolored edge whose endpoints jointly pin down all d colors
  for (std::size_t i = 0; i < pc.color.size(); ++i) {
    if (pc.color[i] != 0) continue;
    Edge e = edge_at(d, static_cast<int>(i));
    ColorSet su = at[e.lo()], sv = at[e.hi()];
    if ((su & sv).empty() && su.count() + sv.count() == d) {
      report.found.push_back({ObstructionKind::saturated_edge, e, 0, 0, -1});
      break;
    }
  }

  // C2/C3: a vertex that can never meet some color c
  bool have_blocked = false, have_surrounded = false;
  for (Vertex u = 0; u < vertex_count(d) && !(have_blocked && have_surrounded); ++u) {
    bool all_uncolored = true;
    int uncolored = 0;
    for (int j = 0; j < d; ++j) {
      if (pc.color[edge_index(d, make_edge(u, u ^ bit(j)))] != 0) all_uncolored = false;
      else ++uncolored;
    }
    if (uncolored == 0) continue;
    for (int c = 1; c <= d; ++c) {
      if (at[u].contains(c)) continue;
      bool walled = true;
      for (int j = 0; j < d && walled; ++j) {
        if (pc.color[edge_index(d, make_edge(u, u ^ bit(j)))] != 0) continue;
        if (!at[u ^ bit(j)].contains(c)) walled = false;
      }
      if (!walled) continue;
      if (!have_blocked) {
        report.found.push_back({ObstructionKind::blocked_color, Edge{}, u, c, -1});
        have_blocked = true;
      }
      if (all_uncolored && !have_surrounded) {
        report.found.push_back({ObstructionKind::surrounded_vertex, Edge{}, u, c, -1});
        have_surrounded = true;
      }
      break;
    }
  }

  // C4: three distinctly colored edges of one dimensional matching of Q_3
  if (d == 3 && pc.colored_count() == 3) {
    ColorSet colors;
    int dim = -1;
    bool same_dim = true;
    for (std::size_t i = 0; i < pc.color.size() && same_dim; ++i) {
      if (pc.color[i] == 0) continue;
      int de = edge_at(d, static_cast<int>(i)).dim;
      if (dim == -1) dim = de;
      else if (dim != de) same_dim = false;
      colors.add(pc.color[i]);
    }
    if (same_dim && colors.count() == 3)
      report.found.push_back({ObstructionKind::split_matching, Edge{}, 0, 0, dim});
  }

  report.member = !report.found.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Characterization harness: membership must match non-extendability exactly
// when the precoloring has d edges.

enum class VerifyMode { exhaustive, canonical, random };

inline const char* to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::exhaustive: return "exhaustive";
    case VerifyMode::canonical: return "canonical";
    case VerifyMode::random: return "random";
  }
  return "?";
}

struct CharacterizationViolation {
  PartialColoring pc;
  bool member = false;
  ExtendStatus oracle = ExtendStatus::unknown;
  bool witness_failed = false;  // a reported witness did not re-check
};

struct CharacterizationReport {
  int d = 0;
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t seed = 0;
  long long instances = 0;
  long long members = 0;
  long long extendable = 0;
  std::array<long long, obstruction_kinds> condition_counts{};
  std::vector<CharacterizationViolation> violations;  // verbatim, capped
  std::vector<PartialColoring> unresolved;            // oracle gave up
  std::uint64_t nodes = 0;                            // total search effort

  bool clean() const { return violations.empty() && unresolved.empty(); }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 10000;
  int workers = 1;
  std::size_t max_recorded = 100;  // violations kept verbatim
  std::uint64_t node_cap = 0;      // 0: solver default
};

inline CharacterizationReport verify_characterization(int d, VerifyMode mode,
                                                      const VerifyOptions& opts = {}) {
  check_dimension(d);
  CharacterizationReport rep;
  rep.d = d;
  rep.mode = mode;
  rep.seed = mode == VerifyMode::random ? opts.seed : 0;

  std::vector<PartialColoring> batch;
  auto take = [&](const Instance& inst) { batch.push_back(inst.pc); };
  EnumOptions eo;
  eo.d = d;
  eo.m = d;
  switch (mode) {
    case VerifyMode::exhaustive:
      enumerate_precolorings(eo, take);
      break;
    case VerifyMode::canonical:
      canonical_precolorings(d, d, d, take);
      break;
    case VerifyMode::random:
      eo.mode = EnumMode::random;
      eo.seed = opts.seed;
      eo.samples = opts.samples;
      enumerate_precolorings(eo, take);
      break;
  }
  rep.instances = static_cast<long long>(batch.size());

  int workers = std::max(1, opts.workers);
  std::vector<CharacterizationReport> parts(workers);
  auto run = [&](int w) {
    CharacterizationReport& part = parts[w];
    SolveOptions so;
    if (opts.node_cap > 0) so.node_cap = opts.node_cap;
    Instance inst = make_hypercube_instance(d, d);
    for (std::size_t i = w; i < batch.size(); i += workers) {
      const PartialColoring& pc = batch[i];
      ObstructionReport ob = find_obstructions(d, pc);
      bool witness_ok = true;
      for (const Obstruction& o : ob.found) {
        if (!check_obstruction(d, pc, o)) witness_ok = false;
        ++part.condition_counts[static_cast<int>(o.kind)];
      }
      if (ob.member) ++part.members;
      inst.pc = pc;
      ExtendResult res = is_extendable(inst, so);
      part.nodes += res.nodes;
      if (res.status == ExtendStatus::unknown) {
        part.unresolved.push_back(pc);
        continue;
      }
      if (res.status == ExtendStatus::extendable) ++part.extendable;
      bool agree = ob.member == (res.status == ExtendStatus::not_extendable);
      if (!agree || !witness_ok)
        part.violations.push_back({pc, ob.member, res.status, !witness_ok});
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }

  for (const CharacterizationReport& part : parts) {
    rep.members += part.members;
    rep.extendable += part.extendable;
    rep.nodes += part.nodes;
    for (int k = 0; k < obstruction_kinds; ++k)
      rep.condition_counts[k] += part.condition_counts[k];
    for (const auto& v : part.violations)
      if (rep.violations.size() < opts.max_recorded) rep.violations.push_back(v);
    for (const auto& pc : part.unresolved) rep.unresolved.push_back(pc);
  }
  return rep;
}

}  // namespace precolor

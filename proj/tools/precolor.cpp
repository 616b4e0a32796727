// Command-line front end: extend / classify / generate / verify / export.
//
// Exit codes: 0 success (or: instance extendable), 2 usage, parse or guard
// error, 3 not extendable, 4 unknown (node cap hit).  `verify` exits 1 when a
// checked property is violated; the sampling target conj15 is report-only and
// exits 0.  Reports are JSON on stdout with a fixed field order; wall_ms is
// the only nondeterministic field.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "precolor/classify.hpp"
#include "precolor/extend.hpp"
#include "precolor/generators.hpp"
#include "precolor/harness.hpp"
#include "precolor/instance_io.hpp"
#include "precolor/solver.hpp"

using json = nlohmann::ordered_json;
using namespace precolor;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_not_extendable = 3;
constexpr int exit_unknown = 4;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string echo_command(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return exit_usage;
}

// ---------------------------------------------------------------- extend ---

struct PathOutcome {
  ExtendStatus status = ExtendStatus::unknown;
  std::vector<int> coloring;
  std::string method;
  std::string reason;
  std::uint64_t nodes = 0;
};

// Spanning subcube of the colored edges, or nothing when no edge is colored.
std::optional<Subcube> colored_span(int d, const PartialColoring& pc) {
  Vertex and_all = vertex_count(d) - 1;
  Vertex or_all = 0;
  bool any = false;
  for (std::size_t i = 0; i < pc.color.size(); ++i) {
    if (pc.color[i] == 0) continue;
    Edge e = edge_at(d, static_cast<int>(i));
    and_all &= e.lo() & e.hi();
    or_all |= e.lo() | e.hi();
    any = true;
  }
  if (!any) return std::nullopt;
  return make_subcube(and_all, and_all ^ or_all);
}

// Connected components of the colored edges (sharing a vertex), as spans.
std::vector<Subcube> colored_component_spans(int d, const PartialColoring& pc) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < pc.color.size(); ++i)
    if (pc.color[i] != 0) ids.push_back(i);
  std::vector<int> comp(ids.size(), -1);
  int comps = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (comp[i] != -1) continue;
    comp[i] = comps;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      Edge ea = edge_at(d, static_cast<int>(ids[a]));
      for (std::size_t b = 0; b < ids.size(); ++b) {
        if (comp[b] != -1) continue;
        Edge eb = edge_at(d, static_cast<int>(ids[b]));
        if (ea.touches(eb.lo()) || ea.touches(eb.hi())) {
          comp[b] = comps;
          stack.push_back(b);
        }
      }
    }
    ++comps;
  }
  std::vector<Subcube> spans;
  for (int c = 0; c < comps; ++c) {
    Vertex and_all = vertex_count(d) - 1, or_all = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (comp[i] != c) continue;
      Edge e = edge_at(d, static_cast<int>(ids[i]));
      and_all &= e.lo() & e.hi();
      or_all |= e.lo() | e.hi();
    }
    spans.push_back(make_subcube(and_all, and_all ^ or_all));
  }
  return spans;
}

// Lifts a fully colored subcube out of the precoloring; fails if any subcube
// edge is uncolored.
std::optional<SubcubeColoring> lift_subcube(int d, const PartialColoring& pc,
                                            const Subcube& s) {
  SubcubeColoring sc;
  sc.cube = s;
  for (const Edge& e : subcube_edges(s)) {
    int c = pc.color[edge_index(d, e)];
    if (c == 0) return std::nullopt;
    sc.color.push_back(c);
  }
  return sc;
}

// Constructive dispatch for hypercube instances with budget >= d.  Tries the
// shape-specific algorithms in order; returns nothing when no shape applies.
std::optional<PathOutcome> constructive_extend(int d, const PartialColoring& pc) {
  PathOutcome out;

  try {
    out.coloring = extend_small(d, pc);
    out.status = ExtendStatus::extendable;
    out.method = "small_precoloring";
    return out;
  } catch (const std::exception&) {
  }

  std::optional<Subcube> span = colored_span(d, pc);
  if (span) {
    // a single fully colored subcube
    if (auto sc = lift_subcube(d, pc, *span);
        sc && sc->color.size() == static_cast<std::size_t>(pc.colored_count())) {
      try {
        out.coloring = extend_full_subcube(d, *sc);
        out.status = ExtendStatus::extendable;
        out.method = "full_subcube";
        return out;
      } catch (const std::exception&) {
      }
    }
    // a small subcube, partially colored (the algorithm takes local edge ids)
    try {
      std::vector<Edge> amb = subcube_edges(*span);
      PartialColoring local(amb.size(), pc.budget);
      for (std::size_t i = 0; i < amb.size(); ++i)
        local.color[i] = pc.color[edge_index(d, amb[i])];
      out.coloring = extend_partial_subcube(d, *span, local);
      out.status = ExtendStatus::extendable;
      out.method = "partial_subcube";
      return out;
    } catch (const std::exception&) {
    }
  }

  // two fully colored subcubes
  std::vector<Subcube> spans = colored_component_spans(d, pc);
  if (spans.size() == 2) {
    auto s1 = lift_subcube(d, pc, spans[0]);
    auto s2 = lift_subcube(d, pc, spans[1]);
    if (s1 && s2 &&
        s1->color.size() + s2->color.size() ==
            static_cast<std::size_t>(pc.colored_count())) {
      TwoCubesInstance tci{d, *s1, *s2};
      try {
        two_cubes_precoloring(tci);  // validates the pair
        TwoCubesDecision dec = two_cubes_decide(tci);
        out.method = "two_subcubes";
        out.reason = dec.reason;
        out.status = dec.status;
        if (dec.status == ExtendStatus::extendable) out.coloring = two_cubes_extend(tci);
        return out;
      } catch (const std::exception&) {
        out = PathOutcome{};
      }
    }
  }

  try {
    out.coloring = induced_matching_extend(d, pc);
    out.status = ExtendStatus::extendable;
    out.method = "induced_matching";
    return out;
  } catch (const std::exception&) {
  }

  return std::nullopt;
}

int run_extend(const std::string& command, const std::string& input,
               const std::string& method, const std::string& out_path) {
  Timer timer;
  Instance inst = load_instance_file(input);

  PathOutcome outcome;
  bool done = false;
  bool may_construct = inst.kind == GraphKind::hypercube && inst.pc.budget >= inst.dim;

  if (method == "constructive" && !may_construct)
    return usage_error(inst.kind == GraphKind::hypercube
                           ? "constructive methods need budget >= d"
                           : "constructive methods apply to hypercube instances");

  if (method != "oracle" && may_construct) {
    if (auto res = constructive_extend(inst.dim, inst.pc)) {
      outcome = *res;
      done = true;
    } else if (method == "constructive") {
      return usage_error("no constructive path applies to this instance");
    }
  }
  if (!done) {
    ExtendResult res = is_extendable(inst);
    outcome.status = res.status;
    outcome.coloring = res.coloring;
    outcome.method = "oracle";
    outcome.nodes = res.nodes;
  }

  // trust nothing: re-check any claimed extension
  if (outcome.status == ExtendStatus::extendable) {
    bool valid = inst.kind == GraphKind::hypercube
                     ? is_cube_extension(inst.dim, inst.pc, outcome.coloring)
                     : is_proper_extension(inst.graph, inst.pc, outcome.coloring);
    if (!valid) {
      std::cerr << "internal error: produced coloring failed verification\n";
      return exit_usage;
    }
  }

  json report;
  report["command"] = command;
  report["input"] = input;
  report["method"] = method;
  report["method_used"] = outcome.method;
  report["status"] = to_string(outcome.status);
  if (!outcome.reason.empty()) report["reason"] = outcome.reason;
  report["nodes"] = outcome.nodes;
  if (outcome.status == ExtendStatus::extendable) {
    Instance total = inst;
    total.pc.color = outcome.coloring;
    std::string text = write_instance(total);
    report["extension"] = text;
    if (!out_path.empty()) {
      save_instance_file(total, out_path);
      report["out"] = out_path;
    }
  }
  report["wall_ms"] = timer.ms();
  emit(report);

  switch (outcome.status) {
    case ExtendStatus::extendable: return exit_ok;
    case ExtendStatus::not_extendable: return exit_not_extendable;
    case ExtendStatus::unknown: return exit_unknown;
  }
  return exit_usage;
}

// -------------------------------------------------------------- classify ---

int run_classify(const std::string& command, const std::string& input) {
  Timer timer;
  Instance inst = load_instance_file(input);
  if (inst.kind != GraphKind::hypercube)
    return usage_error("the classifier applies to hypercube instances");

  ObstructionReport rep = find_obstructions(inst.dim, inst.pc);

  json report;
  report["command"] = command;
  report["input"] = input;
  report["d"] = inst.dim;
  report["budget"] = inst.pc.budget;
  report["precolored"] = inst.pc.colored_count();
  report["member"] = rep.member;
  report["decisive"] = rep.decisive;
  json conditions = json::array();
  json witnesses = json::array();
  for (const Obstruction& ob : rep.found) {
    conditions.push_back(condition_label(ob.kind));
    json w;
    w["condition"] = condition_label(ob.kind);
    w["kind"] = to_string(ob.kind);
    switch (ob.kind) {
      case ObstructionKind::saturated_edge:
        w["edge"] = {ob.edge.lo(), ob.edge.hi()};
        break;
      case ObstructionKind::blocked_color:
      case ObstructionKind::surrounded_vertex:
        w["vertex"] = ob.vertex;
        w["color"] = ob.color;
        break;
      case ObstructionKind::split_matching:
        w["dim"] = ob.dim;
        break;
    }
    witnesses.push_back(w);
  }
  report["conditions"] = conditions;
  report["witnesses"] = witnesses;
  report["wall_ms"] = timer.ms();
  emit(report);
  return exit_ok;
}

// -------------------------------------------------------------- generate ---

int run_generate(const std::string& command, const std::string& family,
                 const std::string& variant, int d, int r, int n, int m,
                 std::uint64_t seed, const std::string& out_path) {
  Timer timer;
  Instance inst;
  if (family == "cor7_sharp") {
    inst = saturated_edge_instance(d);
  } else if (family == "induced_matching_sharp") {
    inst = spoiled_matching_instance(d);
  } else if (family == "chain") {
    if (variant == "mono")
      inst = chain_mono_instance(d, r);
    else if (variant.empty() || variant == "plain")
      inst = chain_instance(d, r);
    else
      throw std::invalid_argument("unknown chain variant '" + variant + "'");
  } else if (family == "doubling") {
    inst = doubling_instance(n);
  } else if (family == "knn_power") {
    inst = random_knn_power_instance(n, d, m, seed);
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }

  std::string text = write_instance(inst);
  if (out_path.empty()) {
    std::cout << text;
    return exit_ok;
  }
  save_instance_file(inst, out_path);
  json report;
  report["command"] = command;
  report["family"] = family;
  if (!variant.empty()) report["variant"] = variant;
  report["vertices"] = inst.graph.vertex_count();
  report["edges"] = inst.graph.edge_count();
  report["precolored"] = inst.pc.colored_count();
  report["budget"] = inst.pc.budget;
  report["out"] = out_path;
  report["wall_ms"] = timer.ms();
  emit(report);
  return exit_ok;
}

// ---------------------------------------------------------------- verify ---

VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return VerifyMode::exhaustive;
  if (mode == "canonical") return VerifyMode::canonical;
  if (mode == "random") return VerifyMode::random;
  throw std::invalid_argument("unknown mode '" + mode + "'");
}

int run_verify(const std::string& command, const std::string& target, int d, int n,
               const std::string& mode, std::uint64_t seed, int samples, int workers) {
  Timer timer;
  HarnessReport rep;
  if (target == "thm5") {
    rep = verify_small_extension(d, parse_mode(mode), seed, samples);
  } else if (target == "thm12") {
    VerifyOptions opts;
    opts.seed = seed;
    opts.samples = samples;
    opts.workers = workers;
    rep = verify_characterization_report(d, parse_mode(mode), opts);
  } else if (target == "claim-q3") {
    rep = verify_q3_matchings();
  } else if (target == "prop11") {
    rep = verify_induced_matchings(d);
  } else if (target == "twocubes") {
    rep = verify_two_subcubes(d);
  } else if (target == "conj15") {
    rep = verify_power_sampling(n, d, seed, samples);
  } else {
    throw std::invalid_argument("unknown target '" + target + "'");
  }

  json report;
  report["command"] = command;
  report["target"] = target;
  if (rep.d) report["d"] = rep.d;
  if (rep.n) report["n"] = rep.n;
  if (!rep.mode.empty()) report["mode"] = rep.mode;
  report["seed"] = rep.seed;
  report["workers"] = workers;
  report["instances"] = rep.instances;
  report["skipped"] = rep.skipped;
  report["extendable"] = rep.extendable;
  report["not_extendable"] = rep.not_extendable;
  report["unknown"] = rep.unknown;
  json conditions;
  for (int k = 0; k < obstruction_kinds; ++k)
    conditions[condition_label(static_cast<ObstructionKind>(k))] = rep.condition_counts[k];
  report["conditions"] = conditions;
  report["violations"] = rep.violations;
  report["counterexamples"] = rep.counterexamples;
  report["nodes"] = rep.nodes;
  report["wall_ms"] = timer.ms();
  emit(report);

  if (target == "conj15") {
    if (rep.not_extendable > 0)
      std::cerr << "WARNING: " << rep.not_extendable
                << " sampled instance(s) did not extend; counterexamples are in the "
                   "report and must be reviewed\n";
    return exit_ok;
  }
  return rep.ok() ? exit_ok : exit_violation;
}

// ---------------------------------------------------------------- export ---

int run_export(const std::string& input, const std::string& out_path) {
  Instance inst = load_instance_file(input);
  std::string dot = to_dot(inst);
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream out(out_path);
    if (!out) return usage_error("cannot open " + out_path + " for writing");
    out << dot;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial edge coloring toolkit for hypercubes and bipartite graphs"};
  app.require_subcommand(1);
  std::string command = echo_command(argc, argv);

  std::string input, out_path, method = "auto", family, variant, mode = "exhaustive";
  std::string target;
  int d = 3, r = 2, n = 3, m = -1, samples = 1000, workers = 1;
  std::uint64_t seed = 1;

  CLI::App* cmd_extend = app.add_subcommand("extend", "Extend a precoloring to a total coloring");
  cmd_extend->add_option("input", input, "instance file")->required();
  cmd_extend->add_option("--method", method, "auto|constructive|oracle")
      ->check(CLI::IsMember({"auto", "constructive", "oracle"}));
  cmd_extend->add_option("--out", out_path, "write the extension here");

  CLI::App* cmd_classify = app.add_subcommand("classify", "Test the four non-extendability conditions");
  cmd_classify->add_option("input", input, "instance file")->required();

  CLI::App* cmd_generate = app.add_subcommand("generate", "Emit a named instance family");
  cmd_generate
      ->add_option("family", family,
                   "cor7_sharp|induced_matching_sharp|chain|doubling|knn_power")
      ->required();
  cmd_generate->add_option("--variant", variant, "chain only: plain|mono");
  cmd_generate->add_option("--d", d, "dimension / copy size");
  cmd_generate->add_option("--r", r, "chain: number of copies");
  cmd_generate->add_option("--n", n, "doubling, knn_power: half-part size");
  cmd_generate->add_option("--m", m, "knn_power: precolored edges (-1: nd-1)");
  cmd_generate->add_option("--seed", seed, "knn_power: sampling seed");
  cmd_generate->add_option("--out", out_path, "write the instance here (else stdout)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "Run a verification sweep");
  cmd_verify
      ->add_option("target", target, "thm5|thm12|claim-q3|prop11|twocubes|conj15")
      ->required();
  cmd_verify->add_option("--d", d, "dimension");
  cmd_verify->add_option("--n", n, "conj15: half-part size");
  cmd_verify->add_option("--mode", mode, "exhaustive|canonical|random");
  cmd_verify->add_option("--seed", seed, "random-mode seed");
  cmd_verify->add_option("--samples", samples, "random-mode sample count");
  cmd_verify->add_option("--workers", workers, "worker threads (thm12)");

  CLI::App* cmd_export = app.add_subcommand("export", "Export an instance as DOT");
  cmd_export->add_option("input", input, "instance file")->required();
  cmd_export->add_option("--out", out_path, "write the DOT file here (else stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*cmd_extend) return run_extend(command, input, method, out_path);
    if (*cmd_classify) return run_classify(command, input);
    if (*cmd_generate)
      return run_generate(command, family, variant, d, r, n, m, seed, out_path);
    if (*cmd_verify) return run_verify(command, target, d, n, mode, seed, samples, workers);
    if (*cmd_export) return run_export(input, out_path);
  } catch (const ParseError& ex) {
    std::cerr << "parse error in " << input << ": " << ex.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& ex) {
    return usage_error(ex.what());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

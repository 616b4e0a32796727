#include <cstdio>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "precolor/generators.hpp"
#include "precolor/instance_io.hpp"
#include "precolor/solver.hpp"

using namespace precolor;

namespace {

int error_line(const std::string& text) {
  try {
    read_instance(text);
  } catch (const ParseError& ex) {
    return ex.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("hypercube instances round-trip byte-stably") {
  Instance inst = make_hypercube_instance(3, 3);
  set_cube_color(inst, 0, 1, 1);
  set_cube_color(inst, 2, 6, 2);
  set_cube_color(inst, 5, 7, 3);

  std::string text = write_instance(inst);
  Instance back = read_instance(text);
  REQUIRE(back.kind == GraphKind::hypercube);
  REQUIRE(back.dim == 3);
  REQUIRE(back.pc.budget == 3);
  REQUIRE(back.pc.color == inst.pc.color);
  REQUIRE(write_instance(back) == text);

  Instance empty = make_hypercube_instance(2, 2);
  REQUIRE(read_instance(write_instance(empty)).pc.colored_count() == 0);
}

TEST_CASE("bipartite instances renumber to a canonical form") {
  // chain vertices interleave sides per copy, so the writer's renumbering
  // is exercised for real
  Instance inst = chain_instance(2, 2);
  std::string text = write_instance(inst);
  Instance back = read_instance(text);
  REQUIRE(back.kind == GraphKind::bipartite);
  REQUIRE(back.graph.vertex_count() == inst.graph.vertex_count());
  REQUIRE(back.graph.edge_count() == inst.graph.edge_count());
  REQUIRE(back.pc.budget == inst.pc.budget);
  REQUIRE(back.pc.colored_count() == 2);
  REQUIRE(write_instance(back) == text);

  // reading preserves extendability, not just shape
  REQUIRE(is_extendable(back).status == ExtendStatus::not_extendable);
  REQUIRE(is_extendable(inst).status == ExtendStatus::not_extendable);
}

TEST_CASE("parallel edges serialize and reload") {
  BipartiteGraph g;
  int a = g.add_vertex(0);
  int b = g.add_vertex(1);
  g.add_edge(a, b);
  g.add_edge(a, b);
  Instance inst = make_bipartite_instance(std::move(g), 2);
  inst.pc.color[0] = 2;
  inst.pc.color[1] = 1;

  std::string text = write_instance(inst);
  Instance back = read_instance(text);
  REQUIRE(back.graph.edge_count() == 2);
  REQUIRE(back.pc.color == std::vector<int>{2, 1});
  REQUIRE(write_instance(back) == text);
}

TEST_CASE("power instances round-trip with colors on the same edges") {
  Instance inst = random_knn_power_instance(3, 2, 5, 11);
  std::string text = write_instance(inst);
  Instance back = read_instance(text);
  REQUIRE(back.kind == GraphKind::knn_power);
  REQUIRE(back.knn_n == 3);
  REQUIRE(back.knn_d == 2);
  REQUIRE(back.pc.color == inst.pc.color);
  REQUIRE(write_instance(back) == text);
}

TEST_CASE("comments and blank lines are skipped") {
  std::string text =
      "# fixture\n"
      "pcx 1\n"
      "\n"
      "kind hypercube\n"
      "d 2\n"
      "# the budget\n"
      "t 2\n"
      "pre 0 1 1\n"
      "end\n";
  Instance inst = read_instance(text);
  REQUIRE(inst.dim == 2);
  REQUIRE(inst.pc.colored_count() == 1);
}

TEST_CASE("parse errors carry the offending line number") {
  REQUIRE(error_line("nope\n") == 1);
  REQUIRE(error_line("pcx 2\nkind hypercube\nd 2\nt 2\nend\n") == 1);
  REQUIRE(error_line("pcx 1\nkind triangle\n") == 2);
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 99\nt 2\nend\n") == 3);
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt 0\nend\n") == 4);
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt x\nend\n") == 4);

  // non-adjacent vertices
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt 2\npre 0 3 1\nend\n") == 5);
  // color outside budget
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt 2\npre 0 1 3\nend\n") == 5);
  // same edge twice
  REQUIRE(error_line(
              "pcx 1\nkind hypercube\nd 2\nt 2\npre 0 1 1\npre 0 1 2\nend\n") == 6);
  // improper: color 1 repeats at vertex 0
  REQUIRE(error_line(
              "pcx 1\nkind hypercube\nd 2\nt 2\npre 0 1 1\npre 0 2 1\nend\n") == 6);
  // truncated
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt 2\npre 0 1 1\n") == 5);
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\n") == 3);
  // trailing content
  REQUIRE(error_line("pcx 1\nkind hypercube\nd 2\nt 2\nend\nextra\n") == 6);

  // bipartite-specific: endpoint ranges and unknown edges
  REQUIRE(error_line("pcx 1\nkind bipartite\nparts 1 1\nedges 1\ne 1 0\nt 1\nend\n") == 5);
  REQUIRE(error_line(
              "pcx 1\nkind bipartite\nparts 1 1\nedges 1\ne 0 1\nt 1\npre 0 0 1\nend\n") ==
          7);
  // power graph too large for the instance guard
  REQUIRE(error_line("pcx 1\nkind knn_power\nn 3\nd 3\nt 9\nend\n") == 4);
}

TEST_CASE("files save and load through the filesystem") {
  std::string path = "/tmp/pcx_io_test.pcx";
  Instance inst = doubling_instance(3);
  save_instance_file(inst, path);
  Instance back = load_instance_file(path);
  REQUIRE(back.kind == GraphKind::bipartite);
  REQUIRE(back.graph.vertex_count() == 10);
  REQUIRE(back.pc.colored_count() == 2);
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(load_instance_file("/tmp/definitely_missing.pcx"),
                    std::runtime_error);
}

TEST_CASE("dot export labels vertices by shape") {
  Instance cube = make_hypercube_instance(3, 3);
  set_cube_color(cube, 0, 4, 2);
  std::string dot = to_dot(cube);
  REQUIRE(dot.find("graph instance {") != std::string::npos);
  REQUIRE(dot.find("\"000\" -- \"100\" [label=\"2\" penwidth=2];") != std::string::npos);
  REQUIRE(dot.find("\"011\" -- \"111\"") != std::string::npos);

  Instance power = make_knn_power_instance(3, 2, 6);
  std::string pdot = to_dot(power);
  REQUIRE(pdot.find("\"00\"") != std::string::npos);
  REQUIRE(pdot.find("\"55\"") != std::string::npos);

  Instance flat = doubling_instance(2);
  std::string fdot = to_dot(flat);
  REQUIRE(fdot.find("\"l0\"") != std::string::npos);
  REQUIRE(fdot.find("\"r") != std::string::npos);
}

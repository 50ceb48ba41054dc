#include "doctest.h"
#include "support.hpp"

using namespace portline;

TEST_CASE("valid two-vertex graph") {
  const auto g = testing::two_vertex_graph();
  CHECK(validate(g).empty());
  const auto cg = contracted_graph(g);
  CHECK(cg.adjacencies.size() == 1);
  CHECK(cg.connected());
}

TEST_CASE("rule violations are reported with element ids") {
  PortGraph g;
  const auto a = g.add_vertex("a", 40, 24);
  const auto b = g.add_vertex("b", 0, 24);
  const auto pa = g.add_port("a.p", a);
  const auto pa2 = g.add_port("a.q", a);
  const auto pb = g.add_port("b.p", b);
  g.add_edge("ab", pa, pb);
  g.add_edge("ab2", pa, pb);  // port with two edges
  g.add_edge("loop", pa2, pa);
  g.add_pairing(pa, pb);  // across vertices
  const auto vs = validate(g);
  auto has = [&](const std::string& rule) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
  };
  CHECK(has("vertex size not positive"));
  CHECK(has("port has more than one edge"));
  CHECK(has("edge endpoints same vertex"));
  CHECK(has("pairing across vertices"));
}

TEST_CASE("disconnected graph is invalid") {
  PortGraph g = testing::two_vertex_graph();
  g.add_vertex("c", 40, 24);
  const auto vs = validate(g);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].rule == "graph disconnected");
}

TEST_CASE("duplicate ids are rejected on insertion") {
  PortGraph g;
  g.add_vertex("a", 1, 1);
  CHECK_THROWS_AS(g.add_vertex("a", 1, 1), std::invalid_argument);
}

TEST_CASE("parallel edges collapse in the contracted graph with multiplicity") {
  PortGraph g;
  const auto a = g.add_vertex("a", 40, 24);
  const auto b = g.add_vertex("b", 40, 24);
  for (int k = 0; k < 3; ++k)
    g.add_edge("e" + std::to_string(k), g.add_port("a" + std::to_string(k), a), g.add_port("b" + std::to_string(k), b));
  const auto cg = contracted_graph(g);
  REQUIRE(cg.adjacencies.size() == 1);
  CHECK(cg.multiplicity[0] == 3);
}

TEST_CASE("nested groups collect ports in document order") {
  PortGraph g;
  const auto v = g.add_vertex("v", 40, 24);
  const auto outer = g.add_group("outer", v, Side::Free, true);
  const auto p0 = g.add_port("p0", v, outer);
  const auto inner = g.add_group("inner", v, Side::Free, false, outer);
  const auto p1 = g.add_port("p1", v, inner);
  const auto p2 = g.add_port("p2", v, inner);
  const auto p3 = g.add_port("p3", v);
  CHECK(ports_of_vertex(g, v) == std::vector<PortId>{p0, p1, p2, p3});
  (void)inner;
}

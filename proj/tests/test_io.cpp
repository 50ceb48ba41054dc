#include <algorithm>
#include <regex>

#include "doctest.h"
#include "support.hpp"

using namespace portline;

namespace {

const char* kPlan = R"({
  "vertices": [
    {"id": "a", "width": 40, "height": 24},
    {"id": "b"},
    {"id": "c"},
    {"id": "d"}
  ],
  "vertexGroups": [{"id": "cd", "vertices": ["c", "d"]}],
  "ports": [
    {"id": "a1", "vertex": "a"}, {"id": "a2", "vertex": "a"},
    {"id": "b1", "vertex": "b"}, {"id": "b2", "vertex": "b"},
    {"id": "c1", "vertex": "c"}, {"id": "d1", "vertex": "d"}, {"id": "d2", "vertex": "d"}
  ],
  "portGroups": [{"id": "ga", "vertex": "a", "side": "top", "ordered": true, "children": ["a1", "a2"]}],
  "portPairings": [{"id": "pp", "ports": ["c1", "d1"]}],
  "edges": [
    {"id": "e1", "ports": ["a1", "b1"]},
    {"id": "e2", "ports": ["a1", "c1"]},
    {"id": "h", "ports": ["a2", "b2", "d2"]}
  ]
})";

}  // namespace

TEST_CASE("plan round-trips through serialization") {
  const auto raw = io::parse_plan(kPlan);
  CHECK(io::parse_plan(io::serialize_plan(raw)) == raw);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    io::parse_plan("{\n  \"vertices\": [\n    {\"id\": }\n]}");
    FAIL("no exception");
  } catch (const io::PlanError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("dangling references name the element") {
  try {
    io::parse_plan(R"({"vertices":[{"id":"a"}],"ports":[{"id":"p","vertex":"zz"}]})");
    FAIL("no exception");
  } catch (const io::PlanError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("'p'") != std::string::npos);
    CHECK(msg.find("'zz'") != std::string::npos);
  }
}

TEST_CASE("normalization splits ports, replaces hyperedges and merges vertex groups") {
  const auto plan = testing::plan_of(kPlan);
  const auto& g = plan.graph;
  CHECK(validate(g).empty());
  // a, b, merged cd, and one hyperedge vertex.
  CHECK(g.vertex_count() == 4);
  CHECK(g.find_vertex("cd"));
  CHECK(g.find_vertex("hyper:h"));
  // a1 has degree two: two siblings in a free group.
  REQUIRE(plan.provenance.split_ports.count("a1"));
  CHECK(plan.provenance.split_ports.at("a1").size() == 2);
  const auto split = g.find_group("split:a1");
  REQUIRE(split);
  CHECK(g.group(*split).side == Side::Free);
  CHECK(g.group(*split).children.size() == 2);
  // The pairing now lies inside the merged vertex.
  REQUIRE(g.pairings().size() == 1);
  CHECK(g.port(g.pairings()[0].a).vertex == g.port(g.pairings()[0].b).vertex);
  // Three hyperedge arms.
  CHECK(g.edge_count() == 2 + 3);
}

TEST_CASE("self-loop edges are dropped with a warning") {
  const auto plan = testing::plan_of(R"({"vertices":[{"id":"a"},{"id":"b"}],
    "ports":[{"id":"p","vertex":"a"},{"id":"q","vertex":"a"},{"id":"r","vertex":"b"}],
    "edges":[{"id":"loop","ports":["p","q"]},{"id":"e","ports":["p","r"]}]})");
  CHECK(plan.graph.edge_count() == 1);
  REQUIRE(plan.warnings.size() == 1);
  CHECK(plan.warnings[0].find("loop") != std::string::npos);
}

TEST_CASE("display drawing merges split ports back") {
  const auto plan = testing::plan_of(kPlan);
  const auto result = run_layout(plan, PipelineConfig{});
  const auto display = io::denormalize_for_display(result.best.drawing, plan.provenance);
  CHECK(std::count_if(display.ports.begin(), display.ports.end(), [](const DrawnPort& p) { return p.id == "a1"; }) == 1);
  for (const auto& e : display.edges) {
    CHECK(e.port_a.find('#') == std::string::npos);
    CHECK(e.port_b.find('#') == std::string::npos);
  }
  CHECK(validate_geometry(display).empty());
}

TEST_CASE("SVG output is deterministic with one decimal place") {
  const auto plan = testing::plan_of(kPlan);
  const auto a = io::emit_svg(run_layout(plan, PipelineConfig{}).display).text;
  const auto b = io::emit_svg(run_layout(plan, PipelineConfig{}).display).text;
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);
  // Every number in a coordinate attribute has at most one decimal.
  const std::regex number(R"((x|y|width|height|points)="[^"]*\d\.\d\d)");
  CHECK_FALSE(std::regex_search(a, number));
}

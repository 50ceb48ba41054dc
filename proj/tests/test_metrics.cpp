#include <algorithm>

#include "doctest.h"
#include "portline/metrics.hpp"
#include "support.hpp"

using namespace portline;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

DrawnPort& port(Drawing& d, const std::string& id) {
  return *std::find_if(d.ports.begin(), d.ports.end(), [&](const DrawnPort& p) { return p.id == id; });
}

DrawnEdge& edge(Drawing& d, const std::string& id) {
  return *std::find_if(d.edges.begin(), d.edges.end(), [&](const DrawnEdge& e) { return e.id == id; });
}

/// v has an ordered group {o0..o3} and a pairing {q0, q1}; every port leads to its own w.
/// Orders may be read either way around the boundary, so four members are needed
/// for a swap to be detectable.
PortGraph constrained_graph() {
  PortGraph g;
  const auto v = g.add_vertex("v", 60, 24);
  const auto og = g.add_group("v.ordered", v, Side::Free, true);
  std::vector<PortId> vp;
  for (int i = 0; i < 4; ++i) vp.push_back(g.add_port("o" + std::to_string(i), v, og));
  vp.push_back(g.add_port("q0", v));
  vp.push_back(g.add_port("q1", v));
  g.add_pairing(vp[4], vp[5]);
  for (std::size_t i = 0; i < vp.size(); ++i) {
    const auto w = g.add_vertex("w" + std::to_string(i), 40, 24);
    g.add_edge("e" + std::to_string(i), vp[i], g.add_port("w" + std::to_string(i) + ".p", w));
  }
  return g;
}

RunRecord record(const std::string& inst, const std::string& var, std::size_t crossings, double aspect = 1) {
  RunRecord r;
  r.instance = inst;
  r.variant = var;
  r.metrics.crossings = crossings;
  r.metrics.bends = 10;
  r.metrics.width = 100;
  r.metrics.height = 50;
  r.metrics.area = 5000;
  r.metrics.aspect = aspect;
  r.metrics.elapsed_ms = 5;
  return r;
}

}  // namespace

TEST_CASE("two edges crossing once with two bends each") {
  Drawing d;
  d.edges.push_back({"e1", "", "", {{-5, 0}, {0, 0}, {0, 10}, {10, 10}}});
  d.edges.push_back({"e2", "", "", {{5, 5}, {5, 15}, {15, 15}, {15, 20}}});
  const auto m = measure(d);
  CHECK(m.crossings == 1);
  CHECK(m.bends == 4);
  CHECK(naive_crossings(d) == 1);
  CHECK(m.width == doctest::Approx(20));
  CHECK(m.height == doctest::Approx(20));
  CHECK(m.area == doctest::Approx(400));
  CHECK(m.aspect == doctest::Approx(1));
}

TEST_CASE("touching ends and shared corners are not crossings") {
  Drawing d;
  d.edges.push_back({"e1", "", "", {{0, 0}, {10, 0}}});
  d.edges.push_back({"e2", "", "", {{10, 0}, {10, 10}}});  // T-junction at an end point
  d.edges.push_back({"e3", "", "", {{20, -5}, {20, 5}}});
  CHECK(measure(d).crossings == 0);
  CHECK(naive_crossings(d) == 0);
}

TEST_CASE("property: measured crossings match brute force on pipeline drawings") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto plan = testing::small_plan(seed, 20, 40);
    PipelineConfig cfg;
    cfg.orient = seed % 3 == 0 ? OrientMethod::Rand : OrientMethod::FD;
    const auto run = run_once(plan.graph, cfg, seed);
    CHECK(run.metrics.crossings == naive_crossings(run.drawing));
    CHECK(run.metrics.bends == count_bends(run.drawing));
    CHECK(run.metrics.area == doctest::Approx(run.metrics.width * run.metrics.height));
  }
}

TEST_CASE("the validator accepts pipeline output and catches injected faults") {
  const auto g = constrained_graph();
  REQUIRE(validate(g).empty());
  PipelineConfig cfg;
  const auto run = run_once(g, cfg, 1);
  REQUIRE(testing::violations_text(validate_drawing(run.drawing, run.graph)) == "");
  REQUIRE(run.graph.pairings().size() == 1);

  auto d = run.drawing;
  d.vertices[0].box.x1 = d.vertices[0].box.x0 + 10;
  CHECK(has_rule(validate_drawing(d, run.graph), "vertex smaller than its minimum size"));

  d = run.drawing;
  auto& p = port(d, "w0.p");
  p.box.y0 += 3;
  p.box.y1 += 3;
  CHECK(has_rule(validate_drawing(d, run.graph), "port not on vertex boundary"));

  d = run.drawing;
  auto& e = edge(d, "e0");
  e.points.insert(e.points.begin() + 1, Point{e.points[0].x + 3, e.points[0].y + 1});
  CHECK(has_rule(validate_drawing(d, run.graph), "edge segment not orthogonal"));

  d = run.drawing;
  d.edges.erase(d.edges.begin());
  CHECK(has_rule(validate_drawing(d, run.graph), "edge missing from drawing"));

  d = run.drawing;
  {
    auto& q0 = port(d, "q0");
    q0.box.x0 += d.vertices[0].box.width() + 100;  // off the pairing line and off the vertex
    q0.box.x1 += d.vertices[0].box.width() + 100;
  }
  CHECK(has_rule(validate_drawing(d, run.graph), "paired ports not aligned on opposite sides"));

  d = run.drawing;
  {
    auto& o0 = port(d, "o0");
    auto& o1 = port(d, "o1");
    REQUIRE(o0.side == o1.side);
    std::swap(o0.box, o1.box);
    CHECK(has_rule(validate_drawing(d, run.graph), "fixed port order violated"));
  }
}

TEST_CASE("a lone variant is its own baseline") {
  std::vector<RunRecord> runs{record("a", "x", 4), record("a", "x", 2), record("b", "x", 0)};
  const auto t = aggregate(runs, "x");
  for (Metric m : kAllMetrics) {
    CHECK(t.at("x").at(m).mu == doctest::Approx(1));
    CHECK(t.at("x").at(m).beta == doctest::Approx(100));
    CHECK(t.at("x").at(m).instances == 2);
  }
}

TEST_CASE("mu averages ratios of the best runs, beta counts ties") {
  std::vector<RunRecord> runs{record("i1", "base", 10), record("i1", "var", 5),  record("i1", "var", 7),
                              record("i2", "base", 4),  record("i2", "var", 8),  record("i3", "base", 0),
                              record("i3", "var", 3)};
  const auto t = aggregate(runs, "base");
  const auto& v = t.at("var").at(Metric::Crossings);
  CHECK(v.instances == 2);  // zero baseline with a nonzero variant has no ratio
  CHECK(v.mu == doctest::Approx((0.5 + 2.0) / 2));
  CHECK(v.beta == doctest::Approx(100.0 / 3));
  CHECK(t.at("base").at(Metric::Crossings).beta == doctest::Approx(200.0 / 3));
  CHECK(t.at("var").at(Metric::Bends).beta == doctest::Approx(100));
  CHECK_THROWS_AS(aggregate(runs, "missing"), std::invalid_argument);
}

TEST_CASE("aspect ratios rank by distance to one") {
  std::vector<RunRecord> runs{record("i", "base", 1, 2.0), record("i", "base", 1, 0.8), record("i", "var", 1, 1.5)};
  const auto t = aggregate(runs, "base");
  CHECK(t.at("var").at(Metric::Aspect).mu == doctest::Approx(1.5 / 0.8));
  CHECK(t.at("base").at(Metric::Aspect).beta == doctest::Approx(100));
  CHECK(t.at("var").at(Metric::Aspect).beta == doctest::Approx(0));
}

TEST_CASE("csv rows") {
  auto r = record("plan001", "fd/ports/relpos", 3);
  r.seed = 7;
  r.metrics.width = 123.45;
  CHECK(csv_header() == "instance,variant,seed,ncr,nbp,width,height,area,aspect,ms\n");
  CHECK(csv_row(r) == "plan001,fd/ports/relpos,7,3,10,123.5,50.0,5000.0,1.0000,5\n");
}

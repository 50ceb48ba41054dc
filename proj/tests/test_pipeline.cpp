#include "doctest.h"
#include "portline/metrics.hpp"
#include "support.hpp"

using namespace portline;

TEST_CASE("two vertices and one edge") {
  PipelineConfig cfg;
  const auto run = run_once(testing::two_vertex_graph(), cfg, 1);
  CHECK(run.metrics.crossings == 0);
  CHECK(run.metrics.bends == 0);
  CHECK(run.layer_count == 2);
  CHECK(testing::violations_text(validate_drawing(run.drawing, run.graph)) == "");
}

TEST_CASE("variant names") {
  PipelineConfig cfg;
  CHECK(variant_name(cfg) == "fd/ports/relpos");
  CHECK(apply_variant(cfg, "bfs/mixed/opposite"));
  CHECK(cfg.orient == OrientMethod::BFS);
  CHECK(cfg.sweep.granularity == Granularity::Mixed);
  CHECK(cfg.sweep.sink == SinkStrategy::OppositeBC);
  CHECK(variant_name(cfg) == "bfs/mixed/opposite");
  CHECK_FALSE(apply_variant(cfg, "fd/ports"));
  CHECK_FALSE(apply_variant(cfg, "fd/edges/relpos"));
}

TEST_CASE("layouts are deterministic and keep the best run") {
  const auto plan = testing::small_plan(4, 30, 40);
  PipelineConfig cfg;
  cfg.runs = 4;
  cfg.seed = 11;
  const auto a = run_layout(plan, cfg);
  const auto b = run_layout(plan, cfg);
  REQUIRE(a.runs.size() == 4);
  CHECK(io::emit_svg(a.display).text == io::emit_svg(b.display).text);
  std::size_t best = a.runs[0].crossings;
  for (const auto& r : a.runs) best = std::min(best, r.crossings);
  CHECK(a.best.metrics.crossings == best);
  CHECK(a.best.seed >= 11);
  CHECK(a.best.seed < 15);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].crossings == b.runs[i].crossings);
    CHECK(a.runs[i].width == b.runs[i].width);
  }
  CHECK(testing::violations_text(validate_drawing(a.best.drawing, a.best.graph)) == "");
  CHECK(validate_geometry(a.display).empty());
}

TEST_CASE("bench output does not depend on the job count") {
  std::vector<BenchInstance> inst;
  for (std::uint64_t s = 1; s <= 4; ++s) inst.push_back({"p" + std::to_string(s), testing::small_plan(s)});
  std::vector<PipelineConfig> variants(2);
  variants[0].runs = variants[1].runs = 2;
  apply_variant(variants[1], "rand/vertices/pseudo");
  const auto one = run_bench(inst, variants, 1);
  const auto three = run_bench(inst, variants, 3);
  CHECK(one.violations.empty());
  REQUIRE(one.runs.size() == 4 * 2 * 2);
  REQUIRE(three.runs.size() == one.runs.size());
  for (std::size_t i = 0; i < one.runs.size(); ++i) {
    CHECK(one.runs[i].instance == three.runs[i].instance);
    CHECK(one.runs[i].variant == three.runs[i].variant);
    CHECK(one.runs[i].seed == three.runs[i].seed);
    CHECK(one.runs[i].metrics.crossings == three.runs[i].metrics.crossings);
    CHECK(one.runs[i].metrics.area == three.runs[i].metrics.area);
  }
}

TEST_CASE("property: every variant draws synthetic plans validly") {
  const char* names[] = {"fd/ports/relpos", "bfs/vertices/pseudo", "rand/mixed/opposite", "fd/mixed/relpos"};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto plan = testing::small_plan(seed + 100, 20, 50);
    for (const char* name : names) {
      PipelineConfig cfg;
      REQUIRE(apply_variant(cfg, name));
      const auto run = run_once(plan.graph, cfg, seed);
      CHECK_MESSAGE(testing::violations_text(validate_drawing(run.drawing, run.graph)) == "", name << " " << seed);
      CHECK(run.metrics.crossings == naive_crossings(run.drawing));
    }
  }
}

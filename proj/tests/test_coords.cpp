#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace portline;

namespace {

struct Laid {
  io::NormalizedPlan plan;
  LayeredStructure s;
  PortGraph repaired;
};

Laid lay_out(std::uint64_t seed, int lo = 12, int hi = 24) {
  Laid l{testing::small_plan(seed, lo, hi), {}, {}};
  FdConfig fd;
  fd.seed = seed;
  const auto o = orient(l.plan.graph, OrientMethod::FD, fd);
  auto ps = build_layered_structure(l.plan.graph, o, assign_layers(l.plan.graph, o).layering);
  SweepConfig sc;
  sc.seed = seed;
  sweep(ps.structure, sc);
  l.s = std::move(ps.structure);
  l.repaired = std::move(ps.repaired);
  return l;
}

}  // namespace

TEST_CASE("a single edge runs straight") {
  const auto g = testing::two_vertex_graph();
  FdConfig fd;
  const auto o = orient(g, OrientMethod::FD, fd);
  const auto ps = build_layered_structure(g, o, assign_layers(g, o).layering);
  const auto geo = assign_coordinates(ps.structure, ps.repaired, CoordsConfig{});
  const auto& s = ps.structure;
  CHECK(geo.slot_x[s.slot_of_port[0]] == doctest::Approx(geo.slot_x[s.slot_of_port[1]]));
  for (const auto& [x0, x1] : geo.vertex_x) CHECK(x1 - x0 >= 40 - 1e-9);
}

TEST_CASE("property: rows keep delta spacing, forced columns hold, vertices reach their width") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto l = lay_out(seed);
    for (bool breaking : {true, false}) {
      CoordsConfig cfg;
      cfg.block_breaking = breaking;
      const auto ps = to_port_structure(l.s, l.repaired, cfg.delta);
      auto xa = assign_x(ps, cfg);
      close_residual_gaps(xa, ps, cfg);
      REQUIRE(xa.x.size() == ps.items.size());
      for (const auto& row : ps.rows)
        for (std::size_t i = 1; i < row.size(); ++i) CHECK(xa.x[row[i]] - xa.x[row[i - 1]] >= cfg.delta - 1e-6);
      for (const auto& [a, b] : ps.forced) CHECK(xa.x[a] == doctest::Approx(xa.x[b]));

      const auto geo = from_port_structure(ps, xa, l.s, l.repaired, cfg.delta);
      for (std::size_t v = 0; v < l.repaired.vertex_count(); ++v) {
        const auto [x0, x1] = geo.vertex_x[v];
        CHECK(x1 - x0 >= l.repaired.vertex(make_id<VertexId>(v)).min_width - 1e-6);
      }
      for (const auto& pp : l.repaired.pairings())
        CHECK(geo.slot_x[l.s.slot_of_port[idx(pp.a)]] == doctest::Approx(geo.slot_x[l.s.slot_of_port[idx(pp.b)]]));
      // Every port lies inside its vertex's horizontal extent.
      for (std::size_t p = 0; p < l.repaired.port_count(); ++p) {
        const auto v = l.repaired.ports()[p].vertex;
        const double x = geo.slot_x[l.s.slot_of_port[p]];
        CHECK(x >= geo.vertex_x[idx(v)].first);
        CHECK(x <= geo.vertex_x[idx(v)].second);
      }
    }
  }
}

TEST_CASE("closing gaps never widens a vertex") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto l = lay_out(seed, 30, 40);
    CoordsConfig cfg;
    const auto ps = to_port_structure(l.s, l.repaired, cfg.delta);
    auto xa = assign_x(ps, cfg);
    const double before = total_vertex_span(ps, xa.x);
    close_residual_gaps(xa, ps, cfg);
    CHECK(total_vertex_span(ps, xa.x) <= before + 1e-6);
  }
}

TEST_CASE("coordinates are deterministic") {
  const auto l = lay_out(5);
  const auto a = assign_coordinates(l.s, l.repaired, CoordsConfig{});
  const auto b = assign_coordinates(l.s, l.repaired, CoordsConfig{});
  CHECK(a.vertex_x == b.vertex_x);
  CHECK(a.layer_height == b.layer_height);
}

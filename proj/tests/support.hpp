#pragma once

#include <string>
#include <vector>

#include "portline/generator.hpp"
#include "portline/io.hpp"
#include "portline/model.hpp"
#include "portline/pipeline.hpp"

namespace testing {

using namespace portline;

/// Two vertices, each with one port, joined by one edge.
inline PortGraph two_vertex_graph() {
  PortGraph g;
  const auto a = g.add_vertex("a", 40, 24);
  const auto b = g.add_vertex("b", 40, 24);
  const auto pa = g.add_port("a.p", a);
  const auto pb = g.add_port("b.p", b);
  g.add_edge("e", pa, pb);
  return g;
}

/// n vertices "v0".."v{n-1}"; every listed pair gets its own edge and ports.
inline PortGraph graph_from_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
  PortGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), 40, 24);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [u, v] = pairs[k];
    const std::string e = "e" + std::to_string(k);
    const auto pu = g.add_port(e + ".a", make_id<VertexId>(u));
    const auto pv = g.add_port(e + ".b", make_id<VertexId>(v));
    g.add_edge(e, pu, pv);
  }
  return g;
}

inline io::NormalizedPlan plan_of(const std::string& json) { return io::normalize(io::parse_plan(json)); }

/// A small synthetic cable plan that normalizes to a valid graph.
inline io::NormalizedPlan small_plan(std::uint64_t seed, int min_vertices = 12, int max_vertices = 24) {
  gen::SynthConfig sc;
  sc.min_vertices = min_vertices;
  sc.max_vertices = max_vertices;
  return io::normalize(gen::synthesize_plan(sc, seed));
}

inline std::string violations_text(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    out += v.rule;
    for (const auto& e : v.elements) out += " " + e;
    out += "\n";
  }
  return out;
}

}  // namespace testing

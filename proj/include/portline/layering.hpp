#pragma once

#include <cstdint>
#include <vector>

#include "portline/model.hpp"
#include "portline/orient.hpp"

namespace portline {

struct Layering {
  std::vector<int> layer_of;  // indexed by VertexId
  int layer_count() const;
};

/// Directed arc between contracted vertices with an integer weight.
struct WeightedArc {
  std::uint32_t tail;
  std::uint32_t head;
  long weight = 1;
};

struct LayeringResult {
  Layering layering;
  std::size_t iterations = 0;
  bool cap_hit = false;  // network simplex stopped at its iteration cap
};

/// Minimizes the weighted total span by network simplex. Every arc gets
/// length at least one; the result is normalized.
LayeringResult assign_layers(std::size_t vertex_count, const std::vector<WeightedArc>& arcs);
/// Contracts the oriented graph (parallel edges become weights) and layers it.
LayeringResult assign_layers(const PortGraph& graph, const Orientation& orientation);

/// Shifts and compacts layer indices so that the minimum is 0 and no layer is empty.
Layering normalize_layers(const Layering& layering);

long total_span(const Layering& layering, const std::vector<WeightedArc>& arcs);
bool respects_arcs(const Layering& layering, const std::vector<WeightedArc>& arcs);

std::vector<WeightedArc> oriented_arcs(const PortGraph& graph, const Orientation& orientation);

}  // namespace portline

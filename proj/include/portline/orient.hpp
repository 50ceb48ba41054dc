#pragma once

#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

#include "portline/drawing.hpp"
#include "portline/model.hpp"

namespace portline {

/// Direction of every edge, indexed by EdgeId: (tail vertex, head vertex).
struct Orientation {
  std::vector<std::pair<VertexId, VertexId>> direction;
};

enum class OrientMethod { FD, BFS, Rand };

std::string_view to_string(OrientMethod m) noexcept;
std::optional<OrientMethod> orient_method_from_string(std::string_view s) noexcept;

struct FdConfig {
  int iterations = 500;
  int restarts = 1;
  double width = 0;   // 0: derived from the vertex count
  double height = 0;
  std::uint64_t seed = 1;
};

Orientation orient_bfs(const PortGraph& graph, std::uint64_t seed);

/// Fruchterman-Reingold spring embedder on the contracted graph. With several
/// restarts the layout whose upward drawing has the fewest straight-line
/// crossings wins (earliest restart on ties).
std::vector<Point> layout_force_directed(const PortGraph& graph, const FdConfig& config);

/// Edges point from lower to higher y; equal y falls back to vertex id order.
Orientation orient_by_y(const PortGraph& graph, const std::vector<Point>& positions);

Orientation orient_rand(const PortGraph& graph, std::uint64_t seed);

Orientation orient(const PortGraph& graph, OrientMethod method, const FdConfig& config);

/// Drawing area used by FD and Rand when the config leaves it open.
std::pair<double, double> default_area(std::size_t vertex_count);

/// Kahn topological sort on the oriented contracted graph.
bool is_acyclic(std::size_t vertex_count, const Orientation& orientation);

/// Pairs of straight segments between positions that properly cross.
std::size_t straight_line_crossings(const ContractedGraph& cg, const std::vector<Point>& positions);

}  // namespace portline

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "portline/layered.hpp"
#include "portline/model.hpp"

namespace portline {

struct CoordsConfig {
  double delta = 8;           // minimum distance of consecutive ports
  double break_multiple = 16; // T = break_multiple * delta
  bool block_breaking = true;
  bool close_gaps = true;
  int break_iterations = 200;  // per pass
  double threshold() const { return break_multiple * delta; }
};

enum class ItemKind { Port, LongDummy, Separator, Padding };

struct PsItem {
  ItemKind kind = ItemKind::Port;
  std::uint32_t row = 0;
  std::optional<std::uint32_t> slot;   // Port and LongDummy
  std::optional<VertexId> vertex;      // Port and Padding
};

/// Each real layer k becomes rows 2k (bottom ports) and 2k + 1 (top ports).
/// Extra rows are folded into the arcs that pass them.
struct PortStructure {
  std::vector<std::vector<std::uint32_t>> rows;  // items left to right
  std::vector<PsItem> items;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> forced;  // (lower, upper) inside a layer
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;    // (lower, upper) across a corridor
  std::vector<char> inner;                                      // per arc: both ends long-edge dummies
  std::vector<std::optional<std::uint32_t>> item_of_slot;
  std::size_t vertex_count = 0;
};

PortStructure to_port_structure(const LayeredStructure& s, const PortGraph& graph, double delta);

struct XAssignment {
  std::vector<double> x;  // per item
  std::size_t blocks_broken = 0;
};

/// Four-pass median alignment with forced columns, block breaking at the
/// threshold, and balancing by averaging.
XAssignment assign_x(const PortStructure& ps, const CoordsConfig& config);

/// Pushes the right part of a vertex left where a gap above the threshold
/// survived; paired columns move together.
void close_residual_gaps(XAssignment& xa, const PortStructure& ps, const CoordsConfig& config);

/// Sum over real vertices of the span of their items.
double total_vertex_span(const PortStructure& ps, const std::vector<double>& x);

/// Per-vertex horizontal extent and per-slot x, ready for routing.
struct Geometry {
  std::vector<double> slot_x;              // NaN for slots on extra rows
  std::vector<std::pair<double, double>> vertex_x;  // box [x0, x1]
  std::vector<double> layer_height;
};

Geometry from_port_structure(const PortStructure& ps, const XAssignment& xa, const LayeredStructure& s,
                             const PortGraph& graph, double delta);

/// Convenience: structure to geometry with the given configuration.
Geometry assign_coordinates(const LayeredStructure& s, const PortGraph& graph, const CoordsConfig& config,
                            std::size_t* blocks_broken = nullptr);

}  // namespace portline

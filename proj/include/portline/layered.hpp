#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "portline/model.hpp"
#include "portline/order_tree.hpp"

namespace portline {

enum class NodeKind { Real, LongDummy, TurningDummy };

/// Attachment point on one side of a node. Real vertices have one slot per
/// port; long-edge dummies one per side; a turning dummy a single slot that
/// carries all of its segments.
struct Slot {
  std::uint32_t node = 0;
  Side side = Side::Top;  // Top or Bottom
  std::optional<PortId> port;
};

struct LNode {
  NodeKind kind = NodeKind::Real;
  std::uint32_t row = 0;
  std::optional<VertexId> vertex;  // Real: itself; TurningDummy: owner
  std::optional<EdgeId> edge;      // LongDummy only
  std::vector<std::uint32_t> top;     // slots, left to right
  std::vector<std::uint32_t> bottom;  // slots, left to right
  OrderTree top_tree, bottom_tree;    // Real only
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairings;  // (top slot, bottom slot)
};

/// Piece of an edge between adjacent rows: from a top slot on row r to a
/// bottom slot on row r + 1.
struct Segment {
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;
  EdgeId edge{};
};

enum class RowKind { ExtraBelow, Real, ExtraAbove };

struct Row {
  int layer = 0;  // real layer this row belongs to
  RowKind kind = RowKind::Real;
  std::vector<std::uint32_t> nodes;  // left to right
};

/// Slots visited by an edge, from the port `edge.a` to the port `edge.b`.
struct EdgeRoute {
  EdgeId edge{};
  std::vector<std::uint32_t> slots;
};

/// Part of an edge route inside one corridor or one layer. Corridor c lies
/// between real layers c - 1 and c.
enum class PieceKind {
  Arc,          // top slot of layer c - 1 to bottom slot of layer c
  Cap,          // two top slots of layer c - 1, turning above it
  Cup,          // two bottom slots of layer c, turning below it
  PassThrough,  // long-edge dummy on a real row: bottom slot to top slot
};

struct Piece {
  EdgeId edge{};
  PieceKind kind = PieceKind::Arc;
  std::uint32_t a = 0;  // slots in route order
  std::uint32_t b = 0;
  int corridor = 0;     // layer index for PassThrough
};

/// Working state of phases 3 to 5.
struct LayeredStructure {
  std::vector<Row> rows;
  std::vector<LNode> nodes;
  std::vector<Slot> slots;
  std::vector<Segment> segments;
  std::vector<std::vector<std::uint32_t>> gap_segments;  // segments between row r and r + 1
  std::vector<EdgeRoute> routes;                         // indexed by EdgeId
  std::vector<std::uint32_t> real_row;                   // real layer -> row index
  std::vector<std::uint32_t> node_of_vertex;             // VertexId -> node
  std::vector<std::uint32_t> slot_of_port;               // PortId -> slot
  std::vector<Side> port_side;                           // PortId -> Top/Bottom

  std::size_t layer_count() const { return real_row.size(); }
  const std::vector<std::uint32_t>& side_slots(std::uint32_t node, Side s) const {
    return s == Side::Top ? nodes[node].top : nodes[node].bottom;
  }
  /// Rebuild a real node's slot vectors from its trees.
  void flatten(std::uint32_t node);
  std::size_t dummy_count(NodeKind kind) const;
  bool on_real_row(std::uint32_t slot) const { return rows[nodes[slots[slot].node].row].kind == RowKind::Real; }
};

/// Splits every route at the slots on real rows; extra-row dummies vanish
/// inside the pieces. Pieces of one edge appear consecutively in route order.
std::vector<Piece> route_pieces(const LayeredStructure& s);

}  // namespace portline

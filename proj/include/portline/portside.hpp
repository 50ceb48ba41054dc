#pragma once

#include <string>
#include <vector>

#include "portline/layered.hpp"
#include "portline/layering.hpp"
#include "portline/model.hpp"
#include "portline/orient.hpp"

namespace portline {

struct SideAssignment {
  std::vector<Side> port_side;  // Top or Bottom, indexed by PortId
  PortGraph repaired;           // conflicting group sides fixed, unsatisfiable pairings removed
  std::vector<std::string> log;
};

/// Assigns every port to the top or bottom side. Each top-level child of a
/// vertex (a "unit") lands on one side as a whole.
SideAssignment assign_port_sides(const PortGraph& graph, const Orientation& orientation);

/// A vertex whose left/right ports were moved to the top and bottom sides.
/// Elements are named by id because the instruction is applied to a Drawing.
struct ShrinkInstruction {
  std::string vertex;
  std::vector<std::string> left_ports;   // ports that belong on the left side
  std::vector<std::string> right_ports;
  Side left_side = Side::Top;             // row the left part was parked on
  Side right_side = Side::Top;
  // Separator pairs delimiting the inner part; both separators of a pair share x.
  std::string left_sep_top, left_sep_bottom, right_sep_top, right_sep_bottom;
  std::vector<std::string> fillers;       // edgeless ports reserving inner width
};

struct LeftRightResult {
  PortGraph graph;
  std::vector<ShrinkInstruction> shrink;
  std::vector<std::string> log;
};

/// Moves ports of Left/Right groups onto the top and bottom sides inside two
/// fixed top-level groups [left part | middle | right part], one per side.
/// Pairings touching a left or right port are dropped. Experimental.
LeftRightResult transform_left_right_groups(const PortGraph& graph, const Orientation& orientation,
                                            double delta = 8);

struct Reconciled {
  PortGraph graph;
  std::vector<std::string> log;
};

/// The original graph with the repairs made along the way applied: group
/// sides fixed by side assignment and only the surviving pairings. This is the
/// graph a shrunk drawing is validated against.
Reconciled reconcile_left_right(const PortGraph& original, const PortGraph& transformed_repaired);

struct PortsideResult {
  LayeredStructure structure;
  PortGraph repaired;
  std::vector<std::string> log;
};

/// Side assignment, turning dummies on extra layers and long-edge subdivision.
/// Initial port orders satisfy all group and pairing constraints.
PortsideResult build_layered_structure(const PortGraph& graph, const Orientation& orientation,
                                       const Layering& layering);

/// True iff every segment joins adjacent rows, slot sides match, and paired
/// ports sit on opposite sides.
bool structure_consistent(const LayeredStructure& s);

}  // namespace portline

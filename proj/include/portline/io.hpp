#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "portline/drawing.hpp"
#include "portline/model.hpp"

namespace portline::io {

/// Thrown for malformed plan files; `what()` carries line or path context.
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawVertex {
  std::string id;
  std::string label;
  double width = 40;
  double height = 24;

  friend bool operator==(const RawVertex&, const RawVertex&) = default;
};

struct RawVertexGroup {
  std::string id;
  std::vector<std::string> vertices;

  friend bool operator==(const RawVertexGroup&, const RawVertexGroup&) = default;
};

struct RawPort {
  std::string id;
  std::string vertex;
  std::string label;

  friend bool operator==(const RawPort&, const RawPort&) = default;
};

struct RawPortGroup {
  std::string id;
  std::string vertex;
  Side side = Side::Free;
  bool ordered = false;
  std::vector<std::string> children;  // port or port-group ids

  friend bool operator==(const RawPortGroup&, const RawPortGroup&) = default;
};

struct RawPairing {
  std::string id;
  std::string a;
  std::string b;

  friend bool operator==(const RawPairing&, const RawPairing&) = default;
};

/// Edge over two or more ports (more than two: hyperedge).
struct RawEdge {
  std::string id;
  std::vector<std::string> ports;

  friend bool operator==(const RawEdge&, const RawEdge&) = default;
};

/// A plan as found in a file: ports may carry several edges, edges may be
/// hyperedges and vertices may be bundled into vertex groups.
struct RawPlan {
  std::vector<RawVertex> vertices;
  std::vector<RawVertexGroup> vertex_groups;
  std::vector<RawPort> ports;
  std::vector<RawPortGroup> port_groups;
  std::vector<RawPairing> pairings;
  std::vector<RawEdge> edges;

  friend bool operator==(const RawPlan&, const RawPlan&) = default;
};


RawPlan parse_plan(std::string_view text);
RawPlan read_plan_file(const std::string& path);
std::string serialize_plan(const RawPlan& plan);
void write_plan_file(const std::string& path, const RawPlan& plan);

/// Checks cross references; returns the first problem as a message, empty if fine.
std::string check_references(const RawPlan& plan);

/// Records how normalized elements relate to the raw plan.
struct Provenance {
  std::map<std::string, std::vector<std::string>> split_ports;  // raw port -> split ports
  std::map<std::string, std::string> split_origin;              // split port -> raw port
  std::vector<std::string> hyperedge_vertices;
  std::map<std::string, std::string> merged_vertices;           // member vertex -> group vertex
};

struct NormalizedPlan {
  PortGraph graph;
  Provenance provenance;
  std::vector<std::string> warnings;
};

/// Size given to the dummy vertex that replaces a hyperedge.
inline constexpr double kHyperVertexSize = 12;

NormalizedPlan normalize(const RawPlan& raw);

/// Collapses split-port siblings back into one drawn port per raw port.
Drawing denormalize_for_display(const Drawing& drawing, const Provenance& provenance);

struct SvgOptions {
  double margin = 20;
  bool labels = true;
};

struct SvgDocument {
  std::string text;
  double width = 0;
  double height = 0;
};

SvgDocument emit_svg(const Drawing& drawing, const SvgOptions& options = {});

}  // namespace portline::io

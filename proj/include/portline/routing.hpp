#pragma once

#include <optional>
#include <vector>

#include "portline/coords.hpp"
#include "portline/drawing.hpp"
#include "portline/layered.hpp"
#include "portline/portside.hpp"

namespace portline {

struct RoutingConfig {
  double delta = 8;      // line pitch
  double port_size = 4;  // ports are squares outside the vertex box
};

/// Bands of one corridor from bottom to top: caps, left-going arcs,
/// right-going arcs, cups. Vertical arcs take no line.
enum class Band { Cap, Left, Right, Cup, Vertical };

/// Horizontal extent of a corridor piece. For arcs, the left end of a
/// right-going arc and the right end of a left-going arc sit on the lower
/// boundary; caps have both ends on the lower boundary, cups on the upper one.
struct BandPiece {
  Band band = Band::Right;
  double left = 0;
  double right = 0;
};

struct LineAssignment {
  std::vector<int> line;           // absolute line from the corridor bottom; -1 for vertical arcs
  std::vector<char> detour;        // left-going arc rerouted over the top line
  std::vector<double> detour_x;    // x of the detour's second vertical
  std::optional<int> star_line;    // top line used by detours
  int line_count = 0;
};

/// Greedy lines for arcs of one direction (or for caps or cups); index 0 is the
/// line nearest to where processing starts. Returns per-piece indices.
std::vector<int> greedy_band_lines(const std::vector<BandPiece>& pieces);

/// Full corridor: bands, contour merging, and the top line for left-going arcs
/// whose upper end shares an x with the lower end of a right-going one.
LineAssignment assign_lines(const std::vector<BandPiece>& pieces, double delta);

/// True iff the assignment keeps every intersecting pair on distinct lines,
/// respects the nesting rules inside each band, and puts the upper-attached
/// leg above the lower-attached one wherever two legs share an x.
bool lines_valid(const std::vector<BandPiece>& pieces, const LineAssignment& la);

struct RoutedDrawing {
  Drawing drawing;
  std::vector<int> corridor_lines;
  std::size_t detours = 0;
};

RoutedDrawing build_drawing(const LayeredStructure& s, const PortGraph& graph, const Geometry& geo,
                            const RoutingConfig& config, const std::vector<ShrinkInstruction>& shrink = {});

}  // namespace portline

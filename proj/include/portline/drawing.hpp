#pragma once

#include <string>
#include <vector>

#include "portline/model.hpp"

namespace portline {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle, x0 <= x1 and y0 <= y1. y grows upwards (layer 0 lowest).
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
};

struct DrawnVertex {
  std::string id;
  std::string label;
  Rect box;
};

struct DrawnPort {
  std::string id;
  std::string vertex;
  Side side = Side::Top;  // never Free in a drawing
  Rect box;
};

struct DrawnEdge {
  std::string id;
  std::string port_a;
  std::string port_b;
  std::vector<Point> points;  // orthogonal polyline from port_a to port_b
};

struct DrawnPairing {
  std::string a;
  std::string b;
};

struct Drawing {
  std::vector<DrawnVertex> vertices;
  std::vector<DrawnPort> ports;
  std::vector<DrawnEdge> edges;
  std::vector<DrawnPairing> pairings;

  bool empty() const noexcept { return vertices.empty() && ports.empty() && edges.empty(); }
  /// Bounding box over all rectangles and polyline points; zero box when empty.
  Rect bounds() const;
  void translate(double dx, double dy);
};

}  // namespace portline

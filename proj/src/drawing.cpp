#include "portline/drawing.hpp"

#include <algorithm>
#include <limits>

namespace portline {

Rect Drawing::bounds() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Rect r{inf, inf, -inf, -inf};
  auto grow = [&](double x, double y) {
    r.x0 = std::min(r.x0, x);
    r.y0 = std::min(r.y0, y);
    r.x1 = std::max(r.x1, x);
    r.y1 = std::max(r.y1, y);
  };
  for (const auto& v : vertices) {
    grow(v.box.x0, v.box.y0);
    grow(v.box.x1, v.box.y1);
  }
  for (const auto& p : ports) {
    grow(p.box.x0, p.box.y0);
    grow(p.box.x1, p.box.y1);
  }
  for (const auto& e : edges)
    for (const auto& pt : e.points) grow(pt.x, pt.y);
  if (r.x0 > r.x1) return Rect{};
  return r;
}

void Drawing::translate(double dx, double dy) {
  auto move = [&](Rect& b) {
    b.x0 += dx;
    b.x1 += dx;
    b.y0 += dy;
    b.y1 += dy;
  };
  for (auto& v : vertices) move(v.box);
  for (auto& p : ports) move(p.box);
  for (auto& e : edges)
    for (auto& pt : e.points) {
      pt.x += dx;
      pt.y += dy;
    }
}

}  // namespace portline

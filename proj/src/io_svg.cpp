#include <cstdio>
#include <string>
#include <unordered_map>

#include "portline/io.hpp"

namespace portline::io {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  std::string s = buf;
  if (s == "-0.0") s = "0.0";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgDocument emit_svg(const Drawing& drawing, const SvgOptions& options) {
  const Rect b = drawing.bounds();
  const double m = options.margin;
  SvgDocument doc;
  doc.width = b.width() + 2 * m;
  doc.height = b.height() + 2 * m;
  // Flip y so that layer 0 ends up at the bottom of the canvas.
  auto sx = [&](double x) { return fmt(x - b.x0 + m); };
  auto sy = [&](double y) { return fmt(b.y1 - y + m); };
  auto rect = [&](const Rect& r, const char* cls) {
    return "<rect class=\"" + std::string(cls) + "\" x=\"" + sx(r.x0) + "\" y=\"" + sy(r.y1) + "\" width=\"" +
           fmt(r.width()) + "\" height=\"" + fmt(r.height()) + "\"/>\n";
  };

  std::string& s = doc.text;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(doc.width) + "\" height=\"" +
       fmt(doc.height) + "\" viewBox=\"0 0 " + fmt(doc.width) + " " + fmt(doc.height) + "\">\n";
  s += "<style>.v{fill:#f4f4f4;stroke:#333;stroke-width:1}.p{fill:#888;stroke:none}"
       ".e{fill:none;stroke:#1f4e9c;stroke-width:1}.pp{stroke:#c33;stroke-width:1}"
       "text{font:8px sans-serif;text-anchor:middle;dominant-baseline:central}</style>\n";

  s += "<g id=\"vertices\">\n";
  for (const auto& v : drawing.vertices) {
    s += rect(v.box, "v");
    if (options.labels && !v.label.empty())
      s += "<text x=\"" + sx((v.box.x0 + v.box.x1) / 2) + "\" y=\"" + sy((v.box.y0 + v.box.y1) / 2) + "\">" +
           escape(v.label) + "</text>\n";
  }
  s += "</g>\n<g id=\"pairings\">\n";
  std::unordered_map<std::string, const DrawnPort*> port_by_id;
  for (const auto& p : drawing.ports) port_by_id[p.id] = &p;
  for (const auto& pp : drawing.pairings) {
    auto a = port_by_id.find(pp.a);
    auto c = port_by_id.find(pp.b);
    if (a == port_by_id.end() || c == port_by_id.end()) continue;
    auto inner = [](const DrawnPort& p) {
      const Rect& r = p.box;
      switch (p.side) {
        case Side::Top: return Point{(r.x0 + r.x1) / 2, r.y0};
        case Side::Bottom: return Point{(r.x0 + r.x1) / 2, r.y1};
        case Side::Left: return Point{r.x1, (r.y0 + r.y1) / 2};
        default: return Point{r.x0, (r.y0 + r.y1) / 2};
      }
    };
    const Point p = inner(*a->second);
    const Point q = inner(*c->second);
    s += "<line class=\"pp\" x1=\"" + sx(p.x) + "\" y1=\"" + sy(p.y) + "\" x2=\"" + sx(q.x) + "\" y2=\"" + sy(q.y) +
         "\"/>\n";
  }
  s += "</g>\n<g id=\"ports\">\n";
  for (const auto& p : drawing.ports) s += rect(p.box, "p");
  s += "</g>\n<g id=\"edges\">\n";
  for (const auto& e : drawing.edges) {
    s += "<polyline class=\"e\" points=\"";
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      if (i) s += ' ';
      s += sx(e.points[i].x) + "," + sy(e.points[i].y);
    }
    s += "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return doc;
}

}  // namespace portline::io

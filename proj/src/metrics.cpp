#include "portline/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace portline {

namespace {

constexpr double kEps = 1e-7;

struct Seg {
  double x0, y0, x1, y1;  // normalized: x0 <= x1, y0 <= y1
  std::size_t edge;
  std::size_t index;
  bool horizontal() const { return y0 == y1; }
};

std::vector<Seg> segments_of(const Drawing& d) {
  std::vector<Seg> out;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& pts = d.edges[e].points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[i + 1];
      out.push_back({std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y), e, i});
    }
  }
  return out;
}

bool proper_cross(const Seg& h, const Seg& v) {
  return h.x0 < v.x0 && v.x0 < h.x1 && v.y0 < h.y0 && h.y0 < v.y1;
}

bool orthogonal(const Seg& s) { return (s.x0 == s.x1) != (s.y0 == s.y1); }

// Any shared point that is not a proper crossing.
bool touches(const Seg& a, const Seg& b) {
  if (a.x0 > b.x1 + kEps || b.x0 > a.x1 + kEps || a.y0 > b.y1 + kEps || b.y0 > a.y1 + kEps) return false;
  if (a.horizontal() != b.horizontal()) {
    const Seg& h = a.horizontal() ? a : b;
    const Seg& v = a.horizontal() ? b : a;
    return !proper_cross(h, v);
  }
  if (a.horizontal()) return std::abs(a.y0 - b.y0) <= kEps;
  return std::abs(a.x0 - b.x0) <= kEps;
}

}  // namespace

std::size_t count_bends(const Drawing& drawing) {
  std::size_t bends = 0;
  for (const auto& e : drawing.edges) {
    const auto& p = e.points;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      const bool h1 = p[i - 1].y == p[i].y, h2 = p[i].y == p[i + 1].y;
      const bool v1 = p[i - 1].x == p[i].x, v2 = p[i].x == p[i + 1].x;
      if (!((h1 && h2) || (v1 && v2))) ++bends;
    }
  }
  return bends;
}

std::size_t naive_crossings(const Drawing& drawing) {
  const auto segs = segments_of(drawing);
  std::size_t c = 0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& a = segs[i];
      const auto& b = segs[j];
      if (a.edge == b.edge || a.horizontal() == b.horizontal()) continue;
      if (a.horizontal() ? proper_cross(a, b) : proper_cross(b, a)) ++c;
    }
  return c;
}

MetricsRecord measure(const Drawing& drawing, double elapsed_ms) {
  MetricsRecord r;
  const auto segs = segments_of(drawing);
  // Sweep over x; active horizontals counted by a Fenwick tree over y.
  std::vector<double> ys;
  for (const auto& s : segs)
    if (s.horizontal() && s.x0 < s.x1) ys.push_back(s.y0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<long> bit(ys.size() + 1, 0);
  auto update = [&](std::size_t i, long d) {
    for (++i; i < bit.size(); i += i & (~i + 1)) bit[i] += d;
  };
  auto below = [&](double y) {  // active horizontals with y' < y
    long c = 0;
    for (auto i = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()); i > 0;
         i -= i & (~i + 1))
      c += bit[i];
    return c;
  };
  auto atmost = [&](double y) {
    return below(std::nextafter(y, std::numeric_limits<double>::infinity()));
  };
  struct Event {
    double x;
    int type;  // 0 end, 1 query, 2 start: strict inequalities at equal x
    std::size_t seg;
  };
  std::vector<Event> ev;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.horizontal()) {
      if (s.x0 == s.x1) continue;
      ev.push_back({s.x0, 2, i});
      ev.push_back({s.x1, 0, i});
    } else if (s.x0 == s.x1 && s.y0 < s.y1) {
      ev.push_back({s.x0, 1, i});
    }
  }
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    return a.x < b.x || (a.x == b.x && a.type < b.type);
  });
  long total = 0;
  for (const auto& e : ev) {
    const auto& s = segs[e.seg];
    const auto yi = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), s.y0) - ys.begin());
    if (e.type == 2)
      update(yi, 1);
    else if (e.type == 0)
      update(yi, -1);
    else
      total += below(s.y1) - atmost(s.y0);
  }
  // Remove crossings of an edge with itself.
  std::size_t start = 0;
  while (start < segs.size()) {
    std::size_t end = start;
    while (end < segs.size() && segs[end].edge == segs[start].edge) ++end;
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t j = i + 1; j < end; ++j) {
        const auto& a = segs[i];
        const auto& b = segs[j];
        if (a.horizontal() == b.horizontal()) continue;
        if (a.horizontal() ? proper_cross(a, b) : proper_cross(b, a)) --total;
      }
    start = end;
  }
  r.crossings = static_cast<std::size_t>(total);
  r.bends = count_bends(drawing);
  const auto bb = drawing.bounds();
  r.width = bb.width();
  r.height = bb.height();
  r.area = r.width * r.height;
  r.aspect = r.height > 0 ? r.width / r.height : 1.0;
  r.elapsed_ms = elapsed_ms;
  return r;
}

namespace {

bool open_overlap(const Rect& a, const Rect& b) {
  return a.x0 < b.x1 - kEps && b.x0 < a.x1 - kEps && a.y0 < b.y1 - kEps && b.y0 < a.y1 - kEps;
}

bool seg_hits_interior(const Seg& s, const Rect& r) {
  return s.x0 < r.x1 - kEps && s.x1 > r.x0 + kEps && s.y0 < r.y1 - kEps && s.y1 > r.y0 + kEps;
}

bool seg_touches_rect(const Seg& s, const Rect& r) {
  return s.x0 <= r.x1 + kEps && s.x1 >= r.x0 - kEps && s.y0 <= r.y1 + kEps && s.y1 >= r.y0 - kEps;
}

bool on_outer_side(const Point& p, const DrawnPort& port) {
  const auto& b = port.box;
  switch (port.side) {
    case Side::Top: return std::abs(p.y - b.y1) <= kEps && p.x >= b.x0 - kEps && p.x <= b.x1 + kEps;
    case Side::Bottom: return std::abs(p.y - b.y0) <= kEps && p.x >= b.x0 - kEps && p.x <= b.x1 + kEps;
    case Side::Left: return std::abs(p.x - b.x0) <= kEps && p.y >= b.y0 - kEps && p.y <= b.y1 + kEps;
    case Side::Right: return std::abs(p.x - b.x1) <= kEps && p.y >= b.y0 - kEps && p.y <= b.y1 + kEps;
    case Side::Free: return false;
  }
  return false;
}

bool attached(const DrawnPort& p, const Rect& v) {
  const auto& b = p.box;
  const bool in_x = b.x0 >= v.x0 - kEps && b.x1 <= v.x1 + kEps;
  const bool in_y = b.y0 >= v.y0 - kEps && b.y1 <= v.y1 + kEps;
  switch (p.side) {
    case Side::Top: return in_x && std::abs(b.y0 - v.y1) <= kEps;
    case Side::Bottom: return in_x && std::abs(b.y1 - v.y0) <= kEps;
    case Side::Left: return in_y && std::abs(b.x1 - v.x0) <= kEps;
    case Side::Right: return in_y && std::abs(b.x0 - v.x1) <= kEps;
    case Side::Free: return false;
  }
  return false;
}

// Position along the clockwise boundary walk starting at the top-left corner.
double walk_position(const DrawnPort& p, const Rect& v) {
  const double W = v.width(), H = v.height();
  const double cx = (p.box.x0 + p.box.x1) / 2, cy = (p.box.y0 + p.box.y1) / 2;
  switch (p.side) {
    case Side::Top: return cx - v.x0;
    case Side::Right: return W + (v.y1 - cy);
    case Side::Bottom: return W + H + (v.x1 - cx);
    case Side::Left: return 2 * W + H + (cy - v.y0);
    case Side::Free: return 0;
  }
  return 0;
}

}  // namespace

std::vector<Violation> validate_geometry(const Drawing& d) {
  std::vector<Violation> out;
  std::unordered_map<std::string, std::size_t> vi, pi;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) vi[d.vertices[i].id] = i;
  for (std::size_t i = 0; i < d.ports.size(); ++i) pi[d.ports[i].id] = i;

  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < d.vertices.size(); ++j)
      if (open_overlap(d.vertices[i].box, d.vertices[j].box))
        out.push_back({"vertex rectangles overlap", {d.vertices[i].id, d.vertices[j].id}});
  for (const auto& p : d.ports) {
    auto it = vi.find(p.vertex);
    if (it == vi.end()) {
      out.push_back({"port on unknown vertex", {p.id}});
      continue;
    }
    if (p.side == Side::Free) out.push_back({"port without side", {p.id}});
    if (!attached(p, d.vertices[it->second].box)) out.push_back({"port not on vertex boundary", {p.id}});
    for (const auto& v : d.vertices)
      if (open_overlap(p.box, v.box)) out.push_back({"port overlaps a vertex", {p.id, v.id}});
  }
  for (std::size_t i = 0; i < d.ports.size(); ++i)
    for (std::size_t j = i + 1; j < d.ports.size(); ++j)
      if (open_overlap(d.ports[i].box, d.ports[j].box)) out.push_back({"ports overlap", {d.ports[i].id, d.ports[j].id}});

  for (const auto& pp : d.pairings) {
    auto a = pi.find(pp.a), b = pi.find(pp.b);
    if (a == pi.end() || b == pi.end()) {
      out.push_back({"pairing names unknown port", {pp.a, pp.b}});
      continue;
    }
    const auto& A = d.ports[a->second];
    const auto& B = d.ports[b->second];
    const bool vertical = (A.side == Side::Top && B.side == Side::Bottom) || (A.side == Side::Bottom && B.side == Side::Top);
    const bool horizontal = (A.side == Side::Left && B.side == Side::Right) || (A.side == Side::Right && B.side == Side::Left);
    bool ok = false;
    if (vertical) ok = std::abs((A.box.x0 + A.box.x1) - (B.box.x0 + B.box.x1)) <= 2 * kEps;
    if (horizontal) ok = std::abs((A.box.y0 + A.box.y1) - (B.box.y0 + B.box.y1)) <= 2 * kEps;
    if (!ok) out.push_back({"paired ports not aligned on opposite sides", {pp.a, pp.b}});
  }

  const auto segs = segments_of(d);
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& edge = d.edges[e];
    if (edge.points.size() < 2) {
      out.push_back({"edge without polyline", {edge.id}});
      continue;
    }
    auto a = pi.find(edge.port_a), b = pi.find(edge.port_b);
    if (a == pi.end() || b == pi.end()) {
      out.push_back({"edge names unknown port", {edge.id}});
      continue;
    }
    if (!on_outer_side(edge.points.front(), d.ports[a->second]) || !on_outer_side(edge.points.back(), d.ports[b->second]))
      out.push_back({"edge does not end at its ports", {edge.id}});
  }
  for (const auto& s : segs) {
    if (!orthogonal(s)) out.push_back({"edge segment not orthogonal", {d.edges[s.edge].id}});
    const auto& edge = d.edges[s.edge];
    for (const auto& v : d.vertices)
      if (seg_hits_interior(s, v.box)) out.push_back({"edge passes through a vertex", {edge.id, v.id}});
    for (const auto& p : d.ports) {
      if (p.id == edge.port_a || p.id == edge.port_b) continue;
      if (seg_touches_rect(s, p.box)) out.push_back({"edge touches a foreign port", {edge.id, p.id}});
    }
  }
  // Contacts between segments. Sorting by x0 bounds the pair scan.
  std::vector<std::size_t> order(segs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return segs[a].x0 < segs[b].x0; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& a = segs[order[i]];
    for (std::size_t j = i + 1; j < order.size() && segs[order[j]].x0 <= a.x1 + kEps; ++j) {
      const auto& b = segs[order[j]];
      if (a.edge == b.edge) {
        const auto gap = a.index > b.index ? a.index - b.index : b.index - a.index;
        if (gap <= 1) continue;
        if (touches(a, b)) out.push_back({"edge touches itself", {d.edges[a.edge].id}});
        continue;
      }
      if (touches(a, b)) out.push_back({"edges overlap or touch", {d.edges[a.edge].id, d.edges[b.edge].id}});
    }
  }
  return out;
}

std::vector<Violation> validate_drawing(const Drawing& d, const PortGraph& graph) {
  auto out = validate_geometry(d);
  std::unordered_map<std::string, std::size_t> vi, pi;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) vi[d.vertices[i].id] = i;
  for (std::size_t i = 0; i < d.ports.size(); ++i) pi[d.ports[i].id] = i;

  for (const auto& v : graph.vertices()) {
    auto it = vi.find(v.id);
    if (it == vi.end()) {
      out.push_back({"vertex missing from drawing", {v.id}});
      continue;
    }
    const auto& box = d.vertices[it->second].box;
    if (box.width() < v.min_width - kEps || box.height() < v.min_height - kEps)
      out.push_back({"vertex smaller than its minimum size", {v.id}});
  }
  bool ports_ok = true;
  for (const auto& p : graph.ports()) {
    auto it = pi.find(p.id);
    if (it == pi.end()) {
      out.push_back({"port missing from drawing", {p.id}});
      ports_ok = false;
      continue;
    }
    const auto& dp = d.ports[it->second];
    if (dp.vertex != graph.vertex(p.vertex).id) out.push_back({"port drawn on wrong vertex", {p.id}});
    for (auto g = p.parent; g; g = graph.group(*g).parent) {
      const auto side = graph.group(*g).side;
      if (side == Side::Free) continue;
      if (side != dp.side) out.push_back({"port on wrong side", {p.id, graph.group(*g).id}});
      break;
    }
  }
  for (const auto& e : graph.edges()) {
    auto it = std::find_if(d.edges.begin(), d.edges.end(), [&](const DrawnEdge& de) { return de.id == e.id; });
    if (it == d.edges.end()) {
      out.push_back({"edge missing from drawing", {e.id}});
      continue;
    }
    const auto& a = graph.port(e.a).id;
    const auto& b = graph.port(e.b).id;
    if (!((it->port_a == a && it->port_b == b) || (it->port_a == b && it->port_b == a)))
      out.push_back({"edge drawn between wrong ports", {e.id}});
  }
  for (const auto& pp : graph.pairings()) {
    const auto& a = graph.port(pp.a).id;
    const auto& b = graph.port(pp.b).id;
    const bool drawn = std::any_of(d.pairings.begin(), d.pairings.end(), [&](const DrawnPairing& dp) {
      return (dp.a == a && dp.b == b) || (dp.a == b && dp.b == a);
    });
    if (!drawn) out.push_back({"pairing missing from drawing", {a, b}});
  }
  if (!ports_ok) return out;

  // Group contiguity and fixed order along the cyclic boundary walk.
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto vid = make_id<VertexId>(v);
    auto vit = vi.find(graph.vertex(vid).id);
    if (vit == vi.end()) continue;
    const auto& box = d.vertices[vit->second].box;
    auto ports = ports_of_vertex(graph, vid);
    std::sort(ports.begin(), ports.end(), [&](PortId a, PortId b) {
      return walk_position(d.ports[pi[graph.port(a).id]], box) < walk_position(d.ports[pi[graph.port(b).id]], box);
    });
    const std::size_t n = ports.size();
    std::unordered_map<PortId, std::size_t> at;
    for (std::size_t i = 0; i < n; ++i) at[ports[i]] = i;
    std::function<void(Element)> check = [&](Element el) {
      if (el.is_port()) return;
      const auto& grp = graph.group(el.as_group());
      std::vector<PortId> members;
      collect_ports(graph, el, members);
      if (members.size() > 1 && members.size() < n) {
        std::vector<char> in(n, 0);
        for (auto p : members) in[at[p]] = 1;
        std::size_t changes = 0;
        for (std::size_t i = 0; i < n; ++i) changes += in[i] != in[(i + 1) % n];
        if (changes > 2) out.push_back({"port group not contiguous", {grp.id}});
      }
      if (grp.ordered) {
        std::vector<int> child_of(n, -1);
        int k = 0;
        for (const auto& c : grp.children) {
          std::vector<PortId> cp;
          collect_ports(graph, c, cp);
          if (cp.empty()) continue;
          for (auto p : cp) child_of[at[p]] = k;
          ++k;
        }
        if (k > 1) {
          bool ok = false;
          for (std::size_t start = 0; start < n && !ok; ++start) {
            if (child_of[start] < 0 || child_of[(start + n - 1) % n] == child_of[start]) continue;
            std::vector<int> seq;
            for (std::size_t i = 0; i < n; ++i) {
              const int c = child_of[(start + i) % n];
              if (c >= 0 && (seq.empty() || seq.back() != c)) seq.push_back(c);
            }
            bool fwd = static_cast<int>(seq.size()) == k, bwd = fwd;
            for (int i = 0; i < static_cast<int>(seq.size()) && (fwd || bwd); ++i) {
              fwd = fwd && seq[static_cast<std::size_t>(i)] == i;
              bwd = bwd && seq[static_cast<std::size_t>(i)] == k - 1 - i;
            }
            ok = fwd || bwd;
          }
          if (!ok) out.push_back({"fixed port order violated", {grp.id}});
        }
      }
      for (const auto& c : grp.children) check(c);
    };
    for (const auto& c : graph.vertex(vid).children) check(c);
  }
  return out;
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Crossings: return "ncr";
    case Metric::Bends: return "nbp";
    case Metric::Width: return "width";
    case Metric::Height: return "height";
    case Metric::Area: return "area";
    case Metric::Aspect: return "aspect";
    case Metric::Time: return "ms";
  }
  return "";
}

double metric_value(const MetricsRecord& r, Metric m) {
  switch (m) {
    case Metric::Crossings: return static_cast<double>(r.crossings);
    case Metric::Bends: return static_cast<double>(r.bends);
    case Metric::Width: return r.width;
    case Metric::Height: return r.height;
    case Metric::Area: return r.area;
    case Metric::Aspect: return r.aspect;
    case Metric::Time: return r.elapsed_ms;
  }
  return 0;
}

namespace {

// Smaller is better; aspect ratios are ranked by distance to 1.
double badness(Metric m, double v) { return m == Metric::Aspect ? std::abs(v - 1.0) : v; }

}  // namespace

std::map<std::string, std::map<Metric, AggregateCell>> aggregate(const std::vector<RunRecord>& runs,
                                                                 const std::string& baseline) {
  // instance -> variant -> metric -> best value
  std::map<std::string, std::map<std::string, std::map<Metric, double>>> best;
  for (const auto& r : runs) {
    auto& cell = best[r.instance][r.variant];
    for (Metric m : kAllMetrics) {
      const double v = metric_value(r.metrics, m);
      auto it = cell.find(m);
      if (it == cell.end() || badness(m, v) < badness(m, it->second)) cell[m] = v;
    }
  }
  std::map<std::string, std::map<Metric, AggregateCell>> table;
  std::map<std::string, std::map<Metric, double>> ratio_sum;
  std::map<std::string, std::map<Metric, std::size_t>> best_count;
  for (const auto& [inst, variants] : best) {
    auto base = variants.find(baseline);
    if (base == variants.end()) throw std::invalid_argument("baseline variant '" + baseline + "' missing for " + inst);
    for (Metric m : kAllMetrics) {
      double top = std::numeric_limits<double>::infinity();
      for (const auto& [name, vals] : variants) top = std::min(top, badness(m, vals.at(m)));
      for (const auto& [name, vals] : variants) {
        const double v = vals.at(m), b = base->second.at(m);
        auto& cell = table[name][m];
        if (badness(m, v) <= top + 1e-12) best_count[name][m] += 1;
        if (b > 0) {
          ratio_sum[name][m] += v / b;
          ++cell.instances;
        } else if (v == 0) {
          ratio_sum[name][m] += 1;
          ++cell.instances;
        }
      }
    }
  }
  const double n = static_cast<double>(best.size());
  for (auto& [name, cells] : table)
    for (auto& [m, cell] : cells) {
      cell.mu = cell.instances ? ratio_sum[name][m] / static_cast<double>(cell.instances) : 0;
      cell.beta = n > 0 ? 100.0 * static_cast<double>(best_count[name][m]) / n : 0;
    }
  return table;
}

std::string csv_header() { return "instance,variant,seed,ncr,nbp,width,height,area,aspect,ms\n"; }

std::string csv_row(const RunRecord& r) {
  char buf[512];
  const auto& m = r.metrics;
  std::snprintf(buf, sizeof buf, "%s,%s,%llu,%zu,%zu,%.1f,%.1f,%.1f,%.4f,%.0f\n", r.instance.c_str(), r.variant.c_str(),
                static_cast<unsigned long long>(r.seed), m.crossings, m.bends, m.width, m.height, m.area, m.aspect,
                m.elapsed_ms);
  return buf;
}

std::string markdown_table(const std::map<std::string, std::map<Metric, AggregateCell>>& table,
                           const std::vector<std::string>& variants) {
  std::string out = "| variant |";
  for (Metric m : kAllMetrics) out += " " + std::string(to_string(m)) + " mu | " + std::string(to_string(m)) + " beta |";
  out += "\n|---|";
  for (std::size_t i = 0; i < std::size(kAllMetrics); ++i) out += "---|---|";
  out += "\n";
  char buf[64];
  for (const auto& v : variants) {
    auto it = table.find(v);
    if (it == table.end()) continue;
    out += "| " + v + " |";
    for (Metric m : kAllMetrics) {
      const auto& c = it->second.at(m);
      std::snprintf(buf, sizeof buf, " %.2f | %.0f |", c.mu, c.beta);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace portline

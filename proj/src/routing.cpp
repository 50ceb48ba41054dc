#include "portline/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace portline {

namespace {

constexpr double kEps = 1e-6;

bool intersects(const BandPiece& a, const BandPiece& b) {
  return a.left <= b.right + kEps && b.left <= a.right + kEps;
}

// p starts left of n, ends inside n's span and n ends further right.
bool interleaves(const BandPiece& p, const BandPiece& n) {
  return p.left < n.left - kEps && n.left <= p.right + kEps && p.right < n.right - kEps;
}

bool contains(const BandPiece& outer, const BandPiece& in) {
  return outer.left <= in.left + kEps && in.right <= outer.right + kEps;
}

bool is_arc(Band b) { return b == Band::Left || b == Band::Right; }

}  // namespace

std::vector<int> greedy_band_lines(const std::vector<BandPiece>& pieces) {
  std::vector<int> line(pieces.size(), -1);
  if (pieces.empty()) return line;
  const bool arcs = is_arc(pieces.front().band);
  std::vector<std::size_t> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = pieces[a];
    const auto& pb = pieces[b];
    if (arcs) return pa.left < pb.left || (pa.left == pb.left && pa.right < pb.right);
    const double la = pa.right - pa.left, lb = pb.right - pb.left;
    return la < lb || (la == lb && pa.left < pb.left);
  });
  std::vector<std::size_t> placed;
  for (auto n : order) {
    int bound = 0;
    std::set<int> used;
    for (auto p : placed) {
      if (!intersects(pieces[p], pieces[n])) continue;
      used.insert(line[p]);
      const bool ordered = arcs ? interleaves(pieces[p], pieces[n]) : contains(pieces[n], pieces[p]);
      if (ordered) bound = std::max(bound, line[p] + 1);
    }
    int t = bound;
    while (used.count(t)) ++t;
    line[n] = t;
    placed.push_back(n);
  }
  return line;
}

LineAssignment assign_lines(const std::vector<BandPiece>& pieces, double delta) {
  LineAssignment la;
  const std::size_t n = pieces.size();
  la.line.assign(n, -1);
  la.detour.assign(n, 0);
  la.detour_x.assign(n, 0);

  std::vector<int> local(n, -1);
  const Band bands[] = {Band::Cap, Band::Left, Band::Right, Band::Cup};
  for (Band band : bands) {
    std::vector<std::size_t> ids;
    std::vector<BandPiece> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (pieces[i].band == band) {
        ids.push_back(i);
        sub.push_back(pieces[i]);
      }
    const auto t = greedy_band_lines(sub);
    const int count = t.empty() ? 0 : *std::max_element(t.begin(), t.end()) + 1;
    // Right-going arcs and cups are stacked downward from their band's top.
    const bool from_top = band == Band::Right || band == Band::Cup;
    for (std::size_t k = 0; k < ids.size(); ++k) local[ids[k]] = from_top ? count - 1 - t[k] : t[k];
  }

  // Contour merging: each band drops until an intersecting piece below blocks it.
  std::vector<std::size_t> placed;
  for (Band band : bands) {
    int offset = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pieces[i].band != band) continue;
      for (auto p : placed)
        if (intersects(pieces[p], pieces[i])) offset = std::max(offset, la.line[p] - local[i] + 1);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (pieces[i].band == band) {
        la.line[i] = local[i] + offset;
        placed.push_back(i);
      }
  }
  int top = -1;
  for (auto l : la.line) top = std::max(top, l);

  std::vector<double> legs;
  for (const auto& p : pieces) {
    legs.push_back(p.left);
    legs.push_back(p.right);
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (pieces[a].band != Band::Left) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (pieces[b].band != Band::Right || std::abs(pieces[b].left - pieces[a].left) > kEps) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (double x : legs)
        if (x > pieces[a].left + kEps) gap = std::min(gap, x - pieces[a].left);
      la.detour[a] = 1;
      la.detour_x[a] = pieces[a].left + std::min(delta / 4, gap / 2);
      la.star_line = top + 1;
      break;
    }
  }
  la.line_count = la.star_line ? *la.star_line + 1 : top + 1;
  return la;
}

bool lines_valid(const std::vector<BandPiece>& pieces, const LineAssignment& la) {
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((pieces[i].band == Band::Vertical) != (la.line[i] < 0)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || la.line[i] < 0 || la.line[j] < 0 || !intersects(pieces[i], pieces[j])) continue;
      if (la.line[i] == la.line[j]) return false;
      if (pieces[i].band != pieces[j].band) continue;
      switch (pieces[i].band) {
        case Band::Right:
          if (interleaves(pieces[i], pieces[j]) && la.line[i] < la.line[j]) return false;
          break;
        case Band::Left:
          if (interleaves(pieces[i], pieces[j]) && la.line[j] < la.line[i]) return false;
          break;
        case Band::Cap:
          if (contains(pieces[i], pieces[j]) && la.line[i] < la.line[j]) return false;
          break;
        case Band::Cup:
          if (contains(pieces[i], pieces[j]) && la.line[i] > la.line[j]) return false;
          break;
        case Band::Vertical:
          break;
      }
    }
  }
  // Legs: (x, line where the leg ends inside the corridor, piece). Vertical
  // arcs use the whole height.
  struct Leg {
    double x;
    double reach;
    std::size_t piece;
  };
  std::vector<Leg> upper, lower;
  const double full = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pieces[i];
    const double l = la.line[i];
    switch (p.band) {
      case Band::Right:
        lower.push_back({p.left, l, i});
        upper.push_back({p.right, l, i});
        break;
      case Band::Left:
        upper.push_back({p.left, la.detour[i] ? *la.star_line : l, i});
        lower.push_back({p.right, l, i});
        if (la.detour[i]) {
          // The extra vertical must stand alone.
          for (std::size_t j = 0; j < n; ++j)
            if (std::abs(pieces[j].left - la.detour_x[i]) <= kEps || std::abs(pieces[j].right - la.detour_x[i]) <= kEps)
              return false;
        }
        break;
      case Band::Cap:
        lower.push_back({p.left, l, i});
        lower.push_back({p.right, l, i});
        break;
      case Band::Cup:
        upper.push_back({p.left, l, i});
        upper.push_back({p.right, l, i});
        break;
      case Band::Vertical:
        lower.push_back({p.left, full, i});
        upper.push_back({p.left, -full, i});
        break;
    }
  }
  for (const auto& u : upper)
    for (const auto& d : lower)
      if (u.piece != d.piece && std::abs(u.x - d.x) <= kEps && !(u.reach > d.reach)) return false;
  return true;
}

namespace {

void push_point(std::vector<Point>& pts, Point p) {
  if (!pts.empty() && pts.back() == p) return;
  pts.push_back(p);
}

std::vector<Point> simplify(const std::vector<Point>& in) {
  std::vector<Point> out;
  for (const auto& p : in) {
    if (!out.empty() && out.back() == p) continue;
    if (out.size() >= 2) {
      const auto& a = out[out.size() - 2];
      const auto& b = out.back();
      if ((a.x == b.x && b.x == p.x) || (a.y == b.y && b.y == p.y)) {
        out.back() = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

// Shrinks each transformed vertex to its inner part and moves the parked
// left/right ports onto the released sides; the port nearest a separator gets
// the line nearest the parking row so the L-shaped extensions nest.
void apply_shrink(Drawing& d, const std::vector<ShrinkInstruction>& shrink, double delta, double ps) {
  std::unordered_map<std::string, std::size_t> port_index, vertex_index;
  for (std::size_t i = 0; i < d.ports.size(); ++i) port_index[d.ports[i].id] = i;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) vertex_index[d.vertices[i].id] = i;
  std::unordered_map<std::string, std::size_t> edge_of_port;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    edge_of_port[d.edges[i].port_a] = i;
    edge_of_port[d.edges[i].port_b] = i;
  }
  auto center = [&](const std::string& id) {
    const auto& b = d.ports.at(port_index.at(id)).box;
    return (b.x0 + b.x1) / 2;
  };
  std::unordered_set<std::string> removed;
  for (const auto& si : shrink) {
    auto& box = d.vertices.at(vertex_index.at(si.vertex)).box;
    const double xl = center(si.left_sep_top), xr = center(si.right_sep_top);
    auto move_part = [&](const std::vector<std::string>& ids, Side parked, bool left) {
      std::vector<std::pair<double, std::string>> order;
      for (const auto& id : ids) order.push_back({center(id), id});
      std::sort(order.begin(), order.end());
      if (left) std::reverse(order.begin(), order.end());
      for (std::size_t j = 0; j < order.size(); ++j) {
        auto& port = d.ports[port_index.at(order[j].second)];
        const double x = order[j].first;
        const double rank = static_cast<double>(j + 1) * delta;
        const double y = parked == Side::Top ? box.y1 - rank : box.y0 + rank;
        const Point old_end{x, parked == Side::Top ? port.box.y1 : port.box.y0};
        const double side_x = left ? xl : xr;
        port.side = left ? Side::Left : Side::Right;
        port.box = left ? Rect{side_x - ps, y - ps / 2, side_x, y + ps / 2} : Rect{side_x, y - ps / 2, side_x + ps, y + ps / 2};
        const Point new_end{left ? side_x - ps : side_x + ps, y};
        auto it = edge_of_port.find(port.id);
        if (it == edge_of_port.end()) continue;
        auto& e = d.edges[it->second];
        std::vector<Point> pts;
        if (e.port_a == port.id) {
          pts = {new_end, {x, y}};
          if (!e.points.empty() && !(e.points.front() == old_end)) throw std::logic_error("edge does not start at its port");
          pts.insert(pts.end(), e.points.begin(), e.points.end());
        } else {
          pts = e.points;
          if (!pts.empty() && !(pts.back() == old_end)) throw std::logic_error("edge does not end at its port");
          pts.push_back({x, y});
          pts.push_back(new_end);
        }
        e.points = simplify(pts);
      }
    };
    move_part(si.left_ports, si.left_side, true);
    move_part(si.right_ports, si.right_side, false);
    box.x0 = xl;
    box.x1 = xr;
    for (const auto* id : {&si.left_sep_top, &si.left_sep_bottom, &si.right_sep_top, &si.right_sep_bottom})
      removed.insert(*id);
    removed.insert(si.fillers.begin(), si.fillers.end());
  }
  std::erase_if(d.ports, [&](const DrawnPort& p) { return removed.count(p.id) != 0; });
  std::erase_if(d.pairings, [&](const DrawnPairing& p) { return removed.count(p.a) || removed.count(p.b); });
}

}  // namespace

RoutedDrawing build_drawing(const LayeredStructure& s, const PortGraph& graph, const Geometry& geo,
                            const RoutingConfig& config, const std::vector<ShrinkInstruction>& shrink) {
  RoutedDrawing out;
  const double delta = config.delta, ps = config.port_size;
  const auto pieces = route_pieces(s);
  const int K = static_cast<int>(s.layer_count());

  // Band pieces per corridor.
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(K) + 1);
  std::vector<BandPiece> band(pieces.size());
  std::vector<std::size_t> local_index(pieces.size(), 0);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.kind == PieceKind::PassThrough) continue;
    const double xa = geo.slot_x[p.a], xb = geo.slot_x[p.b];
    if (std::isnan(xa) || std::isnan(xb)) throw std::logic_error("slot without coordinate");
    BandPiece bp;
    if (p.kind == PieceKind::Arc) {
      const double xl = s.slots[p.a].side == Side::Top ? xa : xb;
      const double xu = s.slots[p.a].side == Side::Top ? xb : xa;
      if (std::abs(xl - xu) <= kEps)
        bp = {Band::Vertical, xl, xl};
      else if (xl < xu)
        bp = {Band::Right, xl, xu};
      else
        bp = {Band::Left, xu, xl};
    } else {
      bp = {p.kind == PieceKind::Cap ? Band::Cap : Band::Cup, std::min(xa, xb), std::max(xa, xb)};
    }
    band[i] = bp;
    auto& m = members[static_cast<std::size_t>(p.corridor)];
    local_index[i] = m.size();
    m.push_back(i);
  }
  std::vector<LineAssignment> assignment(members.size());
  std::vector<double> height(members.size(), 0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    std::vector<BandPiece> bp;
    for (auto i : members[c]) bp.push_back(band[i]);
    assignment[c] = assign_lines(bp, delta);
    const int lines = assignment[c].line_count;
    out.corridor_lines.push_back(lines);
    for (auto d : assignment[c].detour) out.detours += d != 0;
    const bool boundary = c == 0 || c == members.size() - 1;
    if (boundary)
      height[c] = lines > 0 ? (lines + 1) * delta : 0;
    else
      height[c] = std::max(lines + 1, 2) * delta;
  }

  std::vector<double> corr_bottom(members.size()), y0(static_cast<std::size_t>(K)), y1(static_cast<std::size_t>(K));
  double cursor = 0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    corr_bottom[c] = cursor;
    cursor += height[c];
    if (c < static_cast<std::size_t>(K)) {
      y0[c] = cursor + ps;
      y1[c] = y0[c] + geo.layer_height[c];
      cursor = y1[c] + ps;
    }
  }
  auto slot_y = [&](std::uint32_t slot) {
    const auto layer = static_cast<std::size_t>(s.rows[s.nodes[s.slots[slot].node].row].layer);
    return s.slots[slot].side == Side::Top ? y1[layer] + ps : y0[layer] - ps;
  };
  auto line_y = [&](std::size_t c, int line) { return corr_bottom[c] + (line + 1) * delta; };

  Drawing& d = out.drawing;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto& vx = graph.vertex(make_id<VertexId>(v));
    const auto layer = static_cast<std::size_t>(s.rows[s.nodes[s.node_of_vertex[v]].row].layer);
    d.vertices.push_back({vx.id, vx.label, {geo.vertex_x[v].first, y0[layer], geo.vertex_x[v].second, y1[layer]}});
  }
  for (std::size_t p = 0; p < graph.port_count(); ++p) {
    const auto slot = s.slot_of_port[p];
    const double x = geo.slot_x[slot];
    const auto layer = static_cast<std::size_t>(s.rows[s.nodes[s.slots[slot].node].row].layer);
    const auto& port = graph.port(make_id<PortId>(p));
    Rect box = s.slots[slot].side == Side::Top ? Rect{x - ps / 2, y1[layer], x + ps / 2, y1[layer] + ps}
                                               : Rect{x - ps / 2, y0[layer] - ps, x + ps / 2, y0[layer]};
    d.ports.push_back({port.id, graph.vertex(port.vertex).id, s.slots[slot].side, box});
  }

  std::vector<std::vector<std::size_t>> by_edge(graph.edge_count());
  for (std::size_t i = 0; i < pieces.size(); ++i) by_edge[idx(pieces[i].edge)].push_back(i);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edge(make_id<EdgeId>(e));
    std::vector<Point> pts;
    for (auto i : by_edge[e]) {
      const auto& p = pieces[i];
      const double xa = geo.slot_x[p.a], xb = geo.slot_x[p.b];
      const Point A{xa, slot_y(p.a)}, B{xb, slot_y(p.b)};
      std::vector<Point> seg;
      if (p.kind == PieceKind::PassThrough) {
        seg = {A, B};
      } else {
        const auto c = static_cast<std::size_t>(p.corridor);
        const auto& la = assignment[c];
        const auto k = local_index[i];
        const double y = la.line[k] >= 0 ? line_y(c, la.line[k]) : 0;
        if (p.kind != PieceKind::Arc || band[i].band != Band::Vertical) {
          if (p.kind == PieceKind::Arc && la.detour[k]) {
            // Lower end first: up to the own line, left to the detour column,
            // up to the top line, left over the upper port.
            const bool a_lower = s.slots[p.a].side == Side::Top;
            const Point L = a_lower ? A : B, U = a_lower ? B : A;
            const double ys = line_y(c, *la.star_line);
            seg = {L, {L.x, y}, {la.detour_x[k], y}, {la.detour_x[k], ys}, {U.x, ys}, U};
            if (!a_lower) std::reverse(seg.begin(), seg.end());
          } else {
            seg = {A, {A.x, y}, {B.x, y}, B};
          }
        } else {
          seg = {A, B};
        }
      }
      for (const auto& q : seg) push_point(pts, q);
    }
    d.edges.push_back({edge.id, graph.port(edge.a).id, graph.port(edge.b).id, simplify(pts)});
  }
  for (const auto& pp : graph.pairings()) d.pairings.push_back({graph.port(pp.a).id, graph.port(pp.b).id});

  apply_shrink(d, shrink, delta, ps);
  const auto bb = d.bounds();
  d.translate(-bb.x0, -bb.y0);
  return out;
}

}  // namespace portline

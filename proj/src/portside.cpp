#include "portline/portside.hpp"

#include "portline/crossmin.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace portline {

void LayeredStructure::flatten(std::uint32_t node) {
  auto& n = nodes[node];
  if (n.kind != NodeKind::Real) return;
  n.top.clear();
  n.bottom.clear();
  for (auto p : n.top_tree.leaves()) n.top.push_back(slot_of_port[idx(p)]);
  for (auto p : n.bottom_tree.leaves()) n.bottom.push_back(slot_of_port[idx(p)]);
}

std::size_t LayeredStructure::dummy_count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [&](const LNode& n) { return n.kind == kind; }));
}

namespace {

struct Unit {
  VertexId vertex{};
  Element element{};
  int out = 0;
  int in = 0;
  std::optional<Side> forced;
};

bool is_vertical(Side s) { return s == Side::Top || s == Side::Bottom; }

}  // namespace

SideAssignment assign_port_sides(const PortGraph& graph, const Orientation& orientation) {
  SideAssignment res;
  res.repaired = graph;
  auto& g = res.repaired;

  std::vector<Unit> units;
  std::vector<std::size_t> unit_of_port(graph.port_count(), 0);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (const auto& child : graph.vertex(make_id<VertexId>(v)).children) {
      Unit u;
      u.vertex = make_id<VertexId>(v);
      u.element = child;
      const std::size_t ui = units.size();
      std::vector<PortId> ports;
      collect_ports(graph, child, ports);
      for (auto p : ports) {
        unit_of_port[idx(p)] = ui;
        if (auto e = graph.edge_of(p)) {
          if (orientation.direction[idx(*e)].first == u.vertex)
            ++u.out;
          else
            ++u.in;
        }
      }
      // Forced side: the first constrained group by id wins, later conflicts are repaired.
      std::vector<GroupId> groups;
      std::function<void(Element)> walk = [&](Element e) {
        if (e.is_port()) return;
        groups.push_back(e.as_group());
        for (const auto& c : graph.group(e.as_group()).children) walk(c);
      };
      walk(child);
      std::sort(groups.begin(), groups.end(),
                [&](GroupId a, GroupId b) { return graph.group(a).id < graph.group(b).id; });
      for (auto gid : groups) {
        const Side s = graph.group(gid).side;
        if (!is_vertical(s)) continue;
        if (!u.forced) {
          u.forced = s;
        } else if (*u.forced != s) {
          g.set_group_side(gid, *u.forced);
          res.log.push_back("port group '" + graph.group(gid).id + "' moved to side " +
                            std::string(to_string(*u.forced)) + " to resolve a side conflict");
        }
      }
      units.push_back(u);
    }
  }

  // Pairings ask for opposite sides: 2-colour the units.
  struct Adj {
    std::size_t other;
    std::size_t pairing;
  };
  std::vector<std::vector<Adj>> adj(units.size());
  std::vector<char> drop(graph.pairings().size(), 0);
  for (std::size_t k = 0; k < graph.pairings().size(); ++k) {
    const auto& pp = graph.pairings()[k];
    const auto a = unit_of_port[idx(pp.a)], b = unit_of_port[idx(pp.b)];
    if (a == b) {
      drop[k] = 1;
      res.log.push_back("pairing {" + graph.port(pp.a).id + ", " + graph.port(pp.b).id +
                        "} dropped: both ports share a top-level group");
      continue;
    }
    adj[a].push_back({b, k});
    adj[b].push_back({a, k});
  }
  std::vector<int> color(units.size(), -1);  // 0 top, 1 bottom
  auto bfs = [&](std::deque<std::size_t> queue, std::vector<std::size_t>* members) {
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      if (members) members->push_back(u);
      for (const auto& [w, k] : adj[u]) {
        if (drop[k]) continue;
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          drop[k] = 1;
          const auto& pp = graph.pairings()[k];
          res.log.push_back("pairing {" + graph.port(pp.a).id + ", " + graph.port(pp.b).id +
                            "} dropped: opposite sides cannot be satisfied");
        }
      }
    }
  };
  std::deque<std::size_t> seeds;
  for (std::size_t u = 0; u < units.size(); ++u)
    if (units[u].forced) {
      color[u] = *units[u].forced == Side::Top ? 0 : 1;
      seeds.push_back(u);
    }
  bfs(seeds, nullptr);
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (color[u] >= 0) continue;
    color[u] = 0;
    std::vector<std::size_t> members;
    bfs({u}, &members);
    // Majority decision: ties fall to the bottom side.
    long gain = 0;
    for (auto m : members) gain += color[m] == 0 ? units[m].out - units[m].in : units[m].in - units[m].out;
    if (gain <= 0)
      for (auto m : members) color[m] = 1 - color[m];
  }

  res.port_side.assign(graph.port_count(), Side::Bottom);
  for (std::size_t p = 0; p < graph.port_count(); ++p)
    res.port_side[p] = color[unit_of_port[p]] == 0 ? Side::Top : Side::Bottom;
  for (std::size_t k = drop.size(); k-- > 0;)
    if (drop[k]) g.remove_pairing(k);
  return res;
}

namespace {

void build_tree(const PortGraph& graph, Element e, OrderTree& tree, std::uint32_t parent) {
  if (e.is_port()) {
    OrderTree::TNode leaf;
    leaf.port = e.as_port();
    tree.add(parent, leaf);
    return;
  }
  const auto& grp = graph.group(e.as_group());
  OrderTree::TNode inner;
  inner.ordered = grp.ordered;
  inner.group = e.as_group();
  const auto id = tree.add(parent, inner);
  for (const auto& c : grp.children) build_tree(graph, c, tree, id);
}

}  // namespace

PortsideResult build_layered_structure(const PortGraph& graph, const Orientation& orientation,
                                       const Layering& layering) {
  PortsideResult res;
  auto sides = assign_port_sides(graph, orientation);
  res.repaired = std::move(sides.repaired);
  res.log = std::move(sides.log);
  const PortGraph& g = res.repaired;
  LayeredStructure& s = res.structure;
  s.port_side = sides.port_side;

  const int K = layering.layer_count();
  std::vector<char> need_above(static_cast<std::size_t>(K), 0), need_below(static_cast<std::size_t>(K), 0);
  struct Ends {
    PortId tail_port, head_port;
    VertexId tail, head;
  };
  std::vector<Ends> ends;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(make_id<EdgeId>(e));
    const auto [t, h] = orientation.direction[e];
    Ends en{ed.a, ed.b, t, h};
    if (g.port(ed.a).vertex != t) std::swap(en.tail_port, en.head_port);
    if (s.port_side[idx(en.tail_port)] == Side::Bottom) need_below[static_cast<std::size_t>(layering.layer_of[idx(t)])] = 1;
    if (s.port_side[idx(en.head_port)] == Side::Top) need_above[static_cast<std::size_t>(layering.layer_of[idx(h)])] = 1;
    ends.push_back(en);
  }

  for (int k = 0; k < K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (need_below[ku]) s.rows.push_back({k, RowKind::ExtraBelow, {}});
    s.real_row.push_back(static_cast<std::uint32_t>(s.rows.size()));
    s.rows.push_back({k, RowKind::Real, {}});
    if (need_above[ku]) s.rows.push_back({k, RowKind::ExtraAbove, {}});
  }

  auto new_node = [&](NodeKind kind, std::uint32_t row) {
    const auto id = static_cast<std::uint32_t>(s.nodes.size());
    LNode n;
    n.kind = kind;
    n.row = row;
    s.nodes.push_back(std::move(n));
    s.rows[row].nodes.push_back(id);
    return id;
  };
  auto new_slot = [&](std::uint32_t node, Side side, std::optional<PortId> port) {
    const auto id = static_cast<std::uint32_t>(s.slots.size());
    s.slots.push_back({node, side, port});
    (side == Side::Top ? s.nodes[node].top : s.nodes[node].bottom).push_back(id);
    return id;
  };

  s.node_of_vertex.assign(g.vertex_count(), 0);
  s.slot_of_port.assign(g.port_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto vid = make_id<VertexId>(v);
    const auto row = s.real_row[static_cast<std::size_t>(layering.layer_of[v])];
    const auto node = new_node(NodeKind::Real, row);
    s.node_of_vertex[v] = node;
    s.nodes[node].vertex = vid;
    for (const auto& child : g.vertex(vid).children) {
      std::vector<PortId> ports;
      collect_ports(g, child, ports);
      if (ports.empty()) continue;  // empty groups carry no constraint
      auto& tree = s.port_side[idx(ports.front())] == Side::Top ? s.nodes[node].top_tree : s.nodes[node].bottom_tree;
      build_tree(g, child, tree, 0);
    }
    for (auto p : ports_of_vertex(g, vid)) s.slot_of_port[idx(p)] = new_slot(node, s.port_side[idx(p)], p);
    s.flatten(node);
  }
  for (const auto& pp : g.pairings()) {
    auto a = s.slot_of_port[idx(pp.a)], b = s.slot_of_port[idx(pp.b)];
    if (s.slots[a].side == Side::Bottom) std::swap(a, b);
    s.nodes[s.slots[a].node].pairings.emplace_back(a, b);
  }

  std::vector<std::optional<std::uint32_t>> turn_above(g.vertex_count()), turn_below(g.vertex_count());
  auto turning = [&](VertexId v, bool above) {
    auto& slot = above ? turn_above[idx(v)] : turn_below[idx(v)];
    if (!slot) {
      const auto row = s.real_row[static_cast<std::size_t>(layering.layer_of[idx(v)])];
      const auto node = new_node(NodeKind::TurningDummy, above ? row + 1 : row - 1);
      s.nodes[node].vertex = v;
      slot = new_slot(node, above ? Side::Bottom : Side::Top, std::nullopt);
    }
    return *slot;
  };
  s.gap_segments.assign(s.rows.empty() ? 0 : s.rows.size() - 1, {});
  auto add_segment = [&](std::uint32_t lower, std::uint32_t upper, EdgeId e) {
    const auto row = s.nodes[s.slots[lower].node].row;
    s.gap_segments[row].push_back(static_cast<std::uint32_t>(s.segments.size()));
    s.segments.push_back({lower, upper, e});
  };

  s.routes.resize(g.edge_count());
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    const auto e = make_id<EdgeId>(ei);
    const auto& en = ends[ei];
    auto& path = s.routes[ei].slots;
    s.routes[ei].edge = e;
    const auto tail_slot = s.slot_of_port[idx(en.tail_port)];
    const auto head_slot = s.slot_of_port[idx(en.head_port)];
    const auto tail_row = s.real_row[static_cast<std::size_t>(layering.layer_of[idx(en.tail)])];
    const auto head_row = s.real_row[static_cast<std::size_t>(layering.layer_of[idx(en.head)])];
    auto long_dummy = [&](std::uint32_t row) {
      const auto node = new_node(NodeKind::LongDummy, row);
      s.nodes[node].edge = e;
      const auto b = new_slot(node, Side::Bottom, std::nullopt);
      const auto t = new_slot(node, Side::Top, std::nullopt);
      return std::pair{b, t};
    };

    path.push_back(tail_slot);
    std::uint32_t cur = tail_slot;
    std::uint32_t row = tail_row;
    if (s.port_side[idx(en.tail_port)] == Side::Bottom) {
      const auto t = turning(en.tail, false);
      add_segment(t, tail_slot, e);
      const auto [b, top] = long_dummy(tail_row);
      add_segment(t, b, e);
      path.insert(path.end(), {t, b, top});
      cur = top;
    }
    const bool head_wrong = s.port_side[idx(en.head_port)] == Side::Top;
    const auto final_row = head_wrong ? head_row + 1 : head_row;
    for (++row; row < final_row; ++row) {
      const auto [b, top] = long_dummy(row);
      add_segment(cur, b, e);
      path.insert(path.end(), {b, top});
      cur = top;
    }
    if (!head_wrong) {
      add_segment(cur, head_slot, e);
    } else {
      const auto t = turning(en.head, true);
      add_segment(cur, t, e);
      add_segment(head_slot, t, e);
      path.push_back(t);
    }
    path.push_back(head_slot);
    if (g.edge(e).a != en.tail_port) std::reverse(path.begin(), path.end());
  }

  // Orders must admit vertical pairings; drop pairings until they do.
  std::vector<std::pair<PortId, PortId>> dropped;
  for (std::uint32_t node = 0; node < s.nodes.size(); ++node) {
    auto& n = s.nodes[node];
    while (!n.pairings.empty() && !align_pairings(s, node, true)) {
      const auto [t, b] = n.pairings.back();
      n.pairings.pop_back();
      dropped.emplace_back(*s.slots[t].port, *s.slots[b].port);
      res.log.push_back("pairing {" + g.port(*s.slots[t].port).id + ", " + g.port(*s.slots[b].port).id +
                        "} dropped: group orders admit no vertical alignment");
    }
  }
  if (!dropped.empty()) {
    for (std::size_t k = res.repaired.pairings().size(); k-- > 0;) {
      const auto& pp = res.repaired.pairings()[k];
      for (const auto& [a, b] : dropped)
        if ((pp.a == a && pp.b == b) || (pp.a == b && pp.b == a)) {
          res.repaired.remove_pairing(k);
          break;
        }
    }
  }
  return res;
}

bool structure_consistent(const LayeredStructure& s) {
  for (const auto& seg : s.segments) {
    const auto& lo = s.slots[seg.lower];
    const auto& up = s.slots[seg.upper];
    if (lo.side != Side::Top || up.side != Side::Bottom) return false;
    if (s.nodes[up.node].row != s.nodes[lo.node].row + 1) return false;
  }
  for (const auto& n : s.nodes)
    for (const auto& [t, b] : n.pairings)
      if (s.slots[t].side != Side::Top || s.slots[b].side != Side::Bottom) return false;
  for (const auto& side : s.port_side)
    if (side != Side::Top && side != Side::Bottom) return false;
  return true;
}

}  // namespace portline

namespace portline {

std::vector<Piece> route_pieces(const LayeredStructure& s) {
  std::vector<Piece> out;
  for (const auto& route : s.routes) {
    std::vector<std::uint32_t> anchors;
    for (auto sl : route.slots)
      if (s.on_real_row(sl)) anchors.push_back(sl);
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
      const auto a = anchors[i], b = anchors[i + 1];
      const auto& na = s.nodes[s.slots[a].node];
      const auto& nb = s.nodes[s.slots[b].node];
      Piece p{route.edge, PieceKind::Arc, a, b, 0};
      const int la = s.rows[na.row].layer, lb = s.rows[nb.row].layer;
      if (s.slots[a].node == s.slots[b].node && na.kind == NodeKind::LongDummy) {
        p.kind = PieceKind::PassThrough;
        p.corridor = la;
      } else if (la == lb) {
        p.kind = s.slots[a].side == Side::Top ? PieceKind::Cap : PieceKind::Cup;
        p.corridor = p.kind == PieceKind::Cap ? la + 1 : la;
      } else {
        p.corridor = std::max(la, lb);
      }
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace portline

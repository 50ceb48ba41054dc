#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "portline/portside.hpp"

namespace portline {

namespace {

std::vector<GroupId> subtree_groups(const PortGraph& graph, Element e) {
  std::vector<GroupId> out;
  std::function<void(Element)> walk = [&](Element x) {
    if (x.is_port()) return;
    out.push_back(x.as_group());
    for (const auto& c : graph.group(x.as_group()).children) walk(c);
  };
  walk(e);
  return out;
}

// Same rule as side assignment: the first constrained group by id decides.
Side unit_side(const PortGraph& graph, Element e) {
  auto groups = subtree_groups(graph, e);
  std::sort(groups.begin(), groups.end(), [&](GroupId a, GroupId b) { return graph.group(a).id < graph.group(b).id; });
  for (auto g : groups)
    if (graph.group(g).side != Side::Free) return graph.group(g).side;
  return Side::Free;
}

bool horizontal(Side s) { return s == Side::Left || s == Side::Right; }

std::vector<PortId> unit_ports(const PortGraph& graph, Element e) {
  std::vector<PortId> out;
  collect_ports(graph, e, out);
  return out;
}

}  // namespace

LeftRightResult transform_left_right_groups(const PortGraph& graph, const Orientation& orientation, double delta) {
  LeftRightResult res;
  PortGraph temp = graph;
  std::vector<char> lr_port(graph.port_count(), 0);
  std::vector<char> affected(graph.vertex_count(), 0);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (const auto& unit : graph.vertex(make_id<VertexId>(v)).children) {
      const Side side = unit_side(graph, unit);
      for (auto g : subtree_groups(graph, unit)) {
        const Side gs = graph.group(g).side;
        if (horizontal(side)) {
          temp.set_group_side(g, Side::Free);
        } else if (horizontal(gs)) {
          temp.set_group_side(g, Side::Free);
          res.log.push_back("port group '" + graph.group(g).id + "' loses side " + std::string(to_string(gs)) +
                            ": its top-level group is constrained otherwise");
        }
      }
      if (!horizontal(side)) continue;
      affected[v] = 1;
      for (auto p : unit_ports(graph, unit)) lr_port[idx(p)] = 1;
    }
  }
  for (std::size_t k = temp.pairings().size(); k-- > 0;) {
    const auto& pp = temp.pairings()[k];
    if (!lr_port[idx(pp.a)] && !lr_port[idx(pp.b)]) continue;
    res.log.push_back("pairing {" + graph.port(pp.a).id + ", " + graph.port(pp.b).id +
                      "} dropped: left and right ports are not paired");
    temp.remove_pairing(k);
  }

  auto sides = assign_port_sides(temp, orientation);
  res.log.insert(res.log.end(), sides.log.begin(), sides.log.end());
  PortGraph& g = sides.repaired;

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (!affected[v]) continue;
    const auto vid = make_id<VertexId>(v);
    const auto& vx = graph.vertex(vid);
    std::vector<Element> left, right, mid_top, mid_bottom;
    ShrinkInstruction si;
    si.vertex = vx.id;
    long gain_left = 0, gain_right = 0;
    for (const auto& unit : vx.children) {
      const Side side = unit_side(graph, unit);
      const auto ports = unit_ports(graph, unit);
      long gain = 0;
      for (auto p : ports)
        if (auto e = graph.edge_of(p)) gain += orientation.direction[idx(*e)].first == vid ? 1 : -1;
      if (side == Side::Left) {
        left.push_back(unit);
        gain_left += gain;
        for (auto p : ports) si.left_ports.push_back(graph.port(p).id);
      } else if (side == Side::Right) {
        right.push_back(unit);
        gain_right += gain;
        for (auto p : ports) si.right_ports.push_back(graph.port(p).id);
      } else {
        const bool top = ports.empty() || sides.port_side[idx(ports.front())] == Side::Top;
        (top ? mid_top : mid_bottom).push_back(unit);
      }
    }
    // Majority decision per part: outgoing edges prefer the top.
    si.left_side = gain_left > 0 ? Side::Top : Side::Bottom;
    si.right_side = gain_right > 0 ? Side::Top : Side::Bottom;

    const std::string pre = "lr:" + vx.id + ":";
    std::optional<GroupId> group_of_part[2];
    std::vector<PortId> seps;
    GroupId mids[2]{};
    GroupId frames[2]{};
    const Side frame_side[2] = {Side::Top, Side::Bottom};
    for (int f = 0; f < 2; ++f) {
      const char* tag = f == 0 ? "top" : "bottom";
      frames[f] = g.add_group(pre + tag, vid, frame_side[f], true);
      if (si.left_side == frame_side[f])
        group_of_part[0] = g.add_group(pre + "left", vid, Side::Free, false, frames[f]);
      const PortId sl = g.add_port(pre + "sl:" + tag, vid, frames[f]);
      mids[f] = g.add_group(pre + "mid:" + tag, vid, Side::Free, false, frames[f]);
      const PortId sr = g.add_port(pre + "sr:" + tag, vid, frames[f]);
      if (si.right_side == frame_side[f])
        group_of_part[1] = g.add_group(pre + "right", vid, Side::Free, false, frames[f]);
      seps.push_back(sl);
      seps.push_back(sr);
    }
    auto adopt = [&](GroupId parent, const std::vector<Element>& units, bool clear_sides) {
      for (const auto& u : units) {
        g.set_parent(u, parent);
        if (clear_sides)
          for (auto gid : subtree_groups(g, u)) g.set_group_side(gid, Side::Free);
      }
      g.set_group_children(parent, units);
    };
    if (group_of_part[0]) adopt(*group_of_part[0], left, true);
    if (group_of_part[1]) adopt(*group_of_part[1], right, true);
    adopt(mids[0], mid_top, false);
    adopt(mids[1], mid_bottom, false);
    g.set_vertex_children(vid, {Element::group(frames[0]), Element::group(frames[1])});
    g.add_pairing(seps[0], seps[2]);
    g.add_pairing(seps[1], seps[3]);
    si.left_sep_top = g.port(seps[0]).id;
    si.right_sep_top = g.port(seps[1]).id;
    si.left_sep_bottom = g.port(seps[2]).id;
    si.right_sep_bottom = g.port(seps[3]).id;

    // Inner width is at least (top inner slots + 1) * delta; fillers in the top
    // middle make it reach the vertex width.
    std::vector<PortId> top_inner;
    collect_ports(g, Element::group(mids[0]), top_inner);
    const auto needed = static_cast<std::size_t>(std::max(0.0, std::ceil(vx.min_width / delta) - 1));
    for (std::size_t k = top_inner.size(); k < needed; ++k)
      si.fillers.push_back(g.port(g.add_port(pre + "fill:" + std::to_string(k), vid, mids[0])).id);

    const auto rows = std::max(si.left_ports.size(), si.right_ports.size());
    g.set_vertex_size(vid, vx.min_width, std::max(vx.min_height, static_cast<double>(rows + 1) * delta));
    res.log.push_back("vertex '" + vx.id + "': left and right ports parked on the " +
                      std::string(to_string(si.left_side)) + "/" + std::string(to_string(si.right_side)) +
                      " sides for shrinking");
    res.shrink.push_back(std::move(si));
  }
  res.graph = std::move(g);
  return res;
}

Reconciled reconcile_left_right(const PortGraph& original, const PortGraph& transformed_repaired) {
  Reconciled r{original, {}};
  PortGraph& g = r.graph;
  for (std::size_t v = 0; v < original.vertex_count(); ++v) {
    for (const auto& unit : original.vertex(make_id<VertexId>(v)).children) {
      const Side side = unit_side(original, unit);
      for (auto gid : subtree_groups(original, unit)) {
        const auto& grp = original.group(gid);
        if (horizontal(side)) {
          if (grp.side != Side::Free && grp.side != side) {
            g.set_group_side(gid, side);
            r.log.push_back("port group '" + grp.id + "' moved to side " + std::string(to_string(side)) +
                            " to resolve a side conflict");
          }
        } else if (auto t = transformed_repaired.find_group(grp.id)) {
          g.set_group_side(gid, transformed_repaired.group(*t).side);
        }
      }
    }
  }
  std::set<std::pair<std::string, std::string>> kept;
  for (const auto& pp : transformed_repaired.pairings()) {
    kept.insert({transformed_repaired.port(pp.a).id, transformed_repaired.port(pp.b).id});
  }
  for (std::size_t k = g.pairings().size(); k-- > 0;) {
    const auto& pp = g.pairings()[k];
    if (!kept.count({g.port(pp.a).id, g.port(pp.b).id})) g.remove_pairing(k);
  }
  return r;
}

}  // namespace portline

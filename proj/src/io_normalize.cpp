#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "portline/io.hpp"

namespace portline::io {

NormalizedPlan normalize(const RawPlan& raw) {
  if (auto problem = check_references(raw); !problem.empty()) throw PlanError(problem);

  NormalizedPlan out;
  auto& g = out.graph;
  auto& prov = out.provenance;

  std::unordered_map<std::string, const RawVertex*> raw_vertex;
  for (const auto& v : raw.vertices) raw_vertex[v.id] = &v;
  std::unordered_map<std::string, std::string> final_vertex;  // raw vertex -> graph vertex id
  for (const auto& vg : raw.vertex_groups)
    for (const auto& m : vg.vertices) final_vertex[m] = vg.id;

  // Binary edges after hyperedge expansion; endpoints still name raw ports or
  // hyperedge dummy ports.
  struct BinaryEdge {
    std::string id;
    std::string a;
    std::string b;
  };
  std::vector<BinaryEdge> binary;
  std::unordered_map<std::string, std::string> raw_port_vertex;
  for (const auto& p : raw.ports) raw_port_vertex[p.id] = p.vertex;
  auto graph_vertex_of = [&](const std::string& raw_port) {
    const auto& rv = raw_port_vertex.at(raw_port);
    auto it = final_vertex.find(rv);
    return it == final_vertex.end() ? rv : it->second;
  };

  struct HyperVertex {
    std::string vertex;
    std::vector<std::string> ports;
  };
  std::vector<HyperVertex> hyper;
  for (const auto& e : raw.edges) {
    if (e.ports.size() == 2) {
      if (e.ports[0] == e.ports[1] || graph_vertex_of(e.ports[0]) == graph_vertex_of(e.ports[1])) {
        out.warnings.push_back("dropped self-loop edge '" + e.id + "'");
        continue;
      }
      binary.push_back({e.id, e.ports[0], e.ports[1]});
      continue;
    }
    HyperVertex hv{"hyper:" + e.id, {}};
    for (std::size_t k = 0; k < e.ports.size(); ++k) {
      const std::string hp = hv.vertex + ":" + std::to_string(k);
      hv.ports.push_back(hp);
      binary.push_back({e.id + ":" + std::to_string(k), hp, e.ports[k]});
    }
    hyper.push_back(std::move(hv));
  }

  std::unordered_map<std::string, int> degree;
  for (const auto& be : binary) {
    ++degree[be.a];
    ++degree[be.b];
  }

  // Vertices: ungrouped raw vertices in file order, then one per vertex group.
  std::unordered_map<std::string, VertexId> vid;
  for (const auto& v : raw.vertices) {
    if (final_vertex.count(v.id)) continue;
    vid[v.id] = g.add_vertex(v.id, v.width, v.height, v.label.empty() ? v.id : v.label);
  }
  for (const auto& vg : raw.vertex_groups) {
    double w = 0, h = 0;
    std::string label;
    for (const auto& m : vg.vertices) {
      w += raw_vertex.at(m)->width;
      h = std::max(h, raw_vertex.at(m)->height);
      if (!label.empty()) label += "|";
      label += raw_vertex.at(m)->label.empty() ? m : raw_vertex.at(m)->label;
      prov.merged_vertices[m] = vg.id;
    }
    vid[vg.id] = g.add_vertex(vg.id, std::max(w, 1.0), std::max(h, 1.0), label);
  }

  // Port forests. Each member of a vertex group gets its own free group.
  std::unordered_map<std::string, const RawPortGroup*> raw_group;
  std::unordered_set<std::string> has_parent;
  for (const auto& pg : raw.port_groups) {
    raw_group[pg.id] = &pg;
    for (const auto& c : pg.children) has_parent.insert(c);
  }
  std::unordered_map<std::string, const RawPort*> raw_port;
  for (const auto& p : raw.ports) raw_port[p.id] = &p;

  std::unordered_map<std::string, PortId> pid;  // raw port (or split port) -> graph port
  std::function<void(const std::string&, VertexId, std::optional<GroupId>)> add_element;
  add_element = [&](const std::string& id, VertexId v, std::optional<GroupId> parent) {
    if (auto it = raw_group.find(id); it != raw_group.end()) {
      const auto* pg = it->second;
      const GroupId gid = g.add_group(pg->id, v, pg->side, pg->ordered, parent);
      for (const auto& c : pg->children) add_element(c, v, gid);
      return;
    }
    const auto* rp = raw_port.at(id);
    const int d = degree.count(id) ? degree[id] : 0;
    if (d <= 1) {
      pid[id] = g.add_port(rp->id, v, parent, rp->label);
      return;
    }
    const GroupId split = g.add_group("split:" + id, v, Side::Free, false, parent);
    auto& siblings = prov.split_ports[id];
    for (int k = 0; k < d; ++k) {
      std::string sid = id + "#" + std::to_string(k);
      const PortId p = g.add_port(sid, v, split, rp->label);
      if (k == 0) pid[id] = p;
      prov.split_origin[sid] = id;
      siblings.push_back(std::move(sid));
    }
  };

  auto add_forest = [&](const std::string& raw_v, VertexId v, std::optional<GroupId> parent) {
    for (const auto& pg : raw.port_groups)
      if (pg.vertex == raw_v && !has_parent.count(pg.id)) add_element(pg.id, v, parent);
    for (const auto& p : raw.ports)
      if (p.vertex == raw_v && !has_parent.count(p.id)) add_element(p.id, v, parent);
  };
  for (const auto& v : raw.vertices)
    if (!final_vertex.count(v.id)) add_forest(v.id, vid.at(v.id), std::nullopt);
  for (const auto& vg : raw.vertex_groups) {
    const VertexId v = vid.at(vg.id);
    for (const auto& m : vg.vertices) {
      const GroupId member = g.add_group(m, v, Side::Free, false, std::nullopt);
      add_forest(m, v, member);
    }
  }

  for (const auto& hv : hyper) {
    const VertexId v = g.add_vertex(hv.vertex, kHyperVertexSize, kHyperVertexSize, "");
    prov.hyperedge_vertices.push_back(hv.vertex);
    for (const auto& hp : hv.ports) pid[hp] = g.add_port(hp, v);
  }

  // Each binary edge takes the next free split sibling of its endpoints.
  std::unordered_map<std::string, std::size_t> next_sibling;
  auto take_port = [&](const std::string& id) -> PortId {
    auto sp = prov.split_ports.find(id);
    if (sp == prov.split_ports.end()) return pid.at(id);
    const std::size_t k = next_sibling[id]++;
    return *g.find_port(sp->second.at(k));
  };
  for (const auto& be : binary) {
    const PortId a = take_port(be.a);
    const PortId b = take_port(be.b);
    g.add_edge(be.id, a, b);
  }

  std::unordered_set<std::uint32_t> paired;
  for (const auto& pp : raw.pairings) {
    const PortId a = pid.at(pp.a);
    const PortId b = pid.at(pp.b);
    if (a == b || g.port(a).vertex != g.port(b).vertex) {
      out.warnings.push_back("dropped pairing '" + pp.id + "' across distinct vertices");
      continue;
    }
    if (paired.count(static_cast<std::uint32_t>(a)) || paired.count(static_cast<std::uint32_t>(b))) {
      out.warnings.push_back("dropped pairing '" + pp.id + "': port already paired");
      continue;
    }
    paired.insert(static_cast<std::uint32_t>(a));
    paired.insert(static_cast<std::uint32_t>(b));
    g.add_pairing(a, b);
  }
  return out;
}

Drawing denormalize_for_display(const Drawing& drawing, const Provenance& provenance) {
  if (provenance.split_ports.empty()) return drawing;
  Drawing out;
  out.vertices = drawing.vertices;
  std::unordered_map<std::string, std::size_t> merged_index;
  for (const auto& p : drawing.ports) {
    auto origin = provenance.split_origin.find(p.id);
    if (origin == provenance.split_origin.end()) {
      out.ports.push_back(p);
      continue;
    }
    auto [it, inserted] = merged_index.emplace(origin->second, out.ports.size());
    if (inserted) {
      DrawnPort merged = p;
      merged.id = origin->second;
      out.ports.push_back(std::move(merged));
      continue;
    }
    auto& box = out.ports[it->second].box;
    box.x0 = std::min(box.x0, p.box.x0);
    box.y0 = std::min(box.y0, p.box.y0);
    box.x1 = std::max(box.x1, p.box.x1);
    box.y1 = std::max(box.y1, p.box.y1);
  }
  auto rename = [&](const std::string& id) {
    auto origin = provenance.split_origin.find(id);
    return origin == provenance.split_origin.end() ? id : origin->second;
  };
  for (auto e : drawing.edges) {
    e.port_a = rename(e.port_a);
    e.port_b = rename(e.port_b);
    out.edges.push_back(std::move(e));
  }
  for (auto pp : drawing.pairings) {
    pp.a = rename(pp.a);
    pp.b = rename(pp.b);
    out.pairings.push_back(std::move(pp));
  }
  return out;
}

}  // namespace portline::io

#include "portline/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace portline {

std::string_view to_string(Side s) noexcept {
  switch (s) {
    case Side::Top: return "top";
    case Side::Bottom: return "bottom";
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Free: return "free";
  }
  return "free";
}

std::optional<Side> side_from_string(std::string_view s) noexcept {
  if (s == "top") return Side::Top;
  if (s == "bottom") return Side::Bottom;
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  if (s == "free" || s.empty()) return Side::Free;
  return std::nullopt;
}

namespace {

template <class Map>
void ensure_unique(const Map& m, const std::string& id, const char* what) {
  if (m.count(id) != 0) throw std::invalid_argument(std::string("duplicate ") + what + " id '" + id + "'");
}

}  // namespace

VertexId PortGraph::add_vertex(std::string id, double min_width, double min_height, std::string label) {
  ensure_unique(vertex_index_, id, "vertex");
  const auto v = make_id<VertexId>(vertices_.size());
  vertex_index_.emplace(id, v);
  vertices_.push_back(Vertex{std::move(id), std::move(label), min_width, min_height, {}});
  return v;
}

GroupId PortGraph::add_group(std::string id, VertexId vertex, Side side, bool ordered,
                             std::optional<GroupId> parent) {
  ensure_unique(group_index_, id, "port group");
  if (idx(vertex) >= vertices_.size()) throw std::invalid_argument("port group '" + id + "' has unknown vertex");
  if (parent && idx(*parent) >= groups_.size())
    throw std::invalid_argument("port group '" + id + "' has unknown parent");
  const auto g = make_id<GroupId>(groups_.size());
  group_index_.emplace(id, g);
  groups_.push_back(PortGroup{std::move(id), vertex, parent, side, ordered, {}});
  if (parent)
    groups_[idx(*parent)].children.push_back(Element::group(g));
  else
    vertices_[idx(vertex)].children.push_back(Element::group(g));
  return g;
}

PortId PortGraph::add_port(std::string id, VertexId vertex, std::optional<GroupId> parent, std::string label) {
  ensure_unique(port_index_, id, "port");
  if (idx(vertex) >= vertices_.size()) throw std::invalid_argument("port '" + id + "' has unknown vertex");
  if (parent && idx(*parent) >= groups_.size()) throw std::invalid_argument("port '" + id + "' has unknown group");
  const auto p = make_id<PortId>(ports_.size());
  port_index_.emplace(id, p);
  ports_.push_back(Port{std::move(id), vertex, parent, std::move(label)});
  edge_of_.emplace_back();
  pairing_of_.emplace_back();
  if (parent)
    groups_[idx(*parent)].children.push_back(Element::port(p));
  else
    vertices_[idx(vertex)].children.push_back(Element::port(p));
  return p;
}

void PortGraph::add_pairing(PortId a, PortId b) {
  if (idx(a) >= ports_.size() || idx(b) >= ports_.size()) throw std::invalid_argument("pairing with unknown port");
  const std::size_t k = pairings_.size();
  pairings_.push_back(PortPairing{a, b});
  if (!pairing_of_[idx(a)]) pairing_of_[idx(a)] = k;
  if (!pairing_of_[idx(b)]) pairing_of_[idx(b)] = k;
}

EdgeId PortGraph::add_edge(std::string id, PortId a, PortId b) {
  if (idx(a) >= ports_.size() || idx(b) >= ports_.size())
    throw std::invalid_argument("edge '" + id + "' has unknown port");
  const auto e = make_id<EdgeId>(edges_.size());
  edges_.push_back(Edge{std::move(id), a, b});
  if (!edge_of_[idx(a)]) edge_of_[idx(a)] = e;
  if (!edge_of_[idx(b)]) edge_of_[idx(b)] = e;
  return e;
}

std::optional<VertexId> PortGraph::find_vertex(std::string_view id) const {
  auto it = vertex_index_.find(std::string(id));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<PortId> PortGraph::find_port(std::string_view id) const {
  auto it = port_index_.find(std::string(id));
  if (it == port_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<GroupId> PortGraph::find_group(std::string_view id) const {
  auto it = group_index_.find(std::string(id));
  if (it == group_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> PortGraph::edge_of(PortId p) const { return edge_of_.at(idx(p)); }

std::optional<PortId> PortGraph::partner_of(PortId p) const {
  const auto& k = pairing_of_.at(idx(p));
  if (!k) return std::nullopt;
  const auto& pp = pairings_[*k];
  return pp.a == p ? pp.b : pp.a;
}

PortId PortGraph::other_end(EdgeId e, PortId p) const {
  const auto& ed = edges_.at(idx(e));
  return ed.a == p ? ed.b : ed.a;
}

void PortGraph::set_vertex_size(VertexId v, double w, double h) {
  auto& vx = vertices_.at(idx(v));
  vx.min_width = w;
  vx.min_height = h;
}

void PortGraph::remove_pairing(std::size_t index) {
  pairings_.erase(pairings_.begin() + static_cast<std::ptrdiff_t>(index));
  std::fill(pairing_of_.begin(), pairing_of_.end(), std::nullopt);
  for (std::size_t k = 0; k < pairings_.size(); ++k) {
    auto& a = pairing_of_[idx(pairings_[k].a)];
    auto& b = pairing_of_[idx(pairings_[k].b)];
    if (!a) a = k;
    if (!b) b = k;
  }
}

void PortGraph::set_vertex_children(VertexId v, std::vector<Element> children) {
  vertices_.at(idx(v)).children = std::move(children);
}

void PortGraph::set_group_children(GroupId g, std::vector<Element> children) {
  groups_.at(idx(g)).children = std::move(children);
}

void PortGraph::set_parent(Element e, std::optional<GroupId> parent) {
  if (e.is_port())
    ports_.at(e.index).parent = parent;
  else
    groups_.at(e.index).parent = parent;
}

void collect_ports(const PortGraph& graph, Element e, std::vector<PortId>& out) {
  if (e.is_port()) {
    out.push_back(e.as_port());
    return;
  }
  for (const auto& c : graph.group(e.as_group()).children) collect_ports(graph, c, out);
}

std::vector<PortId> ports_of_vertex(const PortGraph& graph, VertexId v) {
  std::vector<PortId> out;
  for (const auto& c : graph.vertex(v).children) collect_ports(graph, c, out);
  return out;
}

bool ContractedGraph::connected() const {
  if (vertex_count == 0) return true;
  std::vector<char> seen(vertex_count, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto w : neighbors[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count;
}

ContractedGraph contracted_graph(const PortGraph& graph) {
  ContractedGraph cg;
  cg.vertex_count = graph.vertex_count();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mult;
  for (const auto& e : graph.edges()) {
    auto u = static_cast<std::uint32_t>(graph.port(e.a).vertex);
    auto v = static_cast<std::uint32_t>(graph.port(e.b).vertex);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    ++mult[{u, v}];
  }
  cg.neighbors.assign(cg.vertex_count, {});
  for (const auto& [key, m] : mult) {
    cg.adjacencies.push_back(key);
    cg.multiplicity.push_back(m);
    cg.neighbors[key.first].push_back(key.second);
    cg.neighbors[key.second].push_back(key.first);
  }
  return cg;
}

std::vector<Violation> validate(const PortGraph& graph) {
  std::vector<Violation> out;
  for (const auto& v : graph.vertices()) {
    if (!(v.min_width > 0) || !(v.min_height > 0)) out.push_back({"vertex size not positive", {v.id}});
  }

  // Port ownership: the nesting chain of every port must end at its vertex.
  for (const auto& p : graph.ports()) {
    std::optional<GroupId> g = p.parent;
    std::size_t steps = 0;
    bool ok = true;
    while (g) {
      const auto& grp = graph.group(*g);
      if (grp.vertex != p.vertex) ok = false;
      g = grp.parent;
      if (++steps > graph.groups().size()) {
        out.push_back({"port group nesting cycle", {p.id}});
        ok = true;
        break;
      }
    }
    if (!ok) out.push_back({"port group on foreign vertex", {p.id}});
  }

  // Each element referenced by exactly one parent.
  std::vector<int> port_refs(graph.port_count(), 0);
  std::vector<int> group_refs(graph.groups().size(), 0);
  auto count_children = [&](const std::vector<Element>& ch) {
    for (const auto& c : ch) {
      if (c.is_port())
        ++port_refs[c.index];
      else
        ++group_refs[c.index];
    }
  };
  for (const auto& v : graph.vertices()) count_children(v.children);
  for (const auto& g : graph.groups()) count_children(g.children);
  for (std::size_t i = 0; i < port_refs.size(); ++i)
    if (port_refs[i] != 1) out.push_back({"port not referenced exactly once", {graph.ports()[i].id}});
  for (std::size_t i = 0; i < group_refs.size(); ++i)
    if (group_refs[i] != 1) out.push_back({"port group not referenced exactly once", {graph.groups()[i].id}});

  std::vector<int> degree(graph.port_count(), 0);
  for (const auto& e : graph.edges()) {
    ++degree[idx(e.a)];
    ++degree[idx(e.b)];
    if (e.a == e.b || graph.port(e.a).vertex == graph.port(e.b).vertex)
      out.push_back({"edge endpoints same vertex", {e.id}});
  }
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] > 1) out.push_back({"port has more than one edge", {graph.ports()[i].id}});

  std::vector<int> paired(graph.port_count(), 0);
  for (const auto& pp : graph.pairings()) {
    const auto& a = graph.port(pp.a);
    const auto& b = graph.port(pp.b);
    if (pp.a == pp.b) out.push_back({"pairing of a port with itself", {a.id}});
    if (a.vertex != b.vertex) out.push_back({"pairing across vertices", {a.id, b.id}});
    ++paired[idx(pp.a)];
    if (pp.a != pp.b) ++paired[idx(pp.b)];
  }
  for (std::size_t i = 0; i < paired.size(); ++i)
    if (paired[i] > 1) out.push_back({"port in more than one pairing", {graph.ports()[i].id}});

  if (!contracted_graph(graph).connected()) out.push_back({"graph disconnected", {}});
  return out;
}

}  // namespace portline

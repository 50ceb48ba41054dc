#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace portline {

// Strongly typed indices into PortGraph tables.
enum class VertexId : std::uint32_t {};
enum class PortId : std::uint32_t {};
enum class GroupId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

template <class E>
constexpr std::size_t idx(E e) noexcept {
  return static_cast<std::size_t>(e);
}

template <class E>
constexpr E make_id(std::size_t i) noexcept {
  return static_cast<E>(static_cast<std::uint32_t>(i));
}

enum class Side { Top, Bottom, Left, Right, Free };

std::string_view to_string(Side s) noexcept;
std::optional<Side> side_from_string(std::string_view s) noexcept;

/// A child in a port forest: either a port or a nested port group.
struct Element {
  enum class Kind { Port, Group };
  Kind kind;
  std::uint32_t index;

  static Element port(PortId p) { return {Kind::Port, static_cast<std::uint32_t>(p)}; }
  static Element group(GroupId g) { return {Kind::Group, static_cast<std::uint32_t>(g)}; }
  bool is_port() const noexcept { return kind == Kind::Port; }
  PortId as_port() const noexcept { return static_cast<PortId>(index); }
  GroupId as_group() const noexcept { return static_cast<GroupId>(index); }
  friend bool operator==(const Element&, const Element&) = default;
};

struct Vertex {
  std::string id;
  std::string label;
  double min_width = 1.0;
  double min_height = 1.0;
  std::vector<Element> children;  // top-level port forest
};

struct PortGroup {
  std::string id;
  VertexId vertex{};
  std::optional<GroupId> parent;
  Side side = Side::Free;
  bool ordered = false;
  std::vector<Element> children;
};

struct Port {
  std::string id;
  VertexId vertex{};
  std::optional<GroupId> parent;
  std::string label;
};

struct PortPairing {
  PortId a{};
  PortId b{};
};

struct Edge {
  std::string id;
  PortId a{};
  PortId b{};
};

struct Violation {
  std::string rule;
  std::vector<std::string> elements;
};

/// The five-tuple (V, P, PG, PP, E). Built incrementally through the add_*
/// methods; references are checked when added, structural rules are reported
/// by validate().
class PortGraph {
 public:
  VertexId add_vertex(std::string id, double min_width, double min_height, std::string label = {});
  GroupId add_group(std::string id, VertexId vertex, Side side, bool ordered,
                    std::optional<GroupId> parent = std::nullopt);
  PortId add_port(std::string id, VertexId vertex, std::optional<GroupId> parent = std::nullopt,
                  std::string label = {});
  void add_pairing(PortId a, PortId b);
  EdgeId add_edge(std::string id, PortId a, PortId b);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Port>& ports() const noexcept { return ports_; }
  const std::vector<PortGroup>& groups() const noexcept { return groups_; }
  const std::vector<PortPairing>& pairings() const noexcept { return pairings_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const Vertex& vertex(VertexId v) const { return vertices_.at(idx(v)); }
  const Port& port(PortId p) const { return ports_.at(idx(p)); }
  const PortGroup& group(GroupId g) const { return groups_.at(idx(g)); }
  const Edge& edge(EdgeId e) const { return edges_.at(idx(e)); }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t port_count() const noexcept { return ports_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<VertexId> find_vertex(std::string_view id) const;
  std::optional<PortId> find_port(std::string_view id) const;
  std::optional<GroupId> find_group(std::string_view id) const;

  /// Edge incident to a port, if any (first one when the graph is not yet valid).
  std::optional<EdgeId> edge_of(PortId p) const;
  /// Partner port of a pairing, if the port is paired.
  std::optional<PortId> partner_of(PortId p) const;

  /// Endpoint port of `e` that is not `p`.
  PortId other_end(EdgeId e, PortId p) const;

  /// Mutators used by constraint repair; they keep every index stable.
  void set_group_side(GroupId g, Side s) { groups_.at(idx(g)).side = s; }
  void set_vertex_size(VertexId v, double w, double h);
  void remove_pairing(std::size_t index);
  /// Replace the top-level forest of a vertex (used by the Left/Right transform).
  void set_vertex_children(VertexId v, std::vector<Element> children);
  void set_parent(Element e, std::optional<GroupId> parent);
  void set_group_children(GroupId g, std::vector<Element> children);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Port> ports_;
  std::vector<PortGroup> groups_;
  std::vector<PortPairing> pairings_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, PortId> port_index_;
  std::unordered_map<std::string, GroupId> group_index_;
  std::vector<std::optional<EdgeId>> edge_of_;
  std::vector<std::optional<std::size_t>> pairing_of_;
};

std::vector<Violation> validate(const PortGraph& graph);

/// Vertex-contracted simple graph: adjacency per unordered vertex pair with the
/// number of parallel edges recorded separately.
struct ContractedGraph {
  std::size_t vertex_count = 0;
  // Each adjacency (u < v) with its edge multiplicity, sorted lexicographically.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> adjacencies;
  std::vector<std::uint32_t> multiplicity;
  std::vector<std::vector<std::uint32_t>> neighbors;

  bool connected() const;
};

ContractedGraph contracted_graph(const PortGraph& graph);

/// Collect every port in the subtree of an element (document order).
void collect_ports(const PortGraph& graph, Element e, std::vector<PortId>& out);
std::vector<PortId> ports_of_vertex(const PortGraph& graph, VertexId v);

}  // namespace portline

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "portline/io.hpp"

namespace portline::io {

using nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw PlanError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw PlanError(path + ": missing key '" + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path, bool required = true) {
  if (!obj.is_object()) throw PlanError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw PlanError(path + ": missing key '" + key + "'");
    return {};
  }
  if (!it->is_string()) throw PlanError(path + "/" + key + ": expected string");
  return it->get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& path, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw PlanError(path + "/" + key + ": expected number");
  return it->get<double>();
}

std::vector<std::string> get_strings(const json& obj, const char* key, const std::string& path) {
  const auto& arr = member(obj, key, path);
  if (!arr.is_array()) throw PlanError(path + "/" + key + ": expected array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw PlanError(path + "/" + key + "/" + std::to_string(i) + ": expected string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

const json* array_or_null(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return nullptr;
  if (!it->is_array()) throw PlanError(std::string("/") + key + ": expected array");
  return &*it;
}

}  // namespace

std::string check_references(const RawPlan& plan) {
  std::unordered_set<std::string> vertices, ports, groups;
  for (const auto& v : plan.vertices)
    if (!vertices.insert(v.id).second) return "duplicate vertex id '" + v.id + "'";
  std::unordered_map<std::string, std::string> port_vertex;
  for (const auto& p : plan.ports) {
    if (!ports.insert(p.id).second) return "duplicate port id '" + p.id + "'";
    if (!vertices.count(p.vertex)) return "dangling reference: port '" + p.id + "' names unknown vertex '" + p.vertex + "'";
    port_vertex[p.id] = p.vertex;
  }
  std::unordered_map<std::string, std::string> group_vertex;
  for (const auto& g : plan.port_groups) {
    if (!groups.insert(g.id).second || ports.count(g.id)) return "duplicate port group id '" + g.id + "'";
    if (!vertices.count(g.vertex)) return "dangling reference: port group '" + g.id + "' names unknown vertex '" + g.vertex + "'";
    group_vertex[g.id] = g.vertex;
  }
  std::unordered_map<std::string, std::string> parent;
  for (const auto& g : plan.port_groups) {
    for (const auto& c : g.children) {
      const bool is_port = ports.count(c) != 0;
      if (!is_port && !groups.count(c)) return "dangling reference: port group '" + g.id + "' names unknown child '" + c + "'";
      const auto& owner = is_port ? port_vertex[c] : group_vertex[c];
      if (owner != g.vertex) return "port group '" + g.id + "' contains '" + c + "' of another vertex";
      if (!parent.emplace(c, g.id).second) return "element '" + c + "' belongs to more than one port group";
    }
  }
  for (const auto& g : plan.port_groups) {
    std::string cur = g.id;
    std::size_t steps = 0;
    while (parent.count(cur)) {
      cur = parent[cur];
      if (++steps > plan.port_groups.size()) return "port group nesting cycle at '" + g.id + "'";
    }
  }
  std::unordered_set<std::string> grouped;
  for (const auto& vg : plan.vertex_groups) {
    for (const auto& v : vg.vertices) {
      if (!vertices.count(v)) return "dangling reference: vertex group '" + vg.id + "' names unknown vertex '" + v + "'";
      if (!grouped.insert(v).second) return "vertex '" + v + "' belongs to more than one vertex group";
    }
  }
  for (const auto& pp : plan.pairings) {
    for (const auto* p : {&pp.a, &pp.b})
      if (!ports.count(*p)) return "dangling reference: pairing '" + pp.id + "' names unknown port '" + *p + "'";
  }
  for (const auto& e : plan.edges) {
    if (e.ports.size() < 2) return "edge '" + e.id + "' has fewer than two ports";
    for (const auto& p : e.ports)
      if (!ports.count(p)) return "dangling reference: edge '" + e.id + "' names unknown port '" + p + "'";
  }
  return {};
}

RawPlan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw PlanError("parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw PlanError("/: expected object");

  RawPlan plan;
  if (const auto* arr = array_or_null(doc, "vertices")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto& o = (*arr)[i];
      const std::string path = "/vertices/" + std::to_string(i);
      RawVertex v;
      v.id = get_string(o, "id", path);
      v.label = get_string(o, "label", path, false);
      v.width = get_number(o, "width", path, v.width);
      v.height = get_number(o, "height", path, v.height);
      plan.vertices.push_back(std::move(v));
    }
  }
  if (const auto* arr = array_or_null(doc, "vertexGroups")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string path = "/vertexGroups/" + std::to_string(i);
      plan.vertex_groups.push_back({get_string((*arr)[i], "id", path), get_strings((*arr)[i], "vertices", path)});
    }
  }
  if (const auto* arr = array_or_null(doc, "ports")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto& o = (*arr)[i];
      const std::string path = "/ports/" + std::to_string(i);
      plan.ports.push_back({get_string(o, "id", path), get_string(o, "vertex", path), get_string(o, "label", path, false)});
    }
  }
  if (const auto* arr = array_or_null(doc, "portGroups")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto& o = (*arr)[i];
      const std::string path = "/portGroups/" + std::to_string(i);
      RawPortGroup g;
      g.id = get_string(o, "id", path);
      g.vertex = get_string(o, "vertex", path);
      const auto side = side_from_string(get_string(o, "side", path, false));
      if (!side) throw PlanError(path + "/side: unknown side '" + get_string(o, "side", path) + "'");
      g.side = *side;
      if (auto it = o.find("ordered"); it != o.end()) {
        if (!it->is_boolean()) throw PlanError(path + "/ordered: expected boolean");
        g.ordered = it->get<bool>();
      }
      g.children = get_strings(o, "children", path);
      plan.port_groups.push_back(std::move(g));
    }
  }
  if (const auto* arr = array_or_null(doc, "portPairings")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string path = "/portPairings/" + std::to_string(i);
      auto ports = get_strings((*arr)[i], "ports", path);
      if (ports.size() != 2) throw PlanError(path + "/ports: a pairing has exactly two ports");
      plan.pairings.push_back({get_string((*arr)[i], "id", path), ports[0], ports[1]});
    }
  }
  if (const auto* arr = array_or_null(doc, "edges")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string path = "/edges/" + std::to_string(i);
      plan.edges.push_back({get_string((*arr)[i], "id", path), get_strings((*arr)[i], "ports", path)});
    }
  }
  if (auto problem = check_references(plan); !problem.empty()) throw PlanError(problem);
  return plan;
}

RawPlan read_plan_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PlanError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_plan(ss.str());
  } catch (const PlanError& e) {
    throw PlanError(path + ": " + e.what());
  }
}

std::string serialize_plan(const RawPlan& plan) {
  json doc = json::object();
  json vertices = json::array();
  for (const auto& v : plan.vertices)
    vertices.push_back({{"id", v.id}, {"label", v.label}, {"width", v.width}, {"height", v.height}});
  json vgroups = json::array();
  for (const auto& g : plan.vertex_groups) vgroups.push_back({{"id", g.id}, {"vertices", g.vertices}});
  json ports = json::array();
  for (const auto& p : plan.ports) ports.push_back({{"id", p.id}, {"vertex", p.vertex}, {"label", p.label}});
  json pgroups = json::array();
  for (const auto& g : plan.port_groups)
    pgroups.push_back({{"id", g.id},
                       {"vertex", g.vertex},
                       {"side", std::string(to_string(g.side))},
                       {"ordered", g.ordered},
                       {"children", g.children}});
  json pairings = json::array();
  for (const auto& pp : plan.pairings) pairings.push_back({{"id", pp.id}, {"ports", {pp.a, pp.b}}});
  json edges = json::array();
  for (const auto& e : plan.edges) edges.push_back({{"id", e.id}, {"ports", e.ports}});
  doc["vertices"] = std::move(vertices);
  doc["vertexGroups"] = std::move(vgroups);
  doc["ports"] = std::move(ports);
  doc["portGroups"] = std::move(pgroups);
  doc["portPairings"] = std::move(pairings);
  doc["edges"] = std::move(edges);
  return doc.dump(1) + "\n";
}

void write_plan_file(const std::string& path, const RawPlan& plan) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PlanError("cannot write '" + path + "'");
  out << serialize_plan(plan);
}

}  // namespace portline::io

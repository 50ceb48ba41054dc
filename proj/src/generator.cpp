#include "portline/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace portline::gen {

namespace {

using io::RawPlan;

// ceil(q * n) without the float noise of 0.05 * 100.
std::size_t quota(double q, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
}

// Vertex as seen after normalization: members of a vertex group collapse.
std::unordered_map<std::string, std::string> canonical_vertices(const RawPlan& plan) {
  std::unordered_map<std::string, std::string> out;
  for (const auto& v : plan.vertices) out[v.id] = v.id;
  for (const auto& vg : plan.vertex_groups)
    for (const auto& m : vg.vertices) out[m] = vg.id;
  return out;
}

std::unordered_map<std::string, std::string> port_vertices(const RawPlan& plan) {
  std::unordered_map<std::string, std::string> out;
  for (const auto& p : plan.ports) out[p.id] = p.vertex;
  return out;
}

// Sorted distinct terminal vertices of an edge.
std::vector<std::string> terminal_key(const std::vector<std::string>& ports,
                                      const std::unordered_map<std::string, std::string>& pv,
                                      const std::unordered_map<std::string, std::string>& canon) {
  std::vector<std::string> key;
  for (const auto& p : ports) key.push_back(canon.at(pv.at(p)));
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

std::string join(const std::vector<std::string>& key) {
  std::string out;
  for (const auto& k : key) {
    out += k;
    out += '\x1f';
  }
  return out;
}

Distribution normalized(const std::map<int, double>& counts) {
  double total = 0;
  for (const auto& [k, c] : counts) total += c;
  Distribution out;
  if (total <= 0) return out;
  for (const auto& [k, c] : counts) out[k] = c / total;
  return out;
}

int draw(const Distribution& d, Rng& rng, int fallback) {
  if (d.empty()) return fallback;
  double u = rng.uniform();
  for (const auto& [k, p] : d) {
    if (u < p) return k;
    u -= p;
  }
  return d.rbegin()->first;
}

FeatureStat stat_of(const std::vector<double>& values) {
  FeatureStat s;
  if (values.empty()) return s;
  for (auto v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0;
  for (auto v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// Mutable plan with cascading removals. Removal keeps file order.
class Editor {
 public:
  explicit Editor(RawPlan plan) : plan_(std::move(plan)) {
    for (const auto& v : plan_.vertices) used_.insert(v.id);
    for (const auto& g : plan_.vertex_groups) used_.insert(g.id);
    for (const auto& p : plan_.ports) used_.insert(p.id);
    for (const auto& g : plan_.port_groups) used_.insert(g.id);
    for (const auto& p : plan_.pairings) used_.insert(p.id);
    for (const auto& e : plan_.edges) used_.insert(e.id);
  }

  RawPlan& plan() { return plan_; }
  void reserve(const std::string& id) { used_.insert(id); }

  std::string fresh(const std::string& stem) {
    for (;;) {
      std::string id = stem + std::to_string(counter_++);
      if (used_.insert(id).second) return id;
    }
  }

  void remove_edges(const std::function<bool(const io::RawEdge&)>& pred) { std::erase_if(plan_.edges, pred); }

  void remove_ports(const std::unordered_set<std::string>& ids) {
    if (ids.empty()) return;
    std::erase_if(plan_.ports, [&](const io::RawPort& p) { return ids.count(p.id) != 0; });
    std::erase_if(plan_.pairings, [&](const io::RawPairing& p) { return ids.count(p.a) || ids.count(p.b); });
    remove_edges([&](const io::RawEdge& e) {
      return std::any_of(e.ports.begin(), e.ports.end(), [&](const std::string& p) { return ids.count(p) != 0; });
    });
    for (auto& g : plan_.port_groups)
      std::erase_if(g.children, [&](const std::string& c) { return ids.count(c) != 0; });
    prune_groups();
  }

  void remove_vertices(const std::unordered_set<std::string>& ids) {
    if (ids.empty()) return;
    std::unordered_set<std::string> ports;
    for (const auto& p : plan_.ports)
      if (ids.count(p.vertex)) ports.insert(p.id);
    remove_ports(ports);
    std::erase_if(plan_.port_groups, [&](const io::RawPortGroup& g) { return ids.count(g.vertex) != 0; });
    std::erase_if(plan_.vertices, [&](const io::RawVertex& v) { return ids.count(v.id) != 0; });
    for (auto& vg : plan_.vertex_groups)
      std::erase_if(vg.vertices, [&](const std::string& v) { return ids.count(v) != 0; });
    std::erase_if(plan_.vertex_groups, [](const io::RawVertexGroup& vg) { return vg.vertices.empty(); });
  }

 private:
  // Empty port groups disappear, and so may their parents.
  void prune_groups() {
    for (bool changed = true; changed;) {
      changed = false;
      std::unordered_set<std::string> empty;
      for (const auto& g : plan_.port_groups)
        if (g.children.empty()) empty.insert(g.id);
      if (empty.empty()) return;
      std::erase_if(plan_.port_groups, [&](const io::RawPortGroup& g) { return empty.count(g.id) != 0; });
      for (auto& g : plan_.port_groups)
        changed |= std::erase_if(g.children, [&](const std::string& c) { return empty.count(c) != 0; }) > 0;
    }
  }

  RawPlan plan_;
  std::unordered_set<std::string> used_;
  std::size_t counter_ = 0;
};

template <class T>
std::vector<std::string> sorted_ids(const std::vector<T>& items) {
  std::vector<std::string> ids;
  for (const auto& x : items) ids.push_back(x.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::unordered_set<std::string> choose(std::vector<std::string> ids, std::size_t k, Rng& rng) {
  rng.shuffle(ids);
  ids.resize(std::min(k, ids.size()));
  return {ids.begin(), ids.end()};
}

}  // namespace

PlanFeatures plan_features(const RawPlan& plan) {
  PlanFeatures f;
  f.vertex_groups = static_cast<double>(plan.vertex_groups.size());
  f.vertices = static_cast<double>(plan.vertices.size());
  f.ports = static_cast<double>(plan.ports.size());
  f.pairings = static_cast<double>(plan.pairings.size());
  f.edges = static_cast<double>(plan.edges.size());

  const auto canon = canonical_vertices(plan);
  const auto pv = port_vertices(plan);
  std::unordered_map<std::string, double> multiplicity;
  std::map<int, double> arity;
  std::unordered_map<std::string, int> degree;
  std::size_t counted = 0;
  for (const auto& e : plan.edges) {
    arity[static_cast<int>(e.ports.size())] += 1;
    for (const auto& p : e.ports) ++degree[p];
    const auto key = terminal_key(e.ports, pv, canon);
    if (key.size() == 1) {
      f.self_loops += 1;
      continue;
    }
    multiplicity[join(key)] += 1;
    ++counted;
  }
  double sq = 0;
  for (const auto& [k, m] : multiplicity) sq += m * m;
  f.parallel_edge_mean = counted ? sq / static_cast<double>(counted) : 0;
  std::map<int, double> deg;
  for (const auto& [p, d] : degree) deg[d] += 1;
  f.connected_ports = plan.ports.empty() ? 0 : static_cast<double>(degree.size()) / f.ports;
  f.ports_per_edge = normalized(arity);
  f.edges_per_port = normalized(deg);

  // Diameter of the largest component; a hyperedge links all its terminals.
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [v, c] : canon)
    if (!index.count(c)) index.emplace(c, index.size());
  std::vector<std::set<std::size_t>> adj(index.size());
  for (const auto& e : plan.edges) {
    const auto key = terminal_key(e.ports, pv, canon);
    for (std::size_t i = 0; i < key.size(); ++i)
      for (std::size_t j = i + 1; j < key.size(); ++j) {
        adj[index[key[i]]].insert(index[key[j]]);
        adj[index[key[j]]].insert(index[key[i]]);
      }
  }
  auto bfs = [&](std::size_t s, std::vector<int>& dist) {
    dist.assign(adj.size(), -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
  };
  std::vector<int> comp(adj.size(), -1), dist;
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (comp[s] >= 0) continue;
    bfs(s, dist);
    comps.emplace_back();
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (dist[v] >= 0) {
        comp[v] = static_cast<int>(comps.size() - 1);
        comps.back().push_back(v);
      }
  }
  const std::vector<std::size_t>* largest = nullptr;
  for (const auto& c : comps)
    if (!largest || c.size() > largest->size()) largest = &c;
  if (largest)
    for (auto s : *largest) {
      bfs(s, dist);
      for (auto v : *largest) f.diameter = std::max(f.diameter, static_cast<double>(dist[v]));
    }
  return f;
}

CorpusStats corpus_stats(const std::vector<RawPlan>& plans) {
  if (plans.empty()) throw std::invalid_argument("corpus is empty");
  CorpusStats s;
  s.plan_count = plans.size();
  for (const auto& p : plans) s.plans.push_back(plan_features(p));
  auto column = [&](double PlanFeatures::*field) {
    std::vector<double> v;
    for (const auto& f : s.plans) v.push_back(f.*field);
    return stat_of(v);
  };
  s.vertex_groups = column(&PlanFeatures::vertex_groups);
  s.vertices = column(&PlanFeatures::vertices);
  s.ports = column(&PlanFeatures::ports);
  s.pairings = column(&PlanFeatures::pairings);
  s.edges = column(&PlanFeatures::edges);
  s.self_loops = column(&PlanFeatures::self_loops);
  s.parallel_edge_mean = column(&PlanFeatures::parallel_edge_mean);
  s.connected_ports = column(&PlanFeatures::connected_ports);
  s.diameter = column(&PlanFeatures::diameter);
  std::map<int, double> arity, degree;
  for (const auto& f : s.plans) {
    for (const auto& [k, p] : f.ports_per_edge) arity[k] += p * f.edges;
    for (const auto& [k, p] : f.edges_per_port) degree[k] += p * f.ports * f.connected_ports;
  }
  s.ports_per_edge = normalized(arity);
  s.edges_per_port = normalized(degree);
  return s;
}

Targets sample_targets(const CorpusStats& stats, const PlanFeatures& original, const GenConfig& config, Rng& rng) {
  const double divisor = static_cast<double>(stats.plan_count) * config.std_scale;
  auto value = [&](double mean, const FeatureStat& fs) {
    return std::max(0.0, rng.normal(mean, fs.std / divisor));
  };
  auto count = [&](double mean, const FeatureStat& fs) { return std::lround(value(mean, fs)); };
  Targets t;
  t.vertex_groups = count(original.vertex_groups, stats.vertex_groups);
  t.vertices = count(original.vertices, stats.vertices);
  t.ports = count(original.ports, stats.ports);
  t.pairings = count(original.pairings, stats.pairings);
  t.edges = count(original.edges, stats.edges);
  t.self_loops = count(original.self_loops, stats.self_loops);
  t.parallel_edge_mean = value(original.parallel_edge_mean, stats.parallel_edge_mean);
  t.connected_ports = std::min(1.0, value(original.connected_ports, stats.connected_ports));
  t.ports_per_edge = original.ports_per_edge.empty() ? stats.ports_per_edge : original.ports_per_edge;
  t.edges_per_port = original.edges_per_port.empty() ? stats.edges_per_port : original.edges_per_port;
  return t;
}

RawPlan delete_phase(const RawPlan& plan, double q, Rng& rng) {
  Editor ed(plan);
  auto& p = ed.plan();

  const auto groups = choose(sorted_ids(p.vertex_groups), quota(q, p.vertex_groups.size()), rng);
  std::unordered_set<std::string> members;
  for (const auto& vg : p.vertex_groups)
    if (groups.count(vg.id)) members.insert(vg.vertices.begin(), vg.vertices.end());
  ed.remove_vertices(members);
  std::erase_if(p.vertex_groups, [&](const io::RawVertexGroup& vg) { return groups.count(vg.id) != 0; });

  ed.remove_vertices(choose(sorted_ids(p.vertices), quota(q, p.vertices.size()), rng));

  const auto pairings = choose(sorted_ids(p.pairings), quota(q, p.pairings.size()), rng);
  std::unordered_set<std::string> paired_ports;
  for (const auto& pp : p.pairings)
    if (pairings.count(pp.id)) {
      paired_ports.insert(pp.a);
      paired_ports.insert(pp.b);
    }
  std::erase_if(p.pairings, [&](const io::RawPairing& pp) { return pairings.count(pp.id) != 0; });
  ed.remove_ports(paired_ports);

  ed.remove_ports(choose(sorted_ids(p.ports), quota(q, p.ports.size()), rng));

  const auto edges = choose(sorted_ids(p.edges), quota(q, p.edges.size()), rng);
  ed.remove_edges([&](const io::RawEdge& e) { return edges.count(e.id) != 0; });
  return std::move(p);
}

namespace {

RawPlan insert_impl(const RawPlan& plan, const Targets& t, const GenConfig& config, Rng& rng,
                    const std::vector<std::string>& reserved, InsertReport& rep) {
  Editor ed(plan);
  for (const auto& id : reserved) ed.reserve(id);
  auto& p = ed.plan();
  auto size_of = [](const auto& v) { return static_cast<long>(v.size()); };

  auto add_vertex = [&]() {
    io::RawVertex v;
    if (!p.vertices.empty()) {
      const auto& model = p.vertices[rng.index(p.vertices.size())];
      v.width = model.width;
      v.height = model.height;
    }
    v.id = ed.fresh("nv");
    v.label = v.id;
    p.vertices.push_back(v);
    return v.id;
  };
  auto add_port = [&](const std::string& vertex) {
    const std::string id = ed.fresh("np");
    p.ports.push_back({id, vertex, ""});
    return id;
  };
  auto add_pairing = [&](const std::string& va, const std::string& vb) {
    const auto a = add_port(va);
    const auto b = add_port(vb);
    p.pairings.push_back({ed.fresh("npp"), a, b});
  };

  while (size_of(p.vertex_groups) < t.vertex_groups) {
    const auto a = add_vertex(), b = add_vertex();
    p.vertex_groups.push_back({ed.fresh("nvg"), {a, b}});
    add_pairing(a, b);
  }
  while (size_of(p.vertices) < t.vertices) add_vertex();
  while (size_of(p.pairings) < t.pairings) {
    std::vector<const io::RawVertexGroup*> eligible;
    for (const auto& vg : p.vertex_groups)
      if (vg.vertices.size() >= 2) eligible.push_back(&vg);
    if (eligible.empty()) {
      rep.warnings.push_back("pairing target unreachable: no vertex group with two vertices");
      break;
    }
    std::sort(eligible.begin(), eligible.end(), [](auto* a, auto* b) { return a->id < b->id; });
    const auto& members = eligible[rng.index(eligible.size())]->vertices;
    const auto i = rng.index(members.size());
    auto j = rng.index(members.size() - 1);
    if (j >= i) ++j;
    add_pairing(members[i], members[j]);
  }

  // Ports: vertices without any port first, then uniformly; sometimes into an
  // existing port group of the vertex.
  {
    std::unordered_map<std::string, std::size_t> port_count;
    for (const auto& port : p.ports) ++port_count[port.vertex];
    std::size_t bare = 0;
    while (size_of(p.ports) < t.ports) {
      while (bare < p.vertices.size() && port_count[p.vertices[bare].id] > 0) ++bare;
      const std::string v = bare < p.vertices.size() ? p.vertices[bare].id : p.vertices[rng.index(p.vertices.size())].id;
      const auto id = add_port(v);
      ++port_count[v];
      std::vector<io::RawPortGroup*> own;
      for (auto& g : p.port_groups)
        if (g.vertex == v) own.push_back(&g);
      if (!own.empty() && rng.uniform() < 0.3) own[rng.index(own.size())]->children.push_back(id);
    }
  }

  const auto canon = [&] { return canonical_vertices(p); };
  auto has_edge = [&] {
    std::unordered_set<std::string> out;
    for (const auto& e : p.edges) out.insert(e.ports.begin(), e.ports.end());
    return out;
  };

  // Reconnect components, each to the union of the ones before it.
  {
    const auto cv = canon();
    std::unordered_map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      return it->second = find(it->second);
    };
    auto unite = [&](const std::string& a, const std::string& b) { parent[find(a)] = find(b); };
    const auto pv = port_vertices(p);
    for (const auto& e : p.edges)
      for (std::size_t k = 1; k < e.ports.size(); ++k) unite(cv.at(pv.at(e.ports[0])), cv.at(pv.at(e.ports[k])));
    std::vector<std::string> roots;
    std::unordered_map<std::string, std::vector<std::string>> members;
    for (const auto& v : p.vertices) {
      const auto r = find(cv.at(v.id));
      if (!members.count(r)) roots.push_back(r);
      members[r].push_back(v.id);
    }
    auto endpoint = [&](const std::vector<std::string>& vertices) {
      const auto used = has_edge();
      std::unordered_set<std::string> inside(vertices.begin(), vertices.end());
      std::vector<std::string> free;
      for (const auto& port : p.ports)
        if (inside.count(port.vertex) && !used.count(port.id)) free.push_back(port.id);
      if (!free.empty()) return free[rng.index(free.size())];
      return add_port(vertices[rng.index(vertices.size())]);
    };
    std::vector<std::string> connected;
    for (std::size_t c = 0; c < roots.size(); ++c) {
      const auto& comp = members[roots[c]];
      if (c > 0) {
        const auto a = endpoint(connected);
        const auto b = endpoint(comp);
        p.edges.push_back({ed.fresh("ne"), {a, b}});
        ++rep.reconnecting_edges;
      }
      connected.insert(connected.end(), comp.begin(), comp.end());
    }
  }

  // Candidate ports get a planned degree; edges draw the best of c endpoint sets.
  const auto cv = canon();
  auto pv = port_vertices(p);
  std::unordered_map<std::string, double> multiplicity;
  double sq = 0, counted = 0, loops = 0;
  for (const auto& e : p.edges) {
    const auto key = terminal_key(e.ports, pv, cv);
    if (key.size() == 1) {
      loops += 1;
      continue;
    }
    const double m = multiplicity[join(key)]++;
    sq += 2 * m + 1;
    counted += 1;
  }
  std::vector<std::string> cand;
  std::unordered_map<std::string, int> remaining;
  bool refilled = false;
  auto free_ports = [&] {
    const auto used = has_edge();
    std::vector<std::string> out;
    for (const auto& id : sorted_ids(p.ports))
      if (!used.count(id) && !remaining.count(id)) out.push_back(id);
    return out;
  };
  {
    auto free = free_ports();
    const long connected = size_of(p.ports) - static_cast<long>(free.size());
    const long want = std::lround(t.connected_ports * static_cast<double>(p.ports.size())) - connected;
    rng.shuffle(free);
    free.resize(static_cast<std::size_t>(std::clamp<long>(want, 0, size_of(free))));
    std::sort(free.begin(), free.end());
    for (const auto& id : free) {
      remaining[id] = std::max(1, draw(t.edges_per_port, rng, 1));
      cand.push_back(id);
    }
  }
  const int c = std::max(1, config.candidates);
  while (size_of(p.edges) < t.edges) {
    if (cand.size() < 2 && !refilled) {
      refilled = true;
      for (const auto& id : free_ports()) {
        remaining[id] = 1;
        cand.push_back(id);
      }
    }
    if (cand.size() < 2) {
      rep.warnings.push_back("edge target unreachable: " + std::to_string(t.edges - size_of(p.edges)) +
                             " edges short of candidate ports");
      break;
    }
    const auto d = static_cast<std::size_t>(std::clamp<long>(draw(t.ports_per_edge, rng, 2), 2, size_of(cand)));
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_set;
    std::vector<std::size_t> pick;
    for (int k = 0; k < c; ++k) {
      pick.clear();
      while (pick.size() < d) {
        const auto i = rng.index(cand.size());
        if (std::find(pick.begin(), pick.end(), i) == pick.end()) pick.push_back(i);
      }
      std::vector<std::string> ports;
      for (auto i : pick) ports.push_back(cand[i]);
      const auto key = terminal_key(ports, pv, cv);
      double pe = counted ? sq / counted : 0, sl = loops;
      if (key.size() == 1) {
        sl += 1;
      } else {
        auto it = multiplicity.find(join(key));
        const double m = it == multiplicity.end() ? 0 : it->second;
        pe = (sq + 2 * m + 1) / (counted + 1);
      }
      const double score = std::abs(pe - t.parallel_edge_mean) / std::max(t.parallel_edge_mean, 1.0) +
                           std::abs(sl - static_cast<double>(t.self_loops)) / std::max(static_cast<double>(t.self_loops), 1.0);
      if (score < best) {
        best = score;
        best_set = pick;
      }
    }
    std::vector<std::string> ports;
    for (auto i : best_set) ports.push_back(cand[i]);
    const auto key = terminal_key(ports, pv, cv);
    if (key.size() == 1) {
      loops += 1;
    } else {
      const double m = multiplicity[join(key)]++;
      sq += 2 * m + 1;
      counted += 1;
    }
    p.edges.push_back({ed.fresh("ne"), ports});
    for (const auto& id : ports) --remaining[id];
    std::erase_if(cand, [&](const std::string& id) { return remaining[id] <= 0; });
  }
  return std::move(p);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t variant) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (variant + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class T>
void add_ids(std::vector<std::string>& out, const std::vector<T>& items) {
  for (const auto& x : items) out.push_back(x.id);
}

}  // namespace

RawPlan insert_phase(const RawPlan& plan, const Targets& targets, const GenConfig& config, Rng& rng,
                     InsertReport* report) {
  InsertReport local;
  return insert_impl(plan, targets, config, rng, {}, report ? *report : local);
}

Generated generate(const RawPlan& source, const CorpusStats& stats, const GenConfig& config, std::uint64_t variant) {
  Rng rng(mix(config.seed, variant));
  const auto targets = sample_targets(stats, plan_features(source), config, rng);
  const auto reduced = delete_phase(source, config.q, rng);
  std::vector<std::string> reserved;
  add_ids(reserved, source.vertices);
  add_ids(reserved, source.vertex_groups);
  add_ids(reserved, source.ports);
  add_ids(reserved, source.port_groups);
  add_ids(reserved, source.pairings);
  add_ids(reserved, source.edges);
  InsertReport rep;
  Generated out;
  out.plan = insert_impl(reduced, targets, config, rng, reserved, rep);
  out.warnings = std::move(rep.warnings);
  return out;
}

double replaced_fraction(const RawPlan& source, const RawPlan& output) {
  std::size_t total = 0, gone = 0;
  auto category = [&](const auto& before, const auto& after) {
    std::unordered_set<std::string> kept;
    for (const auto& x : after) kept.insert(x.id);
    for (const auto& x : before) {
      ++total;
      gone += kept.count(x.id) == 0;
    }
  };
  category(source.vertex_groups, output.vertex_groups);
  category(source.vertices, output.vertices);
  category(source.ports, output.ports);
  category(source.pairings, output.pairings);
  category(source.edges, output.edges);
  return total ? static_cast<double>(gone) / static_cast<double>(total) : 0;
}

std::vector<SimilarityRow> similarity_report(const CorpusStats& original, const CorpusStats& generated, double band) {
  std::vector<SimilarityRow> rows;
  auto row = [&](const char* name, double PlanFeatures::*field) {
    SimilarityRow r;
    r.feature = name;
    std::vector<double> a, b;
    for (const auto& f : original.plans) a.push_back(f.*field);
    for (const auto& f : generated.plans) b.push_back(f.*field);
    r.original_mean = stat_of(a).mean;
    r.generated_mean = stat_of(b).mean;
    r.original_median = median(a);
    r.generated_median = median(b);
    const double diff = std::abs(r.generated_mean - r.original_mean);
    r.deviation = diff == 0 ? 0 : diff / std::max(std::abs(r.original_mean), 1e-12);
    r.flagged = r.deviation > band;
    rows.push_back(r);
  };
  row("vertices", &PlanFeatures::vertices);
  row("ports", &PlanFeatures::ports);
  row("edges", &PlanFeatures::edges);
  row("parallel edge mean", &PlanFeatures::parallel_edge_mean);
  row("diameter", &PlanFeatures::diameter);
  return rows;
}

std::string format_report(const std::vector<SimilarityRow>& rows) {
  std::string out = "| feature | original mean | original median | generated mean | generated median | deviation |\n";
  out += "|---|---|---|---|---|---|\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "| %s | %.3f | %.3f | %.3f | %.3f | %.1f%%%s |\n", r.feature.c_str(), r.original_mean,
                  r.original_median, r.generated_mean, r.generated_median, 100 * r.deviation, r.flagged ? " !" : "");
    out += buf;
  }
  return out;
}

}  // namespace portline::gen

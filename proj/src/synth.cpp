#include <algorithm>
#include <string>
#include <unordered_set>

#include "portline/generator.hpp"

namespace portline::gen {

io::RawPlan synthesize_plan(const SynthConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  io::RawPlan plan;
  const int span = std::max(0, config.max_vertices - config.min_vertices);
  const auto n = static_cast<std::size_t>(config.min_vertices) + rng.index(static_cast<std::size_t>(span) + 1);
  auto vid = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i)
    plan.vertices.push_back({vid(i), "dev" + std::to_string(i), 40.0 + 8.0 * static_cast<double>(rng.index(8)),
                             24.0 + 8.0 * static_cast<double>(rng.index(3))});

  // Cables as vertex lists; neighbours are mostly close in index (devices in
  // one cabinet talk to each other).
  std::vector<std::vector<std::size_t>> cables;
  auto near = [&](std::size_t u) {
    const std::size_t d = 1 + rng.index(8);
    std::size_t w = rng.index(2) ? u + d : (u >= d ? u - d : u + d);
    return std::min(w, n - 1);
  };
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = rng.uniform() < 0.5 ? i - 1 - rng.index(std::min<std::size_t>(i, 6)) : rng.index(i);
    cables.push_back({parent, i});
  }
  const auto extra = static_cast<std::size_t>(config.extra_edge_ratio * static_cast<double>(n));
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t u = rng.index(n), w = near(u);
    if (u != w) cables.push_back({u, w});
  }
  const std::size_t base = cables.size();
  for (std::size_t k = 0; k < base; ++k) {
    if (rng.uniform() < config.parallel_probability) cables.push_back(cables[k]);
    if (rng.uniform() < config.hyperedge_probability) {
      auto c = cables[k];
      const std::size_t w = near(c[1]);
      if (std::find(c.begin(), c.end(), w) == c.end()) c.push_back(w);
      cables[k] = c;
    }
  }
  if (rng.uniform() < 0.3) {
    const std::size_t u = rng.index(n);
    cables.push_back({u, u});
  }

  // Bundled devices: pairs of neighbouring vertices.
  std::vector<char> grouped(n, 0);
  const auto groups = std::max<std::size_t>(1, static_cast<std::size_t>(config.vertex_group_fraction * static_cast<double>(n) / 2));
  for (std::size_t g = 0, tries = 0; g < groups && tries < 10 * groups; ++tries) {
    const std::size_t i = rng.index(n - 1);
    if (grouped[i] || grouped[i + 1]) continue;
    grouped[i] = grouped[i + 1] = 1;
    plan.vertex_groups.push_back({"vg" + std::to_string(g), {vid(i), vid(i + 1)}});
    ++g;
  }

  std::vector<std::vector<std::string>> ports_of(n);
  std::vector<std::vector<std::string>> wired(n);  // ports that already carry an edge
  auto new_port = [&](std::size_t v) {
    std::string id = vid(v) + ".p" + std::to_string(ports_of[v].size());
    plan.ports.push_back({id, vid(v), ""});
    ports_of[v].push_back(id);
    return id;
  };
  for (std::size_t k = 0; k < cables.size(); ++k) {
    io::RawEdge e{"e" + std::to_string(k), {}};
    for (auto v : cables[k]) {
      std::string port;
      if (!wired[v].empty() && rng.uniform() < config.shared_port_probability) {
        port = wired[v][rng.index(wired[v].size())];
        if (std::find(e.ports.begin(), e.ports.end(), port) != e.ports.end()) port.clear();
      }
      if (port.empty()) {
        port = new_port(v);
        wired[v].push_back(port);
      }
      e.ports.push_back(port);
    }
    plan.edges.push_back(std::move(e));
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = rng.index(3); k > 0; --k) new_port(v);

  // Plugs between bundled devices, half of them wired onwards.
  std::size_t pairing = 0;
  for (const auto& vg : plan.vertex_groups) {
    const std::size_t a = std::stoul(vg.vertices[0].substr(1)), b = a + 1;
    for (std::size_t k = 1 + rng.index(3); k > 0; --k) {
      const auto pa = new_port(a), pb = new_port(b);
      plan.pairings.push_back({"pp" + std::to_string(pairing++), pa, pb});
      if (rng.uniform() < 0.5) {
        const std::size_t w = near(b);
        if (w != a && w != b)
          plan.edges.push_back({"e" + std::to_string(plan.edges.size()), {pb, new_port(w)}});
      }
    }
  }

  // Connectors: consecutive runs of ports, sometimes ordered, sometimes sided,
  // sometimes two of them bundled into one housing.
  for (std::size_t v = 0; v < n; ++v) {
    auto ports = ports_of[v];
    rng.shuffle(ports);
    std::vector<std::string> connectors;
    for (std::size_t i = 0; i < ports.size();) {
      const std::size_t len = std::min(ports.size() - i, 1 + rng.index(4));
      if (len >= 2) {
        io::RawPortGroup g;
        g.id = vid(v) + ".g" + std::to_string(connectors.size());
        g.vertex = vid(v);
        g.ordered = rng.uniform() < 0.4;
        if (!grouped[v] && rng.uniform() < config.sided_group_probability)
          g.side = rng.index(2) ? Side::Top : Side::Bottom;
        g.children.assign(ports.begin() + static_cast<std::ptrdiff_t>(i),
                          ports.begin() + static_cast<std::ptrdiff_t>(i + len));
        connectors.push_back(g.id);
        plan.port_groups.push_back(std::move(g));
      }
      i += len;
    }
    if (connectors.size() >= 2 && rng.uniform() < 0.15) {
      io::RawPortGroup housing;
      housing.id = vid(v) + ".h";
      housing.vertex = vid(v);
      housing.children = {connectors[0], connectors[1]};
      plan.port_groups.push_back(std::move(housing));
    }
  }
  return plan;
}

}  // namespace portline::gen

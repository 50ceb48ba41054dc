#include "portline/orient.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "portline/random.hpp"

namespace portline {

std::string_view to_string(OrientMethod m) noexcept {
  switch (m) {
    case OrientMethod::FD: return "fd";
    case OrientMethod::BFS: return "bfs";
    case OrientMethod::Rand: return "rand";
  }
  return "fd";
}

std::optional<OrientMethod> orient_method_from_string(std::string_view s) noexcept {
  if (s == "fd") return OrientMethod::FD;
  if (s == "bfs") return OrientMethod::BFS;
  if (s == "rand") return OrientMethod::Rand;
  return std::nullopt;
}

std::pair<double, double> default_area(std::size_t vertex_count) {
  const double side = 100.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(vertex_count, 1)));
  return {side, side};
}

Orientation orient_bfs(const PortGraph& graph, std::uint64_t seed) {
  const auto cg = contracted_graph(graph);
  const std::size_t n = cg.vertex_count;
  std::vector<std::size_t> discovered(n, std::numeric_limits<std::size_t>::max());
  Rng rng(seed);
  std::size_t clock = 0;
  auto run = [&](std::uint32_t start) {
    std::deque<std::uint32_t> queue{start};
    discovered[start] = clock++;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto w : cg.neighbors[u]) {
        if (discovered[w] != std::numeric_limits<std::size_t>::max()) continue;
        discovered[w] = clock++;
        queue.push_back(w);
      }
    }
  };
  if (n > 0) run(static_cast<std::uint32_t>(rng.index(n)));
  for (std::uint32_t v = 0; v < n; ++v)
    if (discovered[v] == std::numeric_limits<std::size_t>::max()) run(v);

  Orientation o;
  for (const auto& e : graph.edges()) {
    VertexId a = graph.port(e.a).vertex, b = graph.port(e.b).vertex;
    if (discovered[idx(b)] < discovered[idx(a)]) std::swap(a, b);
    o.direction.emplace_back(a, b);
  }
  return o;
}

namespace {

bool segments_cross(Point a, Point b, Point c, Point d) {
  auto orient3 = [](Point p, Point q, Point r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return (v > 0) - (v < 0);
  };
  const int o1 = orient3(a, b, c), o2 = orient3(a, b, d), o3 = orient3(c, d, a), o4 = orient3(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

std::vector<Point> spring_embed(const ContractedGraph& cg, int iterations, double width, double height, Rng& rng) {
  const std::size_t n = cg.vertex_count;
  std::vector<Point> pos(n);
  if (n == 1) {
    pos[0] = {width / 2, height / 2};
    return pos;
  }
  for (auto& p : pos) p = {rng.uniform(0, width), rng.uniform(0, height)};
  const double k = std::sqrt(width * height / static_cast<double>(std::max<std::size_t>(n, 1)));
  const double k2 = k * k;
  const double t0 = width / 10;
  std::vector<Point> disp(n);
  for (int it = 0; it < iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        double d2 = dx * dx + dy * dy;
        if (d2 < 1e-9) {
          // Coincident vertices: push apart along a fixed direction.
          dx = 1e-3 * static_cast<double>(j - i);
          dy = 0;
          d2 = dx * dx;
        }
        const double f = k2 / d2;  // (k^2 / d) / d
        disp[i].x += dx * f;
        disp[i].y += dy * f;
        disp[j].x -= dx * f;
        disp[j].y -= dy * f;
      }
    }
    for (const auto& [u, v] : cg.adjacencies) {
      const double dx = pos[u].x - pos[v].x, dy = pos[u].y - pos[v].y;
      const double d = std::sqrt(dx * dx + dy * dy);
      const double f = d / k;  // (d^2 / k) / d
      disp[u].x -= dx * f;
      disp[u].y -= dy * f;
      disp[v].x += dx * f;
      disp[v].y += dy * f;
    }
    const double t = t0 * (1.0 - static_cast<double>(it) / iterations);
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
      if (len > 0) {
        const double step = std::min(len, t);
        pos[i].x += disp[i].x / len * step;
        pos[i].y += disp[i].y / len * step;
      }
      pos[i].x = std::clamp(pos[i].x, 0.0, width);
      pos[i].y = std::clamp(pos[i].y, 0.0, height);
    }
  }
  return pos;
}

}  // namespace

std::size_t straight_line_crossings(const ContractedGraph& cg, const std::vector<Point>& positions) {
  std::size_t count = 0;
  const auto& adj = cg.adjacencies;
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = i + 1; j < adj.size(); ++j) {
      const auto [a, b] = adj[i];
      const auto [c, d] = adj[j];
      if (a == c || a == d || b == c || b == d) continue;
      if (segments_cross(positions[a], positions[b], positions[c], positions[d])) ++count;
    }
  return count;
}

std::vector<Point> layout_force_directed(const PortGraph& graph, const FdConfig& config) {
  const auto cg = contracted_graph(graph);
  auto [w, h] = default_area(cg.vertex_count);
  if (config.width > 0) w = config.width;
  if (config.height > 0) h = config.height;
  Rng rng(config.seed);
  std::vector<Point> best;
  std::size_t best_crossings = std::numeric_limits<std::size_t>::max();
  for (int r = 0; r < std::max(1, config.restarts); ++r) {
    auto pos = spring_embed(cg, std::max(1, config.iterations), w, h, rng);
    if (config.restarts <= 1) return pos;
    const std::size_t c = straight_line_crossings(cg, pos);
    if (c < best_crossings) {
      best_crossings = c;
      best = std::move(pos);
    }
  }
  return best;
}

Orientation orient_by_y(const PortGraph& graph, const std::vector<Point>& positions) {
  Orientation o;
  for (const auto& e : graph.edges()) {
    VertexId a = graph.port(e.a).vertex, b = graph.port(e.b).vertex;
    const double ya = positions[idx(a)].y, yb = positions[idx(b)].y;
    if (yb < ya || (yb == ya && graph.vertex(b).id < graph.vertex(a).id)) std::swap(a, b);
    o.direction.emplace_back(a, b);
  }
  return o;
}

Orientation orient_rand(const PortGraph& graph, std::uint64_t seed) {
  const auto [w, h] = default_area(graph.vertex_count());
  Rng rng(seed);
  std::vector<Point> pos(graph.vertex_count());
  for (auto& p : pos) p = {rng.uniform(0, w), rng.uniform(0, h)};
  return orient_by_y(graph, pos);
}

Orientation orient(const PortGraph& graph, OrientMethod method, const FdConfig& config) {
  switch (method) {
    case OrientMethod::BFS: return orient_bfs(graph, config.seed);
    case OrientMethod::Rand: return orient_rand(graph, config.seed);
    case OrientMethod::FD: break;
  }
  return orient_by_y(graph, layout_force_directed(graph, config));
}

bool is_acyclic(std::size_t vertex_count, const Orientation& orientation) {
  std::vector<std::vector<std::size_t>> out(vertex_count);
  std::vector<std::size_t> indeg(vertex_count, 0);
  for (const auto& [t, h] : orientation.direction) {
    if (t == h) return false;
    out[idx(t)].push_back(idx(h));
    ++indeg[idx(h)];
  }
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t seen = 0;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    ++seen;
    for (auto w : out[u])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return seen == vertex_count;
}

}  // namespace portline

#include "portline/layering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace portline {

int Layering::layer_count() const {
  if (layer_of.empty()) return 0;
  return *std::max_element(layer_of.begin(), layer_of.end()) + 1;
}

std::vector<WeightedArc> oriented_arcs(const PortGraph& graph, const Orientation& orientation) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, long> weight;
  for (const auto& [t, h] : orientation.direction)
    if (t != h) ++weight[{static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(h)}];
  (void)graph;
  std::vector<WeightedArc> arcs;
  for (const auto& [key, w] : weight) arcs.push_back({key.first, key.second, w});
  return arcs;
}

Layering normalize_layers(const Layering& layering) {
  std::vector<int> used(layering.layer_of);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  Layering out;
  for (int l : layering.layer_of)
    out.layer_of.push_back(static_cast<int>(std::lower_bound(used.begin(), used.end(), l) - used.begin()));
  return out;
}

long total_span(const Layering& layering, const std::vector<WeightedArc>& arcs) {
  long s = 0;
  for (const auto& a : arcs) s += a.weight * (layering.layer_of[a.head] - layering.layer_of[a.tail]);
  return s;
}

bool respects_arcs(const Layering& layering, const std::vector<WeightedArc>& arcs) {
  for (const auto& a : arcs)
    if (layering.layer_of[a.head] <= layering.layer_of[a.tail]) return false;
  return true;
}

namespace {

// Network simplex over one instance; follows the tight-tree / cut-value scheme.
class NetworkSimplex {
 public:
  NetworkSimplex(std::size_t n, const std::vector<WeightedArc>& arcs) : n_(n), arcs_(arcs), incident_(n) {
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      incident_[arcs_[e].tail].push_back(e);
      incident_[arcs_[e].head].push_back(e);
    }
  }

  LayeringResult run() {
    LayeringResult res;
    rank_.assign(n_, 0);
    init_rank();
    feasible_tree();
    const std::size_t cap = std::max<std::size_t>(1, 4 * n_ * std::max<std::size_t>(1, arcs_.size()));
    while (true) {
      compute_tree_order();
      const auto leave = leaving_edge();
      if (!leave) break;
      if (res.iterations >= cap) {
        res.cap_hit = true;
        break;
      }
      const auto enter = entering_edge(*leave);
      if (!enter) break;  // cannot happen on a connected instance
      in_tree_[*leave] = 0;
      in_tree_[*enter] = 1;
      rerank_from_tree();
      ++res.iterations;
    }
    res.layering = normalize_layers(Layering{rank_});
    return res;
  }

 private:
  long slack(std::size_t e) const { return rank_[arcs_[e].head] - rank_[arcs_[e].tail] - 1; }

  void init_rank() {
    std::vector<int> indeg(n_, 0);
    for (const auto& a : arcs_) ++indeg[a.head];
    std::queue<std::uint32_t> q;
    for (std::uint32_t v = 0; v < n_; ++v)
      if (indeg[v] == 0) q.push(v);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto e : incident_[u]) {
        if (arcs_[e].tail != u) continue;
        const auto h = arcs_[e].head;
        rank_[h] = std::max(rank_[h], rank_[u] + 1);
        if (--indeg[h] == 0) q.push(h);
      }
    }
  }

  void feasible_tree() {
    in_tree_.assign(arcs_.size(), 0);
    std::vector<char> in_node(n_, 0);
    std::size_t tree_size = 0;
    std::vector<std::uint32_t> members;
    for (std::uint32_t root = 0; root < n_; ++root) {
      if (in_node[root]) continue;
      // New component.
      members.clear();
      in_node[root] = 1;
      members.push_back(root);
      ++tree_size;
      while (true) {
        // Grow along tight edges.
        for (std::size_t i = 0; i < members.size(); ++i) {
          const auto u = members[i];
          for (auto e : incident_[u]) {
            const auto w = arcs_[e].tail == u ? arcs_[e].head : arcs_[e].tail;
            if (in_node[w] || slack(e) != 0) continue;
            in_node[w] = 1;
            in_tree_[e] = 1;
            members.push_back(w);
            ++tree_size;
          }
        }
        long best = std::numeric_limits<long>::max();
        std::size_t best_e = arcs_.size();
        for (auto u : members)
          for (auto e : incident_[u]) {
            const auto w = arcs_[e].tail == u ? arcs_[e].head : arcs_[e].tail;
            if (!in_node[w] && slack(e) < best) {
              best = slack(e);
              best_e = e;
            }
          }
        if (best_e == arcs_.size()) break;
        const long delta = in_node[arcs_[best_e].tail] ? best : -best;
        for (auto u : members) rank_[u] += static_cast<int>(delta);
      }
    }
    (void)tree_size;
  }

  void compute_tree_order() {
    lim_.assign(n_, 0);
    low_.assign(n_, 0);
    parent_edge_.assign(n_, arcs_.size());
    std::vector<char> seen(n_, 0);
    int counter = 1;
    for (std::uint32_t root = 0; root < n_; ++root) {
      if (seen[root]) continue;
      // Iterative post-order DFS over tree edges.
      std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
      seen[root] = 1;
      low_[root] = counter;
      while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next < incident_[u].size()) {
          const auto e = incident_[u][next++];
          if (!in_tree_[e]) continue;
          const auto w = arcs_[e].tail == u ? arcs_[e].head : arcs_[e].tail;
          if (seen[w]) continue;
          seen[w] = 1;
          parent_edge_[w] = e;
          low_[w] = counter;
          stack.push_back({w, 0});
        } else {
          lim_[u] = counter++;
          stack.pop_back();
        }
      }
    }
  }

  // v lies in the subtree rooted at c.
  bool in_subtree(std::uint32_t v, std::uint32_t c) const { return low_[c] <= lim_[v] && lim_[v] <= lim_[c]; }

  std::uint32_t child_of(std::size_t e) const {
    const auto t = arcs_[e].tail, h = arcs_[e].head;
    return parent_edge_[t] == e ? t : h;
  }

  long cut_value(std::size_t e) const {
    const auto c = child_of(e);
    const bool tail_side_is_subtree = (c == arcs_[e].tail);
    long cv = 0;
    for (std::size_t f = 0; f < arcs_.size(); ++f) {
      const bool t_in = in_subtree(arcs_[f].tail, c);
      const bool h_in = in_subtree(arcs_[f].head, c);
      if (t_in == h_in) continue;
      // Orientation relative to the split: tail component -> head component counts positive.
      const bool tail_comp_to_head_comp = tail_side_is_subtree ? t_in : h_in;
      cv += tail_comp_to_head_comp ? arcs_[f].weight : -arcs_[f].weight;
    }
    return cv;
  }

  std::optional<std::size_t> leaving_edge() const {
    for (std::size_t e = 0; e < arcs_.size(); ++e)
      if (in_tree_[e] && cut_value(e) < 0) return e;
    return std::nullopt;
  }

  std::optional<std::size_t> entering_edge(std::size_t leave) const {
    const auto c = child_of(leave);
    const bool tail_side_is_subtree = (c == arcs_[leave].tail);
    std::optional<std::size_t> best;
    for (std::size_t f = 0; f < arcs_.size(); ++f) {
      if (in_tree_[f]) continue;
      const bool t_in = in_subtree(arcs_[f].tail, c);
      const bool h_in = in_subtree(arcs_[f].head, c);
      if (t_in == h_in) continue;
      // Needs to go from the head component to the tail component.
      const bool head_comp_to_tail_comp = tail_side_is_subtree ? h_in : t_in;
      if (!head_comp_to_tail_comp) continue;
      if (!best || slack(f) < slack(*best)) best = f;
    }
    return best;
  }

  void rerank_from_tree() {
    std::vector<char> seen(n_, 0);
    for (std::uint32_t root = 0; root < n_; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      std::vector<std::uint32_t> stack{root};
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto e : incident_[u]) {
          if (!in_tree_[e]) continue;
          const auto w = arcs_[e].tail == u ? arcs_[e].head : arcs_[e].tail;
          if (seen[w]) continue;
          seen[w] = 1;
          rank_[w] = arcs_[e].tail == u ? rank_[u] + 1 : rank_[u] - 1;
          stack.push_back(w);
        }
      }
    }
  }

  std::size_t n_;
  const std::vector<WeightedArc>& arcs_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<int> rank_;
  std::vector<char> in_tree_;
  std::vector<int> lim_, low_;
  std::vector<std::size_t> parent_edge_;
};

}  // namespace

LayeringResult assign_layers(std::size_t vertex_count, const std::vector<WeightedArc>& arcs) {
  return NetworkSimplex(vertex_count, arcs).run();
}

LayeringResult assign_layers(const PortGraph& graph, const Orientation& orientation) {
  return assign_layers(graph.vertex_count(), oriented_arcs(graph, orientation));
}

}  // namespace portline

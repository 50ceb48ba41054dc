#include "portline/coords.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace portline {

PortStructure to_port_structure(const LayeredStructure& s, const PortGraph& graph, double delta) {
  PortStructure ps;
  const std::size_t K = s.layer_count();
  ps.rows.resize(2 * K);
  ps.item_of_slot.assign(s.slots.size(), std::nullopt);
  ps.vertex_count = graph.vertex_count();
  auto add = [&](std::uint32_t row, ItemKind kind, std::optional<std::uint32_t> slot,
                 std::optional<VertexId> vertex) {
    const auto id = static_cast<std::uint32_t>(ps.items.size());
    ps.items.push_back({kind, row, slot, vertex});
    ps.rows[row].push_back(id);
    if (slot) ps.item_of_slot[*slot] = id;
    return id;
  };

  for (std::size_t k = 0; k < K; ++k) {
    const auto lo = static_cast<std::uint32_t>(2 * k), hi = lo + 1;
    auto separator = [&] {
      const auto b = add(lo, ItemKind::Separator, std::nullopt, std::nullopt);
      const auto t = add(hi, ItemKind::Separator, std::nullopt, std::nullopt);
      ps.forced.emplace_back(b, t);
    };
    const auto& nodes = s.rows[s.real_row[k]].nodes;
    bool prev_real = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = s.nodes[nodes[i]];
      const bool real = n.kind == NodeKind::Real;
      if (real || prev_real) separator();
      if (real) {
        const VertexId v = *n.vertex;
        const std::size_t nt = n.top.size(), nb = n.bottom.size();
        const auto need = static_cast<long>(std::ceil(graph.vertex(v).min_width / delta - 1e-9));
        const long pads = std::max(0L, need - static_cast<long>(std::max(nt, nb)));
        const bool pad_top = nt >= nb;
        auto side_row = [&](std::uint32_t row, const std::vector<std::uint32_t>& slots, bool padded) {
          const long left = padded ? pads / 2 : 0, right = padded ? pads - pads / 2 : 0;
          for (long j = 0; j < left; ++j) add(row, ItemKind::Padding, std::nullopt, v);
          for (auto sl : slots) add(row, ItemKind::Port, sl, v);
          for (long j = 0; j < right; ++j) add(row, ItemKind::Padding, std::nullopt, v);
        };
        side_row(lo, n.bottom, !pad_top);
        side_row(hi, n.top, pad_top);
        for (const auto& [t, b] : n.pairings) ps.forced.emplace_back(*ps.item_of_slot[b], *ps.item_of_slot[t]);
      } else if (n.kind == NodeKind::LongDummy) {
        const auto b = add(lo, ItemKind::LongDummy, n.bottom.front(), std::nullopt);
        const auto t = add(hi, ItemKind::LongDummy, n.top.front(), std::nullopt);
        ps.forced.emplace_back(b, t);
      }
      prev_real = real;
    }
    if (prev_real) separator();
  }

  for (const auto& p : route_pieces(s)) {
    if (p.kind != PieceKind::Arc) continue;
    auto lower = p.a, upper = p.b;
    if (s.slots[lower].side != Side::Top) std::swap(lower, upper);
    const auto li = *ps.item_of_slot[lower], ui = *ps.item_of_slot[upper];
    ps.arcs.emplace_back(li, ui);
    ps.inner.push_back(ps.items[li].kind == ItemKind::LongDummy && ps.items[ui].kind == ItemKind::LongDummy);
  }
  return ps;
}

double total_vertex_span(const PortStructure& ps, const std::vector<double>& x) {
  std::vector<double> lo(ps.vertex_count, std::numeric_limits<double>::infinity());
  std::vector<double> hi(ps.vertex_count, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < ps.items.size(); ++i) {
    if (!ps.items[i].vertex) continue;
    const auto v = idx(*ps.items[i].vertex);
    lo[v] = std::min(lo[v], x[i]);
    hi[v] = std::max(hi[v], x[i]);
  }
  double total = 0;
  for (std::size_t v = 0; v < ps.vertex_count; ++v)
    if (hi[v] >= lo[v]) total += hi[v] - lo[v];
  return total;
}

namespace {

constexpr double kEps = 1e-6;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Link {
  std::uint32_t lower, upper;
  bool forced;
  bool inner;
};

class Aligner {
 public:
  Aligner(const PortStructure& ps, const CoordsConfig& cfg) : ps_(ps), cfg_(cfg) {
    const auto n = ps.items.size();
    up_.assign(n, kNone);
    down_.assign(n, kNone);
    index_.assign(n, 0);
    for (const auto& row : ps.rows)
      for (std::size_t i = 0; i < row.size(); ++i) index_[row[i]] = static_cast<std::uint32_t>(i);
    for (const auto& [l, u] : ps.forced) add_link(l, u, true, false);
    for (std::size_t k = 0; k < ps.arcs.size(); ++k) add_link(ps.arcs[k].first, ps.arcs[k].second, false, ps.inner[k]);
    mark_conflicts();
  }

  std::vector<double> run_pass(bool downward, bool rightward, std::size_t& broken) {
    right_ = rightward;
    auto aligned = align(downward);
    auto x = compact(aligned);
    if (cfg_.block_breaking) break_blocks(aligned, x, broken);
    if (right_)
      for (auto& v : x) v = -v;
    return x;
  }

 private:
  void add_link(std::uint32_t l, std::uint32_t u, bool forced, bool inner) {
    const auto id = static_cast<std::uint32_t>(links_.size());
    links_.push_back({l, u, forced, inner});
    up_[l] = id;
    down_[u] = id;
  }

  // Non-inner arcs crossing an inner arc are never aligned.
  void mark_conflicts() {
    marked_.assign(links_.size(), 0);
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_row;
    for (std::uint32_t k = 0; k < links_.size(); ++k)
      if (!links_[k].forced) by_row[ps_.items[links_[k].lower].row].push_back(k);
    for (const auto& [row, ks] : by_row) {
      std::vector<std::uint32_t> inner;
      for (auto k : ks)
        if (links_[k].inner) inner.push_back(k);
      if (inner.empty()) continue;
      for (auto k : ks) {
        if (links_[k].inner) continue;
        const long a = index_[links_[k].lower], b = index_[links_[k].upper];
        for (auto q : inner) {
          const long c = index_[links_[q].lower], d = index_[links_[q].upper];
          if ((a - c) * (b - d) < 0) {
            marked_[k] = 1;
            break;
          }
        }
      }
    }
  }

  std::uint32_t pos(std::uint32_t item) const {
    const auto& row = ps_.rows[ps_.items[item].row];
    return right_ ? static_cast<std::uint32_t>(row.size() - 1 - index_[item]) : index_[item];
  }

  std::vector<char> align(bool downward) {
    std::vector<char> aligned(links_.size(), 0);
    const auto R = ps_.rows.size();
    for (std::size_t step = 1; step < R; ++step) {
      const std::size_t r = downward ? R - 1 - step : step;
      const auto& row = ps_.rows[r];
      long last = -1;
      for (std::size_t j = 0; j < row.size(); ++j) {
        const auto v = row[right_ ? row.size() - 1 - j : j];
        const auto k = downward ? up_[v] : down_[v];
        if (k == kNone) continue;
        const auto u = downward ? links_[k].upper : links_[k].lower;
        const long pu = pos(u);
        if (links_[k].forced || (!marked_[k] && last < pu)) {
          aligned[k] = 1;
          last = pu;
        }
      }
    }
    return aligned;
  }

  std::vector<std::uint32_t> blocks(const std::vector<char>& aligned, std::uint32_t& count) const {
    std::vector<std::uint32_t> block(ps_.items.size(), kNone);
    count = 0;
    for (std::uint32_t i = 0; i < ps_.items.size(); ++i) {
      if (block[i] != kNone) continue;
      // Walk to the bottom end of the block, then label upward.
      auto b = i;
      while (down_[b] != kNone && aligned[down_[b]]) b = links_[down_[b]].lower;
      for (auto c = b;; c = links_[up_[c]].upper) {
        block[c] = count;
        if (up_[c] == kNone || !aligned[up_[c]]) break;
      }
      ++count;
    }
    return block;
  }

  std::vector<double> compact(const std::vector<char>& aligned) const {
    std::uint32_t nb = 0;
    const auto block = blocks(aligned, nb);
    std::vector<std::vector<std::uint32_t>> succ(nb);
    std::vector<std::uint32_t> indeg(nb, 0);
    for (const auto& row : ps_.rows) {
      for (std::size_t j = 1; j < row.size(); ++j) {
        auto a = row[j - 1], b = row[j];
        if (right_) std::swap(a, b);
        succ[block[a]].push_back(block[b]);
        ++indeg[block[b]];
      }
    }
    std::vector<double> bx(nb, 0);
    std::vector<std::uint32_t> crit(nb, kNone), topo;
    topo.reserve(nb);
    for (std::uint32_t b = 0; b < nb; ++b)
      if (indeg[b] == 0) topo.push_back(b);
    for (std::size_t i = 0; i < topo.size(); ++i) {
      const auto a = topo[i];
      for (auto b : succ[a]) {
        if (bx[a] + cfg_.delta > bx[b] || crit[b] == kNone) {
          if (bx[a] + cfg_.delta > bx[b]) bx[b] = bx[a] + cfg_.delta;
          if (bx[a] + cfg_.delta >= bx[b]) crit[b] = a;
        }
        if (--indeg[b] == 0) topo.push_back(b);
      }
    }
    if (topo.size() != nb) throw std::logic_error("block graph has a cycle");

    // Classes hang off their critical predecessors; each is pulled toward the
    // blocks on its right as far as they allow.
    std::vector<std::uint32_t> cls(nb);
    for (auto b : topo) cls[b] = crit[b] == kNone ? b : cls[crit[b]];
    std::vector<std::vector<std::uint32_t>> members(nb);
    for (auto b : topo) members[cls[b]].push_back(b);
    std::vector<std::uint32_t> roots;
    std::vector<double> max_x(nb, -1);
    for (std::uint32_t b = 0; b < nb; ++b) {
      if (cls[b] == b) roots.push_back(b);
      max_x[cls[b]] = std::max(max_x[cls[b]], bx[b]);
    }
    std::stable_sort(roots.begin(), roots.end(), [&](auto a, auto b) { return max_x[a] > max_x[b]; });
    for (auto c : roots) {
      double slack = std::numeric_limits<double>::infinity();
      for (auto a : members[c])
        for (auto b : succ[a])
          if (cls[b] != c) slack = std::min(slack, bx[b] - cfg_.delta - bx[a]);
      if (std::isfinite(slack) && slack > kEps)
        for (auto a : members[c]) bx[a] += slack;
    }
    std::vector<double> x(ps_.items.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = bx[block[i]];
    return x;
  }

  void break_blocks(std::vector<char>& aligned, std::vector<double>& x, std::size_t& broken) const {
    const double T = cfg_.threshold();
    std::set<std::uint32_t> given_up;  // left item of a hopeless gap
    double total = total_vertex_span(ps_, x);
    for (int iter = 0; iter < cfg_.break_iterations; ++iter) {
      std::uint32_t ga = kNone, gb = kNone;
      double worst = T + kEps;
      for (const auto& row : ps_.rows) {
        for (std::size_t j = 1; j < row.size(); ++j) {
          const auto a = row[j - 1], b = row[j];
          const auto& ia = ps_.items[a];
          const auto& ib = ps_.items[b];
          if (!ia.vertex || !ib.vertex || *ia.vertex != *ib.vertex || given_up.count(a)) continue;
          const double gap = std::abs(x[b] - x[a]);
          if (gap > worst) {
            worst = gap;
            ga = a;
            gb = b;
          }
        }
      }
      if (ga == kNone) return;
      std::uint32_t nb = 0;
      const auto block = blocks(aligned, nb);
      std::optional<std::uint32_t> best;
      double best_gap = worst, best_total = total;
      std::uint32_t best_row = kNone;
      std::vector<double> best_x;
      for (std::uint32_t k = 0; k < links_.size(); ++k) {
        if (!aligned[k] || links_[k].forced) continue;
        const auto bl = block[links_[k].lower];
        if (bl != block[ga] && bl != block[gb]) continue;
        aligned[k] = 0;
        auto cand = compact(aligned);
        aligned[k] = 1;
        const double gap = std::abs(cand[gb] - cand[ga]);
        const double tot = total_vertex_span(ps_, cand);
        const auto row = ps_.items[links_[k].lower].row;
        if (tot > total + kEps) continue;
        if (gap < best_gap - kEps || (best && std::abs(gap - best_gap) <= kEps && row < best_row)) {
          best = k;
          best_gap = gap;
          best_total = tot;
          best_row = row;
          best_x = std::move(cand);
        }
      }
      if (!best) {
        given_up.insert(ga);
        continue;
      }
      aligned[*best] = 0;
      x = std::move(best_x);
      total = best_total;
      ++broken;
    }
  }

  const PortStructure& ps_;
  const CoordsConfig& cfg_;
  std::vector<Link> links_;
  std::vector<std::uint32_t> up_, down_, index_;
  std::vector<char> marked_;
  bool right_ = false;
};

}  // namespace

XAssignment assign_x(const PortStructure& ps, const CoordsConfig& config) {
  XAssignment xa;
  if (ps.items.empty()) return xa;
  Aligner al(ps, config);
  std::vector<std::vector<double>> cand;
  std::vector<bool> rightward;
  for (bool down : {true, false})
    for (bool right : {false, true}) {
      cand.push_back(al.run_pass(down, right, xa.blocks_broken));
      rightward.push_back(right);
    }
  std::vector<double> lo(4), hi(4);
  std::size_t narrow = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    lo[c] = *std::min_element(cand[c].begin(), cand[c].end());
    hi[c] = *std::max_element(cand[c].begin(), cand[c].end());
    if (hi[c] - lo[c] < hi[narrow] - lo[narrow]) narrow = c;
  }
  xa.x.assign(ps.items.size(), 0);
  for (std::size_t c = 0; c < 4; ++c) {
    const double shift = rightward[c] ? hi[narrow] - hi[c] : lo[narrow] - lo[c];
    for (std::size_t i = 0; i < ps.items.size(); ++i) xa.x[i] += (cand[c][i] + shift) / 4.0;
  }
  return xa;
}

void close_residual_gaps(XAssignment& xa, const PortStructure& ps, const CoordsConfig& config) {
  const double T = config.threshold(), delta = config.delta;
  auto& x = xa.x;
  std::vector<std::uint32_t> partner(ps.items.size(), kNone);
  for (const auto& [l, u] : ps.forced) {
    partner[l] = u;
    partner[u] = l;
  }
  // Items of each vertex per row, in row order; row_index finds left neighbours.
  std::vector<std::uint32_t> row_index(ps.items.size(), 0);
  for (const auto& row : ps.rows)
    for (std::size_t j = 0; j < row.size(); ++j) row_index[row[j]] = static_cast<std::uint32_t>(j);
  std::vector<std::array<std::vector<std::uint32_t>, 2>> own(ps.vertex_count);
  for (const auto& row : ps.rows)
    for (auto it : row)
      if (ps.items[it].vertex) own[idx(*ps.items[it].vertex)][ps.items[it].row % 2].push_back(it);

  for (int round = 0; round < 4; ++round) {
    bool changed = false;
    for (auto& sides : own) {
      for (int side = 0; side < 2; ++side) {
        const auto& R = sides[side];
        const auto& Ro = sides[1 - side];
        for (std::size_t i = 1; i < R.size(); ++i) {
          const double gap = x[R[i]] - x[R[i - 1]];
          if (gap <= T + kEps) continue;
          std::optional<std::size_t> start;
          for (std::size_t j = i; j < R.size() && !start; ++j)
            if (partner[R[j]] != kNone)
              for (std::size_t q = 0; q < Ro.size(); ++q)
                if (Ro[q] == partner[R[j]]) start = q;
          double d = gap - T;
          if (start) {
            const auto first = Ro[*start];
            const auto& orow = ps.rows[ps.items[first].row];
            const auto ri = row_index[first];
            if (ri > 0) d = std::min(d, x[first] - x[orow[ri - 1]] - delta);
          }
          if (d <= kEps) continue;
          for (std::size_t j = i; j < R.size(); ++j) x[R[j]] -= d;
          if (start)
            for (std::size_t q = *start; q < Ro.size(); ++q) x[Ro[q]] -= d;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
}

Geometry from_port_structure(const PortStructure& ps, const XAssignment& xa, const LayeredStructure& s,
                             const PortGraph& graph, double delta) {
  Geometry g;
  g.slot_x.assign(s.slots.size(), std::numeric_limits<double>::quiet_NaN());
  g.vertex_x.assign(graph.vertex_count(), {std::numeric_limits<double>::infinity(),
                                           -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < ps.items.size(); ++i) {
    const auto& it = ps.items[i];
    if (it.slot) g.slot_x[*it.slot] = xa.x[i];
    if (it.vertex) {
      auto& [lo, hi] = g.vertex_x[idx(*it.vertex)];
      lo = std::min(lo, xa.x[i] - delta / 2);
      hi = std::max(hi, xa.x[i] + delta / 2);
    }
  }
  g.layer_height.assign(s.layer_count(), 0);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto node = s.node_of_vertex[v];
    const auto layer = static_cast<std::size_t>(s.rows[s.nodes[node].row].layer);
    g.layer_height[layer] = std::max(g.layer_height[layer], graph.vertex(make_id<VertexId>(v)).min_height);
  }
  return g;
}

Geometry assign_coordinates(const LayeredStructure& s, const PortGraph& graph, const CoordsConfig& config,
                            std::size_t* blocks_broken) {
  const auto ps = to_port_structure(s, graph, config.delta);
  auto xa = assign_x(ps, config);
  if (config.close_gaps) close_residual_gaps(xa, ps, config);
  if (blocks_broken) *blocks_broken = xa.blocks_broken;
  return from_port_structure(ps, xa, s, graph, config.delta);
}

}  // namespace portline

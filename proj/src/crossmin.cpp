#include "portline/crossmin.hpp"

#include <algorithm>
#include <numeric>

namespace portline {

std::string_view to_string(Granularity g) noexcept {
  switch (g) {
    case Granularity::Vertices: return "vertices";
    case Granularity::Ports: return "ports";
    case Granularity::Mixed: return "mixed";
  }
  return "ports";
}

std::string_view to_string(SinkStrategy s) noexcept {
  switch (s) {
    case SinkStrategy::PseudoBC: return "pseudo";
    case SinkStrategy::OppositeBC: return "opposite";
    case SinkStrategy::RelPos: return "relpos";
  }
  return "relpos";
}

std::optional<Granularity> granularity_from_string(std::string_view s) noexcept {
  if (s == "vertices") return Granularity::Vertices;
  if (s == "ports") return Granularity::Ports;
  if (s == "mixed") return Granularity::Mixed;
  return std::nullopt;
}

std::optional<SinkStrategy> sink_strategy_from_string(std::string_view s) noexcept {
  if (s == "pseudo") return SinkStrategy::PseudoBC;
  if (s == "opposite") return SinkStrategy::OppositeBC;
  if (s == "relpos") return SinkStrategy::RelPos;
  return std::nullopt;
}

std::optional<double> barycenter(const std::vector<double>& neighbor_positions) {
  if (neighbor_positions.empty()) return std::nullopt;
  return std::accumulate(neighbor_positions.begin(), neighbor_positions.end(), 0.0) /
         static_cast<double>(neighbor_positions.size());
}

double pseudo_barycenter(double position, std::size_t own_size, std::size_t reference_size) {
  return position * static_cast<double>(reference_size) / static_cast<double>(std::max<std::size_t>(own_size, 1));
}

double opposite_barycenter(double opposite_bc, std::size_t reference_size, std::size_t opposite_size) {
  return opposite_bc * static_cast<double>(reference_size) /
         static_cast<double>(std::max<std::size_t>(opposite_size, 1));
}

namespace {

// Index of every slot within its row side, left to right.
std::vector<int> slot_positions(const LayeredStructure& s) {
  std::vector<int> pos(s.slots.size(), 0);
  for (const auto& row : s.rows) {
    int top = 0, bottom = 0;
    for (auto n : row.nodes) {
      for (auto sl : s.nodes[n].top) pos[sl] = top++;
      for (auto sl : s.nodes[n].bottom) pos[sl] = bottom++;
    }
  }
  return pos;
}

std::size_t inversions(std::vector<std::pair<int, int>> pairs, int upper_size) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> bit(static_cast<std::size_t>(upper_size) + 1, 0);
  auto add = [&](int i) {
    for (auto k = static_cast<std::size_t>(i) + 1; k < bit.size(); k += k & (~k + 1)) ++bit[k];
  };
  auto prefix = [&](int i) {  // entries with value <= i
    std::size_t c = 0;
    for (auto k = static_cast<std::size_t>(i) + 1; k > 0; k -= k & (~k + 1)) c += bit[k];
    return c;
  };
  std::size_t total = 0, inserted = 0;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
    for (std::size_t k = i; k < j; ++k) total += inserted - prefix(pairs[k].second);
    for (std::size_t k = i; k < j; ++k) add(pairs[k].second);
    inserted += j - i;
    i = j;
  }
  return total;
}

std::size_t gap_crossings(const LayeredStructure& s, std::size_t gap, const std::vector<int>& pos) {
  std::vector<std::pair<int, int>> pairs;
  int upper = 0;
  for (auto k : s.gap_segments[gap]) {
    const auto& seg = s.segments[k];
    pairs.emplace_back(pos[seg.lower], pos[seg.upper]);
    upper = std::max(upper, pos[seg.upper] + 1);
  }
  return inversions(std::move(pairs), upper);
}

}  // namespace

std::size_t count_gap_crossings(const LayeredStructure& s, std::size_t gap) {
  return gap_crossings(s, gap, slot_positions(s));
}

std::size_t count_crossings(const LayeredStructure& s) {
  const auto pos = slot_positions(s);
  std::size_t total = 0;
  for (std::size_t g = 0; g < s.gap_segments.size(); ++g) total += gap_crossings(s, g, pos);
  return total;
}

// Makes the order of paired ports on one side follow the other. Returns false
// if neither direction works.
bool align_pairings(LayeredStructure& s, std::uint32_t node, bool top_primary) {
  auto& n = s.nodes[node];
  if (n.pairings.empty()) return true;
  auto attempt = [&](bool from_top) {
    OrderTree& primary = from_top ? n.top_tree : n.bottom_tree;
    OrderTree& secondary = from_top ? n.bottom_tree : n.top_tree;
    std::unordered_map<PortId, PortId> partner;
    for (const auto& [t, b] : n.pairings) {
      const PortId pt = *s.slots[t].port, pb = *s.slots[b].port;
      if (from_top)
        partner[pt] = pb;
      else
        partner[pb] = pt;
    }
    std::unordered_map<PortId, int> rank;
    int r = 0;
    for (auto p : primary.leaves())
      if (auto it = partner.find(p); it != partner.end()) rank[it->second] = r++;
    std::unordered_map<PortId, double> key;
    const auto leaves = secondary.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) key[leaves[i]] = static_cast<double>(i);
    return realize_ranks(secondary, rank, key);
  };
  if (attempt(top_primary) || attempt(!top_primary)) {
    s.flatten(node);
    return true;
  }
  return false;
}

bool orders_consistent(const LayeredStructure& s) {
  std::vector<std::size_t> pos_in_side(s.slots.size(), 0);
  for (const auto& n : s.nodes) {
    for (std::size_t i = 0; i < n.top.size(); ++i) pos_in_side[n.top[i]] = i;
    for (std::size_t i = 0; i < n.bottom.size(); ++i) pos_in_side[n.bottom[i]] = i;
  }
  for (const auto& n : s.nodes) {
    if (n.kind != NodeKind::Real) continue;
    auto ports_of = [&](const std::vector<std::uint32_t>& slots) {
      std::vector<PortId> out;
      for (auto sl : slots) out.push_back(*s.slots[sl].port);
      return out;
    };
    if (!sequence_respects_tree(n.top_tree, ports_of(n.top))) return false;
    if (!sequence_respects_tree(n.bottom_tree, ports_of(n.bottom))) return false;
    auto pairs = n.pairings;
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return pos_in_side[a.first] < pos_in_side[b.first];
    });
    for (std::size_t i = 1; i < pairs.size(); ++i)
      if (pos_in_side[pairs[i - 1].second] > pos_in_side[pairs[i].second]) return false;
  }
  return true;
}

namespace {

struct Snapshot {
  std::vector<Row> rows;
  std::vector<LNode> nodes;
};

class Sweeper {
 public:
  Sweeper(LayeredStructure& s, const SweepConfig& c) : s_(s), cfg_(c) {
    nbrs_.resize(s.slots.size());
    for (const auto& seg : s.segments) {
      nbrs_[seg.lower].push_back(seg.upper);
      nbrs_[seg.upper].push_back(seg.lower);
    }
    slot_pos_.assign(s.slots.size(), 0);
    node_pos_.assign(s.nodes.size(), 0);
    for (std::uint32_t r = 0; r < s.rows.size(); ++r) refresh(r);
  }

  void refresh(std::uint32_t r) {
    int top = 0, bottom = 0, i = 0;
    for (auto n : s_.rows[r].nodes) {
      node_pos_[n] = i++;
      for (auto sl : s_.nodes[n].top) slot_pos_[sl] = top++;
      for (auto sl : s_.nodes[n].bottom) slot_pos_[sl] = bottom++;
    }
  }

  void random_start(Rng& rng) {
    for (std::uint32_t r = 0; r < s_.rows.size(); ++r) rng.shuffle(s_.rows[r].nodes);
    for (std::uint32_t v = 0; v < s_.nodes.size(); ++v) {
      auto& n = s_.nodes[v];
      if (n.kind != NodeKind::Real) continue;
      const OrderTree top = n.top_tree, bottom = n.bottom_tree;
      shuffle_tree(n.top_tree, rng);
      shuffle_tree(n.bottom_tree, rng);
      s_.flatten(v);
      if (!align_pairings(s_, v, true)) {
        n.top_tree = top;
        n.bottom_tree = bottom;
        s_.flatten(v);
      }
    }
    for (std::uint32_t r = 0; r < s_.rows.size(); ++r) refresh(r);
  }

  // One pass: upward orders each row against the row below.
  void pass(bool upward) {
    const auto R = static_cast<std::uint32_t>(s_.rows.size());
    if (R < 2) return;
    if (upward)
      for (std::uint32_t r = 1; r < R; ++r) order_row(r, r - 1, r + 1 < R ? std::optional(r + 1) : std::nullopt);
    else
      for (std::uint32_t r = R - 1; r-- > 0;) order_row(r, r + 1, r > 0 ? std::optional(r - 1) : std::nullopt);
  }

 private:
  struct Item {
    double value;
    std::uint32_t node;
    std::optional<std::uint32_t> slot;
  };

  bool slot_units() const { return cfg_.granularity != Granularity::Vertices; }

  std::size_t side_size(std::uint32_t r, Side side) const {
    std::size_t c = 0;
    for (auto n : s_.rows[r].nodes) c += s_.side_slots(n, side).size();
    return c;
  }
  std::size_t row_size(std::uint32_t r, Side side) const {
    return slot_units() ? side_size(r, side) : s_.rows[r].nodes.size();
  }

  double position_of(std::uint32_t slot) const {
    return slot_units() ? slot_pos_[slot] : node_pos_[s_.slots[slot].node];
  }

  void neighbor_values(std::uint32_t node, Side side, std::vector<double>& out) const {
    for (auto sl : s_.side_slots(node, side))
      for (auto nb : nbrs_[sl]) out.push_back(position_of(nb));
  }

  bool decomposed(std::uint32_t node) const {
    if (cfg_.granularity == Granularity::Ports) return true;
    if (cfg_.granularity == Granularity::Mixed) return !s_.nodes[node].pairings.empty();
    return false;
  }

  void order_row(std::uint32_t r, std::uint32_t ref, std::optional<std::uint32_t> opp) {
    const Side facing = ref < r ? Side::Bottom : Side::Top;
    const Side away = facing == Side::Top ? Side::Bottom : Side::Top;
    auto& nodes = s_.rows[r].nodes;
    const std::size_t own_size = row_size(r, facing);
    const std::size_t ref_size = row_size(ref, away);

    std::vector<Item> items;
    std::vector<char> sink(nodes.size(), 0);
    std::size_t prefix = 0;  // facing slots left of the current node
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto v = nodes[i];
      std::vector<double> vals;
      neighbor_values(v, facing, vals);
      const double own_pos = slot_units() ? static_cast<double>(prefix) : static_cast<double>(i);
      prefix += s_.side_slots(v, facing).size();
      if (!vals.empty()) {
        if (decomposed(v)) {
          for (auto sl : s_.side_slots(v, facing)) {
            std::vector<double> sv;
            for (auto nb : nbrs_[sl]) sv.push_back(position_of(nb));
            if (auto b = barycenter(sv)) items.push_back({*b, v, sl});
          }
        } else {
          items.push_back({*barycenter(vals), v, std::nullopt});
        }
        continue;
      }
      double value = pseudo_barycenter(own_pos, own_size, ref_size);
      switch (cfg_.sink) {
        case SinkStrategy::RelPos:
          sink[i] = 1;
          continue;
        case SinkStrategy::OppositeBC:
          if (opp) {
            std::vector<double> ov;
            neighbor_values(v, away, ov);
            if (auto b = barycenter(ov)) value = opposite_barycenter(*b, ref_size, row_size(*opp, facing));
          }
          break;
        case SinkStrategy::PseudoBC:
          break;
      }
      items.push_back({value, v, std::nullopt});
    }

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return items[a].value < items[b].value; });
    std::unordered_map<std::uint32_t, double> rank_sum, rank_count;
    std::unordered_map<std::uint32_t, double> slot_rank;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& it = items[order[k]];
      rank_sum[it.node] += static_cast<double>(k);
      rank_count[it.node] += 1;
      if (it.slot) slot_rank[*it.slot] = static_cast<double>(k);
    }
    std::vector<std::uint32_t> movable;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!sink[i]) movable.push_back(nodes[i]);
    std::stable_sort(movable.begin(), movable.end(), [&](std::uint32_t a, std::uint32_t b) {
      return rank_sum[a] / rank_count[a] < rank_sum[b] / rank_count[b];
    });
    std::size_t m = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!sink[i]) nodes[i] = movable[m++];

    refresh(r);
    for (auto v : nodes) order_ports(v, facing, slot_rank, rank_count.count(v) ? rank_sum[v] / rank_count[v] : 0.0);
    refresh(r);
  }

  void order_ports(std::uint32_t v, Side facing, const std::unordered_map<std::uint32_t, double>& slot_rank,
                   double node_key) {
    auto& n = s_.nodes[v];
    if (n.kind != NodeKind::Real) return;
    OrderTree& tree = facing == Side::Top ? n.top_tree : n.bottom_tree;
    if (tree.empty()) return;
    const OrderTree top = n.top_tree, bottom = n.bottom_tree;
    std::unordered_map<PortId, double> key;
    if (decomposed(v)) {
      for (auto sl : s_.side_slots(v, facing)) {
        auto it = slot_rank.find(sl);
        key[*s_.slots[sl].port] = it == slot_rank.end() ? node_key : it->second;
      }
      sort_tree(tree, key);
    } else {
      // Ports without a neighbour stick to their left neighbour.
      const auto& slots = s_.side_slots(v, facing);
      std::optional<double> last;
      std::vector<PortId> pending;
      bool any = false;
      for (auto sl : slots) {
        std::vector<double> vals;
        for (auto nb : nbrs_[sl]) vals.push_back(slot_pos_[nb]);
        const PortId p = *s_.slots[sl].port;
        if (auto b = barycenter(vals)) {
          key[p] = *b;
          last = *b;
          any = true;
          for (auto q : pending) key[q] = *b;
          pending.clear();
        } else if (last) {
          key[p] = *last;
        } else {
          pending.push_back(p);
        }
      }
      if (!any) return;
      minimize_tree_inversions(tree, key);
    }
    s_.flatten(v);
    if (!align_pairings(s_, v, facing == Side::Top)) {
      n.top_tree = top;
      n.bottom_tree = bottom;
      s_.flatten(v);
    }
  }

  LayeredStructure& s_;
  const SweepConfig& cfg_;
  std::vector<std::vector<std::uint32_t>> nbrs_;
  std::vector<int> slot_pos_;
  std::vector<int> node_pos_;
};

}  // namespace

SweepResult sweep(LayeredStructure& s, const SweepConfig& config) {
  SweepResult res;
  res.initial_crossings = count_crossings(s);
  const Snapshot initial{s.rows, s.nodes};
  std::optional<Snapshot> best;
  std::size_t best_cr = 0;
  for (int rep = 0; rep < std::max(1, config.repetitions); ++rep) {
    s.rows = initial.rows;
    s.nodes = initial.nodes;
    Sweeper sw(s, config);
    if (config.random_start) {
      Rng rng(config.seed * 1000003ULL + static_cast<std::uint64_t>(rep));
      sw.random_start(rng);
    }
    std::size_t cur = count_crossings(s);
    if (!best || cur < best_cr) {
      best = Snapshot{s.rows, s.nodes};
      best_cr = cur;
    }
    std::size_t rep_best = cur;
    int stale = 0;
    for (int j = 0; j < std::max(1, config.max_sweeps); ++j) {
      sw.pass(j % 2 == 0);
      ++res.sweeps;
      cur = count_crossings(s);
      if (cur < best_cr) {
        best = Snapshot{s.rows, s.nodes};
        best_cr = cur;
      }
      if (cur < rep_best) {
        rep_best = cur;
        stale = 0;
      } else if (++stale >= config.patience) {
        break;
      }
      if (cur == 0) break;
    }
  }
  s.rows = std::move(best->rows);
  s.nodes = std::move(best->nodes);
  res.crossings = best_cr;
  return res;
}

}  // namespace portline

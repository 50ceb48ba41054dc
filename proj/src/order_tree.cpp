#include "portline/order_tree.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace portline {

std::uint32_t OrderTree::add(std::uint32_t parent, TNode node) {
  const auto id = static_cast<std::uint32_t>(nodes.size());
  nodes.push_back(std::move(node));
  nodes[parent].children.push_back(id);
  return id;
}

std::vector<PortId> OrderTree::leaves() const {
  std::vector<PortId> out;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t n) {
    if (nodes[n].port) out.push_back(*nodes[n].port);
    for (auto c : nodes[n].children) walk(c);
  };
  walk(0);
  return out;
}

namespace {

struct Summary {
  double key_sum = 0;
  std::size_t leaves = 0;
  double mean() const { return leaves ? key_sum / static_cast<double>(leaves) : 0.0; }
};

Summary summarize(const OrderTree& t, std::uint32_t n, const std::unordered_map<PortId, double>& key,
                  std::vector<Summary>& memo) {
  Summary s;
  if (t.nodes[n].port) {
    auto it = key.find(*t.nodes[n].port);
    s.key_sum = it == key.end() ? 0.0 : it->second;
    s.leaves = 1;
  }
  for (auto c : t.nodes[n].children) {
    const auto cs = summarize(t, c, key, memo);
    s.key_sum += cs.key_sum;
    s.leaves += cs.leaves;
  }
  memo[n] = s;
  return s;
}

void collect_keys(const OrderTree& t, std::uint32_t n, const std::unordered_map<PortId, double>& key,
                  std::vector<double>& out) {
  if (t.nodes[n].port) {
    auto it = key.find(*t.nodes[n].port);
    out.push_back(it == key.end() ? 0.0 : it->second);
  }
  for (auto c : t.nodes[n].children) collect_keys(t, c, key, out);
}

// Pairs (x in a, y in b) with x > y; both sorted ascending.
long long cross_count(const std::vector<double>& a, const std::vector<double>& b) {
  long long c = 0;
  std::size_t j = 0;
  for (double x : a) {
    while (j < b.size() && b[j] < x) ++j;
    c += static_cast<long long>(j);
  }
  return c;
}

}  // namespace

void sort_tree(OrderTree& tree, const std::unordered_map<PortId, double>& key) {
  std::vector<Summary> memo(tree.nodes.size());
  summarize(tree, 0, key, memo);
  for (auto& n : tree.nodes) {
    if (n.ordered || n.children.size() < 2) continue;
    std::stable_sort(n.children.begin(), n.children.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return memo[a].mean() < memo[b].mean(); });
  }
}

void minimize_tree_inversions(OrderTree& tree, const std::unordered_map<PortId, double>& key,
                              std::size_t exact_limit) {
  sort_tree(tree, key);
  for (auto& n : tree.nodes) {
    const std::size_t k = n.children.size();
    if (n.ordered || k < 3 || k > exact_limit) continue;
    bool all_leaves = true;
    for (auto c : n.children) all_leaves = all_leaves && tree.nodes[c].port.has_value();
    if (all_leaves) continue;  // sorting is already optimal
    std::vector<std::vector<double>> keys(k);
    for (std::size_t i = 0; i < k; ++i) {
      collect_keys(tree, n.children[i], key, keys[i]);
      std::sort(keys[i].begin(), keys[i].end());
    }
    std::vector<std::vector<long long>> cross(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) cross[i][j] = cross_count(keys[i], keys[j]);
    const std::size_t full = (std::size_t{1} << k) - 1;
    std::vector<long long> dp(full + 1, std::numeric_limits<long long>::max());
    std::vector<int> choice(full + 1, -1);
    dp[0] = 0;
    for (std::size_t s = 0; s < full; ++s) {
      if (dp[s] == std::numeric_limits<long long>::max()) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (s & (std::size_t{1} << j)) continue;
        long long add = 0;
        for (std::size_t i = 0; i < k; ++i)
          if (s & (std::size_t{1} << i)) add += cross[i][j];
        const std::size_t t = s | (std::size_t{1} << j);
        if (dp[s] + add < dp[t]) {
          dp[t] = dp[s] + add;
          choice[t] = static_cast<int>(j);
        }
      }
    }
    long long current = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) current += cross[i][j];
    if (current <= dp[full]) continue;
    std::vector<std::uint32_t> order(k);
    std::size_t s = full;
    for (std::size_t pos = k; pos-- > 0;) {
      const int j = choice[s];
      order[pos] = n.children[static_cast<std::size_t>(j)];
      s &= ~(std::size_t{1} << j);
    }
    n.children = std::move(order);
  }
}

void shuffle_tree(OrderTree& tree, Rng& rng) {
  for (auto& n : tree.nodes)
    if (!n.ordered) rng.shuffle(n.children);
}

bool realize_ranks(OrderTree& tree, const std::unordered_map<PortId, int>& rank,
                   const std::unordered_map<PortId, double>& key) {
  OrderTree work = tree;
  std::vector<Summary> memo(work.nodes.size());
  summarize(work, 0, key, memo);
  std::vector<std::vector<int>> ranks(work.nodes.size());
  std::function<void(std::uint32_t)> gather = [&](std::uint32_t n) {
    auto& r = ranks[n];
    if (work.nodes[n].port) {
      auto it = rank.find(*work.nodes[n].port);
      if (it != rank.end()) r.push_back(it->second);
    }
    for (auto c : work.nodes[n].children) {
      gather(c);
      r.insert(r.end(), ranks[c].begin(), ranks[c].end());
    }
    std::sort(r.begin(), r.end());
  };
  gather(0);

  for (std::uint32_t n = 0; n < work.nodes.size(); ++n) {
    auto& node = work.nodes[n];
    const auto& rn = ranks[n];
    std::vector<std::uint32_t> constrained, loose;
    for (auto c : node.children) {
      const auto& rc = ranks[c];
      if (rc.empty()) {
        loose.push_back(c);
        continue;
      }
      const auto a = static_cast<std::size_t>(std::lower_bound(rn.begin(), rn.end(), rc.front()) - rn.begin());
      if (a + rc.size() > rn.size() || rn[a + rc.size() - 1] != rc.back()) return false;
      constrained.push_back(c);
    }
    if (node.ordered) {
      for (std::size_t i = 1; i < constrained.size(); ++i)
        if (ranks[constrained[i - 1]].front() > ranks[constrained[i]].front()) return false;
      continue;
    }
    std::sort(constrained.begin(), constrained.end(),
              [&](std::uint32_t a, std::uint32_t b) { return ranks[a].front() < ranks[b].front(); });
    std::stable_sort(loose.begin(), loose.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return memo[a].mean() < memo[b].mean(); });
    std::vector<std::uint32_t> merged;
    std::size_t i = 0, j = 0;
    while (i < constrained.size() || j < loose.size()) {
      if (j == loose.size() || (i < constrained.size() && memo[constrained[i]].mean() <= memo[loose[j]].mean()))
        merged.push_back(constrained[i++]);
      else
        merged.push_back(loose[j++]);
    }
    node.children = std::move(merged);
  }
  tree = std::move(work);
  return true;
}

bool sequence_respects_tree(const OrderTree& tree, const std::vector<PortId>& sequence) {
  std::unordered_map<PortId, std::size_t> pos;
  for (std::size_t i = 0; i < sequence.size(); ++i) pos[sequence[i]] = i;
  struct Span {
    std::size_t lo = std::numeric_limits<std::size_t>::max(), hi = 0, count = 0;
  };
  std::vector<Span> span(tree.nodes.size());
  bool ok = true;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t n) {
    auto& s = span[n];
    if (tree.nodes[n].port) {
      auto it = pos.find(*tree.nodes[n].port);
      if (it == pos.end()) {
        ok = false;
        return;
      }
      s.lo = s.hi = it->second;
      s.count = 1;
    }
    for (auto c : tree.nodes[n].children) {
      walk(c);
      if (span[c].count == 0) continue;
      s.lo = std::min(s.lo, span[c].lo);
      s.hi = std::max(s.hi, span[c].hi);
      s.count += span[c].count;
    }
    if (s.count && s.hi - s.lo + 1 != s.count) ok = false;
    if (tree.nodes[n].ordered) {
      std::size_t last = 0;
      bool first = true;
      for (auto c : tree.nodes[n].children) {
        if (span[c].count == 0) continue;
        if (!first && span[c].lo < last) ok = false;
        last = span[c].lo;
        first = false;
      }
    }
  };
  walk(0);
  return ok && sequence.size() == span[0].count;
}

}  // namespace portline

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "portline/model.hpp"
#include "portline/random.hpp"

namespace portline {

/// Ordering constraints of the ports on one side of one vertex. Node 0 is a
/// free root; inner nodes mirror port groups, leaves hold ports. The current
/// left-to-right order is the order of the children vectors.
struct OrderTree {
  struct TNode {
    bool ordered = false;
    std::optional<PortId> port;       // set for leaves
    std::optional<GroupId> group;     // set for inner nodes except the root
    std::vector<std::uint32_t> children;
  };
  std::vector<TNode> nodes{TNode{}};

  std::uint32_t add(std::uint32_t parent, TNode node);
  bool empty() const { return nodes[0].children.empty(); }
  std::vector<PortId> leaves() const;
};

/// Reorders free nodes by the mean key of their subtree leaves (stable);
/// fixed nodes keep their order.
void sort_tree(OrderTree& tree, const std::unordered_map<PortId, double>& key);

/// Like sort_tree, but chooses each free node's child order to minimize
/// inversions of the leaf keys: exact for up to `exact_limit` children.
void minimize_tree_inversions(OrderTree& tree, const std::unordered_map<PortId, double>& key,
                              std::size_t exact_limit = 8);

/// Random order of every free node.
void shuffle_tree(OrderTree& tree, Rng& rng);

/// Reorders the tree so that constrained ports appear in increasing rank,
/// staying close to `key` otherwise. Returns false (tree untouched) if no
/// admissible order puts the constrained ports in rank order.
bool realize_ranks(OrderTree& tree, const std::unordered_map<PortId, int>& rank,
                   const std::unordered_map<PortId, double>& key);

/// True iff the leaf sequence respects the tree (always true for orders produced
/// by the functions above; used by tests on arbitrary sequences).
bool sequence_respects_tree(const OrderTree& tree, const std::vector<PortId>& sequence);

}  // namespace portline

// Node paths and labelled ordered trees shared by the history-tree constructions.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paradet/state_set.hpp"

namespace paradet {

// A node is addressed by the sequence of child indices from the root; the
// empty sequence is the root. kStepSymbol marks a stepchild edge and sorts
// after every natural index, so stepchildren are the youngest siblings under
// plain lexicographic order.
inline constexpr std::uint32_t kStepSymbol = 0xFFFFFFFFu;

using NodePath = std::vector<std::uint32_t>;

inline bool is_step_component(std::uint32_t c) { return c == kStepSymbol; }

inline NodePath path_parent(const NodePath& p) {
  NodePath out(p.begin(), p.end() - 1);
  return out;
}

inline bool path_is_prefix(const NodePath& pre, const NodePath& p) {
  if (pre.size() > p.size()) return false;
  return std::equal(pre.begin(), pre.end(), p.begin());
}

// "ε", "0", "0.1", "0.s.0"
std::string path_to_string(const NodePath& p);

// Prefix- and sibling-order-closed node set with labels, kept sorted in
// lexicographic (= DFS preorder) order. Equality of two trees is equality of
// the two vectors.
struct OrderedTree {
  std::vector<NodePath> nodes;
  std::vector<StateSet> labels;

  bool operator==(const OrderedTree& other) const = default;

  std::size_t size() const { return nodes.size(); }
  // Index of a path, or npos.
  std::size_t find(const NodePath& p) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Children of node i, in sibling order (indices into nodes).
  std::vector<std::size_t> children_of(std::size_t i) const;
  std::size_t hash() const;
  // "ε:{0,1} 0:{0} 1:{1}"
  std::string to_string() const;

  // Sorts nodes lexicographically, keeping labels aligned.
  void canonicalise();
};

struct OrderedTreeHash {
  std::size_t operator()(const OrderedTree& t) const { return t.hash(); }
};

// Lexicographic order on paths; natural indices before the step symbol.
bool path_less(const NodePath& a, const NodePath& b);

std::string state_set_to_string(const StateSet& s);

}  // namespace paradet

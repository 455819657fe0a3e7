// Root history trees and the six-step determinisation of one-pair Rabin
// (and Büchi) automata to deterministic Rabin automata.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paradet/automata.hpp"
#include "paradet/tree_path.hpp"

namespace paradet {

struct ValidationReport {
  bool ok = true;
  std::string detail;  // first violated condition and node, empty when ok
};

// History tree: prefix- and sibling-order-closed, non-empty labels,
// label containment, sibling disjointness, and strict containment of the
// children's union in every node's label.
ValidationReport validate_history_tree(const OrderedTree& t);

// Root history tree: as above, but strictness only for non-root nodes and
// the root's label equal to the union of its children's labels.
ValidationReport validate_rht(const OrderedTree& t);

// ({ε, 0}, both labelled I).
OrderedTree initial_rht(const StateSet& initial);

enum class SinkKind : std::uint8_t { None, Accept, Reject };

struct TreeStepResult {
  SinkKind sink = SinkKind::None;
  OrderedTree tree;                  // valid when sink == None
  std::vector<NodePath> accepting;   // breakpoint nodes, pre-rename names
  std::vector<NodePath> stable;      // nodes surviving under their own name
};

// One transition of the deterministic automaton: subset update, child
// spawning, horizontal and vertical pruning, empty-node removal, reordering.
// Reaching TOP from the root yields the accepting sink, an empty root the
// rejecting sink.
TreeStepResult rht_step(const OrderedTree& d, std::uint32_t letter, const OnePairRabinNpa& r1);

struct RhtDeterminisation {
  DetRabinAutomaton automaton;
  std::vector<OrderedTree> tree_states;  // per non-sink state id
};

// BFS closure of rht_step from initial_rht(I). One Rabin pair per node name
// that is ever accepting; a transition is in R_j exactly when j is not stable.
RhtDeterminisation determinise_one_pair_rabin(const OnePairRabinNpa& r1,
                                              std::size_t max_states = 1000000);

}  // namespace paradet

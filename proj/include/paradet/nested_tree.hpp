// Nested history trees and the seven-step determinisation of nondeterministic
// parity automata to deterministic Rabin automata. An NHT stacks history-tree
// layers indexed by even levels: stepchild edges drop the level by two,
// Rabin roots (nodes ending in the stepchild symbol, and the root itself for
// odd c) copy their label into fresh children instead of splitting on
// accepting transitions.
#pragma once

#include <cstdint>
#include <vector>

#include "paradet/automata.hpp"
#include "paradet/history_tree.hpp"
#include "paradet/tree_path.hpp"

namespace paradet {

// Levels are determined by the path alone: e minus twice the number of
// stepchild components.
std::uint32_t level_of(const NodePath& p, std::uint32_t e);
bool is_rabin_root(const NodePath& p, std::uint32_t c);
bool is_base_node(const NodePath& p, std::uint32_t c);

// All structural bullets: closure, non-empty nested disjoint labels, strict
// containment at base nodes, exact child cover elsewhere, stepchild presence
// exactly at non-base non-Rabin-roots, levels never below 2.
ValidationReport validate_nht(const OrderedTree& t, std::uint32_t c);

// Step-7 closure of ({ε} ↦ I): alternating root-copy and stepchild nodes,
// all labelled I, down to level 2.
OrderedTree initial_nht(const StateSet& initial, std::uint32_t c);

// One transition of the deterministic automaton (Steps 1-7).
TreeStepResult nht_step(const OrderedTree& d, std::uint32_t letter, const ParityNpa& p);

struct NhtDeterminisation {
  DetRabinAutomaton automaton;
  std::vector<OrderedTree> tree_states;  // indexed by automaton state id
};

NhtDeterminisation determinise_parity_to_rabin(const ParityNpa& p,
                                               std::size_t max_states = 1000000);

}  // namespace paradet

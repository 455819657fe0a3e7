// LIR-NHT states and the determinisation of parity automata to deterministic
// min-even parity automata: NHT states augmented with a later introduction
// record over the non-Rabin-root nodes. The record order turns Rabin pairs
// into co-priorities: position i rejecting gives 2i-1, accepting 2i, and a
// quiet transition n*e+1.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paradet/automata.hpp"
#include "paradet/history_tree.hpp"
#include "paradet/nested_tree.hpp"
#include "paradet/tree_path.hpp"

namespace paradet {

struct LirTriple {
  StateSet states;  // S: the node's label
  std::uint32_t level = 2;
  StateSet hosted;  // P: states of the label hosted here, not in natural children

  bool operator==(const LirTriple&) const = default;
};

struct LirState {
  std::vector<LirTriple> triples;

  bool operator==(const LirState&) const = default;
  std::size_t hash() const;
  std::string to_string() const;
};

struct LirStateHash {
  std::size_t operator()(const LirState& s) const { return s.hash(); }
};

// Sequence-level conditions (1-5) and reconstructibility into a valid NHT.
ValidationReport validate_lir(const LirState& seq, std::uint32_t c);

struct LirTreeView {
  OrderedTree tree;
  std::vector<NodePath> triple_nodes;  // node of each triple, by position
};

// Rebuilds the unique NHT behind a record: natural-child relations from
// same-level label containment, Rabin-root chains from hosted-set
// containment, sibling order from record order. Throws argument_error on
// sequences that validate_lir rejects.
LirTreeView nht_of_lir(const LirState& seq, std::uint32_t c);

// Canonical record of an NHT: its non-Rabin-root nodes in tree order.
LirState lir_of_nht(const OrderedTree& tree, std::uint32_t c);

struct LirStepResult {
  SinkKind sink = SinkKind::None;
  LirState state;                 // valid when sink == None
  std::uint32_t co_priority = 0;  // in [1, n*e+1]; sinks give 2 resp. 1
};

// One DPA transition: run the tree mechanism, keep the stable positions in
// order on the left, append the remaining tree nodes on the right, and read
// the co-priority off the smallest affected position.
LirStepResult lir_step(const LirState& seq, std::uint32_t letter, const ParityNpa& p);

struct LirDeterminisation {
  DetParityAutomaton automaton;
  std::vector<LirState> lir_states;  // indexed by automaton state id
};

LirDeterminisation determinise_parity_to_dpa(const ParityNpa& p, std::size_t max_states = 1000000);

// True iff the last position is ({q}, 2, {q}).
bool is_spiked(const LirState& seq);

// Optional export conversion: co-priority q corresponds to max-parity
// priority n*e+2-q. Never used internally.
std::uint32_t max_parity_priority(const DetParityAutomaton& dpa, std::uint32_t co);

}  // namespace paradet

// The full parity automaton over n states and priority bound c: its alphabet
// is the set of all functions from state pairs to priority sets, so letters
// are passed explicitly and the alphabet is never materialised.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paradet/automata.hpp"

namespace paradet {

struct FullLetterCell {
  state_t src;
  state_t dst;  // kTopState allowed
  std::vector<std::uint32_t> priorities;  // non-empty, each in [1, c]

  bool operator==(const FullLetterCell&) const = default;
};

// Sparse transition function: absent cells mean the empty priority set.
struct FullLetter {
  std::vector<FullLetterCell> cells;  // sorted by (src, dst)

  bool operator==(const FullLetter&) const = default;
};

void validate(const FullLetter& letter, std::uint32_t n, std::uint32_t c);

// Highest even number of a set, or its lowest odd number if no even exists.
std::uint32_t opt_priority(const std::vector<std::uint32_t>& set);

// One transition per non-empty cell, priority chosen by opt.
std::vector<Transition> letter_transitions(const FullLetter& letter, std::uint32_t n,
                                           std::uint32_t c,
                                           std::vector<std::uint32_t>* priorities = nullptr);

struct ReachResult {
  StateSet states;
  bool top = false;  // sticky: once reached, stays reached
};

// reach(ε) = Q; reach(wa) = successors of reach(w) under a.
ReachResult reach(const std::vector<FullLetter>& word, std::uint32_t n, std::uint32_t c);

// The restriction of the full automaton to an explicit letter list, as an
// ordinary parity automaton with I = Q. Letters are named "s0", "s1", ...
ParityNpa induced_npa(const std::vector<FullLetter>& letters, std::uint32_t n, std::uint32_t c);

// Lasso membership in the full automaton's language, via the induced
// automaton over the letters that occur in the word.
bool full_accepts(const std::vector<FullLetter>& stem, const std::vector<FullLetter>& cycle,
                  std::uint32_t n, std::uint32_t c);

// Letters mirroring the ones used in hardness arguments.
FullLetter letter_empty();
FullLetter letter_single_cell(state_t src, state_t dst, std::vector<std::uint32_t> priorities);
FullLetter letter_diagonal(std::uint32_t n, std::vector<std::uint32_t> priorities);

}  // namespace paradet

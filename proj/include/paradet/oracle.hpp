// Ground-truth lasso-word membership for nondeterministic parity automata,
// seeded instance generation, and the harness that cross-checks every
// determinisation against it.
#pragma once

#include <cstdint>
#include <optional>

#include "paradet/automata.hpp"

namespace paradet {

// True iff some run of p on stem cycle^ω is accepting: a run touches TOP, or
// the highest priority occurring infinitely often on some run is even.
// Decided on the finite (state, word-phase) product via one strongly-connected
// component sweep per even priority.
bool npa_accepts_lasso(const ParityNpa& p, const LassoWord& w);

// Same answer via exhaustive simple-cycle enumeration over the product;
// only sensible for tiny products (the oracle's oracle).
bool npa_accepts_lasso_bruteforce(const ParityNpa& p, const LassoWord& w);

struct GenConfig {
  std::uint32_t n = 2;
  std::uint32_t c = 2;
  std::uint32_t alphabet_size = 2;
  double density = 0.5;          // per (src, letter, dst) transition probability
  double top_probability = 0.0;  // per (src, letter) probability of a TOP edge
  std::uint64_t seed = 1;
};

// Seeded and reproducible: the same config always yields the same automaton.
ParityNpa random_npa(const GenConfig& cfg);

struct CheckMode {
  bool exhaustive = true;
  std::uint32_t max_stem = 2;
  std::uint32_t max_cycle = 3;
  // sampled mode only:
  std::uint32_t samples = 0;
  std::uint64_t seed = 1;
};

// Compares nondeterministic acceptance of p with deterministic acceptance of
// d on every lasso of the mode; returns the first disagreement, if any.
std::optional<LassoWord> find_counterexample(const ParityNpa& p, const DetRabinAutomaton& d,
                                             const CheckMode& mode);
std::optional<LassoWord> find_counterexample(const ParityNpa& p, const DetParityAutomaton& d,
                                             const CheckMode& mode);

// Visits every lasso with |stem| <= max_stem and 1 <= |cycle| <= max_cycle in
// canonical order (lengths ascending, letters lexicographic). Stops early if
// the visitor returns false.
template <typename F>
void for_each_lasso(std::uint32_t letter_count, std::uint32_t max_stem, std::uint32_t max_cycle,
                    F&& visit);

// --- implementation of the template ------------------------------------

namespace detail {
inline bool next_word(std::vector<std::uint32_t>& word, std::uint32_t letter_count) {
  for (std::size_t i = word.size(); i-- > 0;) {
    if (++word[i] < letter_count) return true;
    word[i] = 0;
  }
  return false;
}
}  // namespace detail

template <typename F>
void for_each_lasso(std::uint32_t letter_count, std::uint32_t max_stem, std::uint32_t max_cycle,
                    F&& visit) {
  for (std::uint32_t su = 0; su <= max_stem; ++su) {
    for (std::uint32_t sv = 1; sv <= max_cycle; ++sv) {
      LassoWord w;
      w.stem.assign(su, 0);
      w.cycle.assign(sv, 0);
      for (;;) {
        if (!visit(static_cast<const LassoWord&>(w))) return;
        if (!detail::next_word(w.cycle, letter_count)) {
          if (!detail::next_word(w.stem, letter_count)) break;
          w.cycle.assign(sv, 0);
        }
      }
    }
  }
}

}  // namespace paradet

// Automaton data model, acceptance-set algebra and deterministic-run
// evaluation shared by all constructions. Acceptance always sits on
// transitions; a distinguished pseudo-state TOP grants immediate acceptance.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paradet/errors.hpp"
#include "paradet/state_set.hpp"

namespace paradet {

// Immediate-acceptance target. Never a source, never counted in n.
inline constexpr state_t kTopState = 0xFFFFFFFFu;

struct Transition {
  state_t src;
  std::uint32_t letter;
  state_t dst;  // kTopState allowed

  bool operator==(const Transition&) const = default;
};

// Common nondeterministic skeleton: states 0..n-1, an explicit finite
// alphabet, a non-empty initial set, and a transition list.
struct NondetAutomaton {
  std::uint32_t n = 0;
  std::vector<std::string> letters;
  StateSet initial;
  std::vector<Transition> transitions;
};

struct ParityNpa : NondetAutomaton {
  std::vector<std::uint32_t> pri;  // pri[i] in [1, c] for transitions[i]
  std::uint32_t c = 2;

  // 2*floor(c/2); at least 2 after normalisation.
  std::uint32_t even_ceiling() const { return 2 * (c / 2); }
};

struct OnePairRabinNpa : NondetAutomaton {
  std::vector<std::uint32_t> accepting;  // sorted transition indices (A)
  std::vector<std::uint32_t> rejecting;  // sorted transition indices (R)

  bool is_buchi() const { return rejecting.empty(); }
};

// Throw validation_error on structural breakage. Inputs with c = 1 are
// re-typed as c = 2 by normalise_priorities (a [1]-automaton is a
// [2]-automaton with no priority-2 transition).
void validate(const NondetAutomaton& a);
void validate(const ParityNpa& p);
void validate(const OnePairRabinNpa& r);
void normalise_priorities(ParityNpa& p);

// --- deterministic outputs ---------------------------------------------

enum class DetStateKind : std::uint8_t { Tree, AcceptSink, RejectSink };

struct DetAutomaton {
  std::vector<std::string> letters;
  std::uint32_t initial = 0;
  // delta[s * |letters| + a] = successor state. Total.
  std::vector<std::uint32_t> delta;
  std::vector<DetStateKind> kinds;
  std::vector<std::string> state_labels;  // structure captions, "" if none

  std::uint32_t state_count() const { return static_cast<std::uint32_t>(kinds.size()); }
  std::uint32_t successor(std::uint32_t s, std::uint32_t a) const {
    return delta[static_cast<std::size_t>(s) * letters.size() + a];
  }
  std::uint32_t transition_id(std::uint32_t s, std::uint32_t a) const {
    return static_cast<std::uint32_t>(s * letters.size() + a);
  }
  std::optional<std::uint32_t> find_sink(DetStateKind k) const;
};

struct RabinPair {
  std::string name;                      // node name the pair watches, or "top"
  std::vector<std::uint32_t> accepting;  // sorted transition ids (A_j)
  std::vector<std::uint32_t> rejecting;  // sorted transition ids (R_j)

  bool operator==(const RabinPair&) const = default;
};

struct DetRabinAutomaton : DetAutomaton {
  std::vector<RabinPair> pairs;
};

// Min-even acceptance: a run accepts iff the least co-priority seen
// infinitely often is even.
struct DetParityAutomaton : DetAutomaton {
  std::vector<std::uint32_t> co_priority;  // parallel to delta
  std::uint32_t max_co = 1;                // n*e + 1 of the source automaton
};

// Ultimately periodic word u v^ω, by letter index. |v| >= 1.
struct LassoWord {
  std::vector<std::uint32_t> stem;
  std::vector<std::uint32_t> cycle;
};

void validate(const LassoWord& w, std::size_t letter_count);

// --- operations ---------------------------------------------------------

// A Büchi automaton is a one-pair Rabin automaton with R = ∅.
OnePairRabinNpa buchi_to_one_pair_rabin(const std::vector<std::uint32_t>& accepting_transitions,
                                        const NondetAutomaton& base);

// pri = 2 on A, 3 on R, 1 elsewhere; c = 3 if R non-empty else 2.
// Requires A and R disjoint.
ParityNpa one_pair_rabin_to_parity(const OnePairRabinNpa& r1);

// Per even level a: rejecting = odd priorities above a, accepting = even
// priorities at or above a, neutral = everything not rejecting.
struct AcceptanceSets {
  std::vector<std::uint32_t> rejecting;  // R_a, transition indices
  std::vector<std::uint32_t> accepting;  // A_a
  std::vector<std::uint32_t> neutral;    // N_a = T \ R_a
};
AcceptanceSets acceptance_sets(const ParityNpa& p, std::uint32_t level);

// Deterministic evaluation on the eventually periodic run.
bool accepts_lasso(const DetRabinAutomaton& aut, const LassoWord& w);
bool accepts_lasso(const DetParityAutomaton& aut, const LassoWord& w);

}  // namespace paradet

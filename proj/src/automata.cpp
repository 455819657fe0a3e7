#include "paradet/automata.hpp"

#include <algorithm>
#include <unordered_map>

namespace paradet {

void validate(const NondetAutomaton& a) {
  if (a.letters.empty()) throw validation_error("automaton needs a non-empty alphabet");
  if (a.initial.empty()) throw validation_error("automaton needs a non-empty initial set");
  for (state_t q : a.initial)
    if (q >= a.n) throw validation_error("initial state " + std::to_string(q) + " out of range");
  for (const Transition& t : a.transitions) {
    if (t.src >= a.n) throw validation_error("transition source out of range");
    if (t.dst != kTopState && t.dst >= a.n) throw validation_error("transition target out of range");
    if (t.letter >= a.letters.size()) throw validation_error("transition letter out of range");
  }
}

void validate(const ParityNpa& p) {
  validate(static_cast<const NondetAutomaton&>(p));
  if (p.c < 1) throw validation_error("priority bound c must be at least 1");
  if (p.pri.size() != p.transitions.size())
    throw validation_error("priority map must cover every transition");
  for (std::uint32_t v : p.pri)
    if (v < 1 || v > p.c) throw validation_error("transition priority outside [1, c]");
}

void validate(const OnePairRabinNpa& r) {
  validate(static_cast<const NondetAutomaton&>(r));
  auto check = [&](const std::vector<std::uint32_t>& set, const char* what) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] >= r.transitions.size())
        throw validation_error(std::string("unknown transition referenced in ") + what);
      if (i && set[i] <= set[i - 1])
        throw validation_error(std::string(what) + " set must be sorted and duplicate-free");
    }
  };
  check(r.accepting, "A");
  check(r.rejecting, "R");
  std::vector<std::uint32_t> both;
  std::set_intersection(r.accepting.begin(), r.accepting.end(), r.rejecting.begin(),
                        r.rejecting.end(), std::back_inserter(both));
  if (!both.empty()) throw validation_error("A and R must be disjoint");
}

void normalise_priorities(ParityNpa& p) {
  if (p.c == 1) p.c = 2;
}

std::optional<std::uint32_t> DetAutomaton::find_sink(DetStateKind k) const {
  for (std::uint32_t s = 0; s < kinds.size(); ++s)
    if (kinds[s] == k) return s;
  return std::nullopt;
}

void validate(const LassoWord& w, std::size_t letter_count) {
  if (w.cycle.empty()) throw argument_error("lasso cycle must be non-empty");
  for (std::uint32_t a : w.stem)
    if (a >= letter_count) throw argument_error("unknown letter in lasso stem");
  for (std::uint32_t a : w.cycle)
    if (a >= letter_count) throw argument_error("unknown letter in lasso cycle");
}

OnePairRabinNpa buchi_to_one_pair_rabin(const std::vector<std::uint32_t>& accepting_transitions,
                                        const NondetAutomaton& base) {
  OnePairRabinNpa out;
  static_cast<NondetAutomaton&>(out) = base;
  out.accepting = accepting_transitions;
  std::sort(out.accepting.begin(), out.accepting.end());
  out.accepting.erase(std::unique(out.accepting.begin(), out.accepting.end()),
                      out.accepting.end());
  for (std::uint32_t t : out.accepting)
    if (t >= base.transitions.size())
      throw validation_error("unknown transition referenced in accepting set");
  validate(out);
  return out;
}

ParityNpa one_pair_rabin_to_parity(const OnePairRabinNpa& r1) {
  validate(r1);
  ParityNpa out;
  static_cast<NondetAutomaton&>(out) = static_cast<const NondetAutomaton&>(r1);
  out.c = r1.rejecting.empty() ? 2 : 3;
  out.pri.assign(r1.transitions.size(), 1);
  for (std::uint32_t t : r1.accepting) out.pri[t] = 2;
  for (std::uint32_t t : r1.rejecting) out.pri[t] = 3;
  return out;
}

AcceptanceSets acceptance_sets(const ParityNpa& p, std::uint32_t level) {
  if (level % 2 != 0) throw argument_error("acceptance level must be even");
  if (level < 2 || level > p.even_ceiling())
    throw argument_error("acceptance level outside [2, e]");
  AcceptanceSets out;
  for (std::uint32_t i = 0; i < p.transitions.size(); ++i) {
    std::uint32_t v = p.pri[i];
    if (v > level && v % 2 == 1)
      out.rejecting.push_back(i);
    else
      out.neutral.push_back(i);
    if (v >= level && v % 2 == 0) out.accepting.push_back(i);
  }
  return out;
}

namespace {

// Runs the stem, then iterates the cycle until a (state, offset) pair repeats;
// reports the transition ids on the loop. The pair space is finite, so this
// terminates within |states| * |cycle| iterations of the cycle phase.
struct CycleInfo {
  DetStateKind absorbed;  // Tree when no sink was hit
  std::vector<std::uint32_t> loop_tids;
};

CycleInfo det_cycle(const DetAutomaton& aut, const LassoWord& w) {
  validate(w, aut.letters.size());
  std::uint32_t s = aut.initial;
  for (std::uint32_t a : w.stem) {
    if (aut.kinds[s] != DetStateKind::Tree) return {aut.kinds[s], {}};
    s = aut.successor(s, a);
  }
  std::unordered_map<std::uint64_t, std::size_t> seen;  // (state, offset) -> step
  std::vector<std::uint32_t> tids;
  std::size_t offset = 0;
  for (;;) {
    if (aut.kinds[s] != DetStateKind::Tree) return {aut.kinds[s], {}};
    std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | offset;
    auto [it, fresh] = seen.emplace(key, tids.size());
    if (!fresh) {
      std::vector<std::uint32_t> loop(tids.begin() + static_cast<std::ptrdiff_t>(it->second),
                                      tids.end());
      return {DetStateKind::Tree, std::move(loop)};
    }
    std::uint32_t a = w.cycle[offset];
    tids.push_back(aut.transition_id(s, a));
    s = aut.successor(s, a);
    offset = (offset + 1) % w.cycle.size();
  }
}

}  // namespace

bool accepts_lasso(const DetRabinAutomaton& aut, const LassoWord& w) {
  CycleInfo info = det_cycle(aut, w);
  if (info.absorbed == DetStateKind::AcceptSink) return true;
  if (info.absorbed == DetStateKind::RejectSink) return false;
  std::vector<std::uint32_t> loop = info.loop_tids;
  std::sort(loop.begin(), loop.end());
  for (const RabinPair& pair : aut.pairs) {
    bool hit_a = false;
    bool hit_r = false;
    for (std::uint32_t t : loop) {
      if (!hit_a && std::binary_search(pair.accepting.begin(), pair.accepting.end(), t))
        hit_a = true;
      if (!hit_r && std::binary_search(pair.rejecting.begin(), pair.rejecting.end(), t))
        hit_r = true;
    }
    if (hit_a && !hit_r) return true;
  }
  return false;
}

bool accepts_lasso(const DetParityAutomaton& aut, const LassoWord& w) {
  CycleInfo info = det_cycle(aut, w);
  if (info.absorbed == DetStateKind::AcceptSink) return true;
  if (info.absorbed == DetStateKind::RejectSink) return false;
  std::uint32_t min_co = 0xFFFFFFFFu;
  for (std::uint32_t t : info.loop_tids) min_co = std::min(min_co, aut.co_priority[t]);
  return min_co % 2 == 0;
}

}  // namespace paradet

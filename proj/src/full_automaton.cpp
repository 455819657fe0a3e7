#include "paradet/full_automaton.hpp"

#include <algorithm>

#include "paradet/oracle.hpp"

namespace paradet {

void validate(const FullLetter& letter, std::uint32_t n, std::uint32_t c) {
  for (std::size_t i = 0; i < letter.cells.size(); ++i) {
    const FullLetterCell& cell = letter.cells[i];
    if (cell.src >= n) throw validation_error("letter cell source out of range");
    if (cell.dst != kTopState && cell.dst >= n)
      throw validation_error("letter cell target out of range");
    if (cell.priorities.empty())
      throw validation_error("letter cells carry non-empty priority sets");
    for (std::uint32_t v : cell.priorities)
      if (v < 1 || v > c) throw validation_error("letter cell priority outside [1, c]");
    if (i && !(letter.cells[i - 1].src < cell.src ||
               (letter.cells[i - 1].src == cell.src && letter.cells[i - 1].dst < cell.dst)))
      throw validation_error("letter cells must be sorted by (source, target) and unique");
  }
}

std::uint32_t opt_priority(const std::vector<std::uint32_t>& set) {
  if (set.empty()) throw argument_error("opt needs a non-empty priority set");
  std::uint32_t best_even = 0;
  std::uint32_t best_odd = 0xFFFFFFFFu;
  for (std::uint32_t v : set) {
    if (v % 2 == 0)
      best_even = std::max(best_even, v);
    else
      best_odd = std::min(best_odd, v);
  }
  return best_even ? best_even : best_odd;
}

std::vector<Transition> letter_transitions(const FullLetter& letter, std::uint32_t n,
                                           std::uint32_t c,
                                           std::vector<std::uint32_t>* priorities) {
  validate(letter, n, c);
  std::vector<Transition> out;
  for (const FullLetterCell& cell : letter.cells) {
    out.push_back({cell.src, 0, cell.dst});
    if (priorities) priorities->push_back(opt_priority(cell.priorities));
  }
  return out;
}

ReachResult reach(const std::vector<FullLetter>& word, std::uint32_t n, std::uint32_t c) {
  ReachResult r;
  for (state_t q = 0; q < n; ++q) r.states.push_back(q);
  for (const FullLetter& letter : word) {
    validate(letter, n, c);
    StateSet next;
    for (const FullLetterCell& cell : letter.cells) {
      if (!set_contains(r.states, cell.src)) continue;
      if (cell.dst == kTopState)
        r.top = true;
      else
        set_insert(next, cell.dst);
    }
    r.states = std::move(next);
  }
  return r;
}

ParityNpa induced_npa(const std::vector<FullLetter>& letters, std::uint32_t n, std::uint32_t c) {
  ParityNpa p;
  p.n = n;
  p.c = c;
  normalise_priorities(p);
  for (state_t q = 0; q < n; ++q) p.initial.push_back(q);
  for (std::uint32_t a = 0; a < letters.size(); ++a) {
    p.letters.push_back("s" + std::to_string(a));
    std::vector<std::uint32_t> pris;
    std::vector<Transition> trs = letter_transitions(letters[a], n, c, &pris);
    for (std::size_t i = 0; i < trs.size(); ++i) {
      trs[i].letter = a;
      p.transitions.push_back(trs[i]);
      p.pri.push_back(pris[i]);
    }
  }
  validate(p);
  return p;
}

bool full_accepts(const std::vector<FullLetter>& stem, const std::vector<FullLetter>& cycle,
                  std::uint32_t n, std::uint32_t c) {
  std::vector<FullLetter> distinct;
  auto index_of = [&](const FullLetter& l) {
    for (std::uint32_t i = 0; i < distinct.size(); ++i)
      if (distinct[i] == l) return i;
    distinct.push_back(l);
    return static_cast<std::uint32_t>(distinct.size() - 1);
  };
  LassoWord w;
  for (const FullLetter& l : stem) w.stem.push_back(index_of(l));
  for (const FullLetter& l : cycle) w.cycle.push_back(index_of(l));
  return npa_accepts_lasso(induced_npa(distinct, n, c), w);
}

FullLetter letter_empty() { return {}; }

FullLetter letter_single_cell(state_t src, state_t dst, std::vector<std::uint32_t> priorities) {
  FullLetter out;
  out.cells.push_back({src, dst, std::move(priorities)});
  return out;
}

FullLetter letter_diagonal(std::uint32_t n, std::vector<std::uint32_t> priorities) {
  FullLetter out;
  for (state_t q = 0; q < n; ++q) out.cells.push_back({q, q, priorities});
  return out;
}

}  // namespace paradet

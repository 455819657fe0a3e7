// Small construction helpers and independent brute-force oracles used by the
// unit and acceptance suites. Everything here stays independent of the
// implementation paths it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "paradet/automata.hpp"

namespace paradet::testing {

struct Tr {
  state_t src;
  char letter;
  state_t dst;  // kTopState allowed
  std::uint32_t pri = 1;
};

inline std::vector<std::string> letter_names(std::uint32_t k) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline ParityNpa make_parity(std::uint32_t n, std::uint32_t letters, StateSet initial,
                             std::vector<Tr> trs, std::uint32_t c) {
  ParityNpa p;
  p.n = n;
  p.letters = letter_names(letters);
  p.initial = std::move(initial);
  p.c = c;
  for (const Tr& t : trs) {
    p.transitions.push_back({t.src, static_cast<std::uint32_t>(t.letter - 'a'), t.dst});
    p.pri.push_back(t.pri);
  }
  validate(p);
  return p;
}

// A and R are given as indices into trs.
inline OnePairRabinNpa make_rabin1(std::uint32_t n, std::uint32_t letters, StateSet initial,
                                   std::vector<Tr> trs, std::vector<std::uint32_t> acc,
                                   std::vector<std::uint32_t> rej) {
  OnePairRabinNpa r;
  r.n = n;
  r.letters = letter_names(letters);
  r.initial = std::move(initial);
  for (const Tr& t : trs)
    r.transitions.push_back({t.src, static_cast<std::uint32_t>(t.letter - 'a'), t.dst});
  std::sort(acc.begin(), acc.end());
  std::sort(rej.begin(), rej.end());
  r.accepting = std::move(acc);
  r.rejecting = std::move(rej);
  validate(r);
  return r;
}

inline LassoWord lasso(std::vector<std::uint32_t> stem, std::vector<std::uint32_t> cycle) {
  return LassoWord{std::move(stem), std::move(cycle)};
}

// Brute-force one-pair Rabin lasso membership: accept iff TOP is reachable in
// the (state, phase) product, or some reachable simple cycle avoids R and
// contains an A transition. Independent of both the parity oracle and the
// determinisers.
inline bool rabin1_accepts_lasso_bruteforce(const OnePairRabinNpa& r, const LassoWord& w) {
  std::uint32_t stem_len = static_cast<std::uint32_t>(w.stem.size());
  std::uint32_t phases = stem_len + static_cast<std::uint32_t>(w.cycle.size());
  auto node = [&](state_t q, std::uint32_t ph) { return ph * r.n + q; };
  struct Edge {
    std::uint32_t to;
    bool in_a;
    bool in_r;
  };
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(phases) * r.n);
  std::vector<char> to_top(edges.size(), 0);
  for (std::uint32_t ph = 0; ph < phases; ++ph) {
    std::uint32_t letter = ph < stem_len ? w.stem[ph] : w.cycle[ph - stem_len];
    std::uint32_t next = ph + 1 < phases ? ph + 1 : stem_len;
    for (std::uint32_t i = 0; i < r.transitions.size(); ++i) {
      const Transition& t = r.transitions[i];
      if (t.letter != letter) continue;
      if (t.dst == kTopState) {
        to_top[node(t.src, ph)] = 1;
        continue;
      }
      edges[node(t.src, ph)].push_back(
          {node(t.dst, next),
           std::binary_search(r.accepting.begin(), r.accepting.end(), i),
           std::binary_search(r.rejecting.begin(), r.rejecting.end(), i)});
    }
  }
  std::vector<char> reach(edges.size(), 0);
  std::vector<std::uint32_t> stack;
  for (state_t q : r.initial) {
    reach[node(q, 0)] = 1;
    stack.push_back(node(q, 0));
  }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    if (to_top[v]) return true;
    for (const Edge& e : edges[v])
      if (!reach[e.to]) {
        reach[e.to] = 1;
        stack.push_back(e.to);
      }
  }
  bool accepted = false;
  std::vector<char> on_path(edges.size(), 0);
  auto dfs = [&](auto&& self, std::uint32_t start, std::uint32_t v, bool saw_a) -> void {
    if (accepted) return;
    on_path[v] = 1;
    for (const Edge& e : edges[v]) {
      if (e.in_r) continue;
      bool a = saw_a || e.in_a;
      if (e.to == start && a) {
        accepted = true;
        break;
      }
      if (e.to > start && !on_path[e.to]) self(self, start, e.to, a);
    }
    on_path[v] = 0;
  };
  for (std::uint32_t s = 0; s < edges.size() && !accepted; ++s)
    if (reach[s]) dfs(dfs, s, s, false);
  return accepted;
}

}  // namespace paradet::testing

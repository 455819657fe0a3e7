#include "paradet/oracle.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace paradet {

namespace {

// (state, phase) product of an NPA with a lasso word. Phases 0..|u|-1 read the
// stem, phases |u|..|u|+|v|-1 read the cycle and wrap. Any closed walk lives
// entirely in cycle phases, because stem phases are visited at most once.
struct LassoProduct {
  std::uint32_t n = 0;
  std::uint32_t phases = 0;
  std::uint32_t stem_len = 0;
  bool top_reachable = false;
  // edges[node] = (successor node, priority)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges;
  std::vector<bool> reachable;

  std::uint32_t node(std::uint32_t q, std::uint32_t ph) const { return ph * n + q; }
};

LassoProduct build_product(const ParityNpa& p, const LassoWord& w) {
  validate(w, p.letters.size());
  LassoProduct g;
  g.n = p.n;
  g.stem_len = static_cast<std::uint32_t>(w.stem.size());
  g.phases = static_cast<std::uint32_t>(w.stem.size() + w.cycle.size());
  g.edges.assign(static_cast<std::size_t>(g.phases) * p.n, {});

  // transitions grouped by (src, letter)
  std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(p.n) * p.letters.size());
  for (std::uint32_t i = 0; i < p.transitions.size(); ++i) {
    const Transition& t = p.transitions[i];
    out[static_cast<std::size_t>(t.src) * p.letters.size() + t.letter].push_back(i);
  }

  for (std::uint32_t ph = 0; ph < g.phases; ++ph) {
    std::uint32_t letter = ph < g.stem_len ? w.stem[ph] : w.cycle[ph - g.stem_len];
    std::uint32_t next = ph + 1 < g.phases ? ph + 1 : g.stem_len;
    for (std::uint32_t q = 0; q < p.n; ++q) {
      for (std::uint32_t ti : out[static_cast<std::size_t>(q) * p.letters.size() + letter]) {
        const Transition& t = p.transitions[ti];
        if (t.dst == kTopState) continue;  // handled during reachability
        g.edges[g.node(q, ph)].emplace_back(g.node(t.dst, next), p.pri[ti]);
      }
    }
  }

  // forward reachability from (I, 0); a reachable TOP edge short-circuits
  g.reachable.assign(g.edges.size(), false);
  std::vector<std::uint32_t> stack;
  for (state_t q : p.initial) {
    std::uint32_t v = g.node(q, 0);
    if (!g.reachable[v]) {
      g.reachable[v] = true;
      stack.push_back(v);
    }
  }
  std::vector<bool> has_top(static_cast<std::size_t>(p.n) * p.letters.size(), false);
  for (const Transition& t : p.transitions)
    if (t.dst == kTopState)
      has_top[static_cast<std::size_t>(t.src) * p.letters.size() + t.letter] = true;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    std::uint32_t ph = v / p.n;
    std::uint32_t q = v % p.n;
    std::uint32_t letter = ph < g.stem_len ? w.stem[ph] : w.cycle[ph - g.stem_len];
    if (has_top[static_cast<std::size_t>(q) * p.letters.size() + letter]) g.top_reachable = true;
    for (const auto& edge : g.edges[v]) {
      if (!g.reachable[edge.first]) {
        g.reachable[edge.first] = true;
        stack.push_back(edge.first);
      }
    }
  }
  return g;
}

// Tarjan over the priority-capped subgraph restricted to reachable nodes.
struct SccFinder {
  const LassoProduct& g;
  std::uint32_t cap;
  std::vector<std::uint32_t> comp, low, num;
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack;
  std::uint32_t counter = 0, comp_count = 0;
  static constexpr std::uint32_t unvisited = 0xFFFFFFFFu;

  explicit SccFinder(const LassoProduct& graph, std::uint32_t pri_cap) : g(graph), cap(pri_cap) {
    std::size_t m = g.edges.size();
    comp.assign(m, unvisited);
    low.assign(m, 0);
    num.assign(m, unvisited);
    on_stack.assign(m, false);
    for (std::uint32_t v = 0; v < m; ++v)
      if (g.reachable[v] && num[v] == unvisited) run(v);
  }

  void run(std::uint32_t root) {
    // iterative Tarjan: (node, next-edge-index) frames
    std::vector<std::pair<std::uint32_t, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei == 0) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (ei < g.edges[v].size()) {
        auto [w, pri] = g.edges[v][ei];
        ++ei;
        if (pri > cap) continue;
        if (num[w] == unvisited) {
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], num[w]);
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        for (;;) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
          if (w == v) break;
        }
        ++comp_count;
      }
      std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
};

}  // namespace

bool npa_accepts_lasso(const ParityNpa& p, const LassoWord& w) {
  LassoProduct g = build_product(p, w);
  if (g.top_reachable) return true;
  // A run with even dominating priority d exists iff some reachable strongly
  // connected component of the pri<=d subgraph contains a priority-d edge.
  for (std::uint32_t d = 2; d <= p.c; d += 2) {
    SccFinder scc(g, d);
    for (std::uint32_t v = 0; v < g.edges.size(); ++v) {
      if (!g.reachable[v]) continue;
      for (auto [succ, pri] : g.edges[v])
        if (pri == d && scc.comp[v] != SccFinder::unvisited && scc.comp[v] == scc.comp[succ])
          return true;
    }
  }
  return false;
}

bool npa_accepts_lasso_bruteforce(const ParityNpa& p, const LassoWord& w) {
  LassoProduct g = build_product(p, w);
  if (g.top_reachable) return true;
  std::size_t m = g.edges.size();
  // Enumerate every simple cycle; a closed walk with even maximal priority
  // always contains a simple sub-cycle with the same maximum.
  std::vector<bool> on_path(m, false);
  bool accepted = false;
  // Paths are rooted at their smallest node, so each cycle is found once.
  auto dfs = [&](auto&& self, std::uint32_t start, std::uint32_t v, std::uint32_t max_pri) -> void {
    if (accepted) return;
    on_path[v] = true;
    for (auto [succ, pri] : g.edges[v]) {
      std::uint32_t mp = std::max(max_pri, pri);
      if (succ == start && mp % 2 == 0) {
        accepted = true;
        break;
      }
      if (succ > start && !on_path[succ]) self(self, start, succ, mp);
    }
    on_path[v] = false;
  };
  for (std::uint32_t start = 0; start < m && !accepted; ++start)
    if (g.reachable[start]) dfs(dfs, start, start, 0);
  return accepted;
}

namespace {

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

ParityNpa random_npa(const GenConfig& cfg) {
  if (cfg.n == 0 || cfg.c == 0 || cfg.alphabet_size == 0)
    throw argument_error("generator config needs n, c and alphabet size >= 1");
  if (cfg.density < 0.0 || cfg.density > 1.0 || cfg.top_probability < 0.0 ||
      cfg.top_probability > 1.0)
    throw argument_error("generator probabilities must lie in [0, 1]");
  std::mt19937_64 rng(cfg.seed);
  ParityNpa p;
  p.n = cfg.n;
  p.c = cfg.c;
  normalise_priorities(p);
  for (std::uint32_t a = 0; a < cfg.alphabet_size; ++a) {
    if (cfg.alphabet_size <= 26)
      p.letters.push_back(std::string(1, static_cast<char>('a' + a)));
    else
      p.letters.push_back("a" + std::to_string(a));
  }
  for (std::uint32_t src = 0; src < cfg.n; ++src)
    for (std::uint32_t a = 0; a < cfg.alphabet_size; ++a) {
      for (std::uint32_t dst = 0; dst < cfg.n; ++dst)
        if (rand_unit(rng) < cfg.density) {
          p.transitions.push_back({src, a, dst});
          p.pri.push_back(1 + static_cast<std::uint32_t>(rng() % p.c));
        }
      if (cfg.top_probability > 0.0 && rand_unit(rng) < cfg.top_probability) {
        p.transitions.push_back({src, a, kTopState});
        p.pri.push_back(1 + static_cast<std::uint32_t>(rng() % p.c));
      }
    }
  for (std::uint32_t q = 0; q < cfg.n; ++q)
    if (rng() & 1) p.initial.push_back(q);
  if (p.initial.empty()) p.initial.push_back(static_cast<state_t>(rng() % cfg.n));
  validate(p);
  return p;
}

namespace {

template <typename Det>
std::optional<LassoWord> check_impl(const ParityNpa& p, const Det& d, const CheckMode& mode) {
  if (p.letters != d.letters) throw argument_error("alphabets of the two automata differ");
  std::optional<LassoWord> counterexample;
  auto try_one = [&](const LassoWord& w) {
    if (npa_accepts_lasso(p, w) != accepts_lasso(d, w)) {
      counterexample = w;
      return false;
    }
    return true;
  };
  std::uint32_t k = static_cast<std::uint32_t>(p.letters.size());
  if (mode.exhaustive) {
    for_each_lasso(k, mode.max_stem, mode.max_cycle, try_one);
    return counterexample;
  }
  std::mt19937_64 rng(mode.seed);
  auto geometric_len = [&](std::uint32_t lo, std::uint32_t hi) {
    std::uint32_t len = lo;
    while (len < hi && (rng() & 1)) ++len;
    return len;
  };
  for (std::uint32_t i = 0; i < mode.samples; ++i) {
    LassoWord w;
    std::uint32_t su = geometric_len(0, mode.max_stem);
    std::uint32_t sv = geometric_len(1, mode.max_cycle);
    for (std::uint32_t j = 0; j < su; ++j) w.stem.push_back(static_cast<std::uint32_t>(rng() % k));
    for (std::uint32_t j = 0; j < sv; ++j) w.cycle.push_back(static_cast<std::uint32_t>(rng() % k));
    if (!try_one(w)) return counterexample;
  }
  return counterexample;
}

}  // namespace

std::optional<LassoWord> find_counterexample(const ParityNpa& p, const DetRabinAutomaton& d,
                                             const CheckMode& mode) {
  return check_impl(p, d, mode);
}

std::optional<LassoWord> find_counterexample(const ParityNpa& p, const DetParityAutomaton& d,
                                             const CheckMode& mode) {
  return check_impl(p, d, mode);
}

}  // namespace paradet

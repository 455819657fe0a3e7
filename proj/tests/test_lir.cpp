#include <random>
#include "doctest.h"
#include "paradet/lir.hpp"
#include "paradet/oracle.hpp"
#include "test_helpers.hpp"

using namespace paradet;
using namespace paradet::testing;

TEST_SUITE_BEGIN("lir");

namespace {

const std::uint32_t S = kStepSymbol;

LirState lir(std::vector<LirTriple> triples) { return LirState{std::move(triples)}; }

OrderedTree tree(std::vector<std::pair<NodePath, StateSet>> entries) {
  OrderedTree t;
  for (auto& [p, l] : entries) {
    t.nodes.push_back(p);
    t.labels.push_back(l);
  }
  t.canonicalise();
  return t;
}

}  // namespace

TEST_CASE("record validation") {
  SUBCASE("singleton base triple") { CHECK(validate_lir(lir({{{0}, 2, {0}}}), 2).ok); }
  SUBCASE("empty hosted set violates condition 2") {
    auto rep = validate_lir(lir({{{0, 1}, 2, {}}, {{1}, 2, {1}}}), 2);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition 2") != std::string::npos);
    CHECK(validate_lir(lir({{{0, 1}, 2, {0}}, {{1}, 2, {1}}}), 2).ok);
  }
  SUBCASE("level-e labels must sit inside the first one when c is even") {
    auto rep = validate_lir(lir({{{0, 1}, 4, {0, 1}}, {{2}, 4, {2}}}), 4);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition 4") != std::string::npos);
  }
  SUBCASE("hosted states must be part of the label") {
    auto rep = validate_lir(lir({{{0}, 2, {1}}}), 2);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition 1") != std::string::npos);
  }
  SUBCASE("lower levels need an earlier host") {
    auto rep = validate_lir(lir({{{0}, 4, {0}}, {{1}, 2, {1}}}), 4);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition 5") != std::string::npos);
    CHECK(validate_lir(lir({{{0, 1}, 4, {0, 1}}, {{0, 1}, 2, {0, 1}}}), 4).ok);
  }
}

TEST_CASE("reconstruction") {
  SUBCASE("c = 2: the record of a history tree rebuilds the same tree") {
    OrderedTree ht = tree({{{}, {0, 1, 2, 3}}, {{0}, {0, 1}}, {{0, 0}, {0}}, {{1}, {2}}});
    LirState rec = lir_of_nht(ht, 2);
    CHECK(validate_lir(rec, 2).ok);
    CHECK(nht_of_lir(rec, 2).tree == ht);
  }
  SUBCASE("c = 3: the omitted Rabin root is re-inserted") {
    LirState rec = lir({{{0}, 2, {0}}, {{1}, 2, {1}}});
    LirTreeView view = nht_of_lir(rec, 3);
    CHECK(view.tree == tree({{{}, {0, 1}}, {{0}, {0}}, {{1}, {1}}}));
    CHECK(view.triple_nodes == std::vector<NodePath>{{0}, {1}});
  }
  SUBCASE("sibling order follows the record order") {
    LirState rec = lir({{{1}, 2, {1}}, {{0}, 2, {0}}});
    LirTreeView view = nht_of_lir(rec, 3);
    CHECK(view.tree == tree({{{}, {0, 1}}, {{0}, {1}}, {{1}, {0}}}));
  }
  SUBCASE("stepchild chains are rebuilt from hosted containment") {
    LirState rec = lir({{{0, 1}, 4, {1}}, {{0}, 4, {0}}, {{1}, 2, {1}}, {{0}, 2, {0}}});
    LirTreeView view = nht_of_lir(rec, 5);
    CHECK(view.tree == tree({{{}, {0, 1}},
                             {{0}, {0, 1}},
                             {{0, 0}, {0}},
                             {{0, 0, S}, {0}},
                             {{0, 0, S, 0}, {0}},
                             {{0, S}, {1}},
                             {{0, S, 0}, {1}}}));
    CHECK(validate_nht(view.tree, 5).ok);
  }
  SUBCASE("invalid records are rejected") {
    CHECK_THROWS_AS(nht_of_lir(lir({{{0, 1}, 2, {}}, {{1}, 2, {1}}}), 2), argument_error);
  }
}

TEST_CASE("round-trip: lir_of_nht then nht_of_lir is the identity") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.n = 1 + seed % 3;
    cfg.c = 1 + seed % 5;
    cfg.alphabet_size = 2;
    cfg.density = 0.5;
    cfg.seed = seed * 3 + 2;
    ParityNpa p = random_npa(cfg);
    normalise_priorities(p);
    NhtDeterminisation det = determinise_parity_to_rabin(p);
    for (const OrderedTree& t : det.tree_states) {
      LirState rec = lir_of_nht(t, p.c);
      auto rep = validate_lir(rec, p.c);
      CHECK_MESSAGE(rep.ok, rep.detail, " for ", t.to_string());
      CHECK(nht_of_lir(rec, p.c).tree == t);
    }
  }
}

TEST_CASE("transition co-priorities") {
  SUBCASE("one-state Buchi with accepting self-loop: position 1 accepting") {
    auto p = make_parity(1, 1, {0}, {{0, 'a', 0, 2}}, 2);
    LirState n = lir({{{0}, 2, {0}}});
    LirStepResult res = lir_step(n, 0, p);
    REQUIRE(res.sink == SinkKind::None);
    CHECK(res.state == n);
    CHECK(res.co_priority == 2);
  }
  SUBCASE("nothing accepting or rejecting: co-priority n*e+1") {
    // two states looping separately on priority 1; the tree is stable and quiet
    auto p = make_parity(2, 1, {0, 1}, {{0, 'a', 0, 1}, {1, 'a', 1, 1}}, 2);
    LirDeterminisation det = determinise_parity_to_dpa(p);
    bool quiet_seen = false;
    for (std::uint32_t co : det.automaton.co_priority)
      if (co == p.n * 2 + 1) quiet_seen = true;
    CHECK(quiet_seen);
  }
  SUBCASE("destroying position 1 gives co-priority 1") {
    auto p = make_parity(1, 2, {0}, {{0, 'a', 0, 2}}, 2);
    LirState n = lir({{{0}, 2, {0}}});
    LirStepResult res = lir_step(n, 1, p);  // letter b: no transitions
    CHECK(res.sink == SinkKind::Reject);
    CHECK(res.co_priority == 1);
  }
  SUBCASE("TOP gives the accepting sink with co-priority 2") {
    auto p = make_parity(1, 1, {0}, {{0, 'a', kTopState, 1}}, 2);
    LirState n = lir({{{0}, 2, {0}}});
    LirStepResult res = lir_step(n, 0, p);
    CHECK(res.sink == SinkKind::Accept);
    CHECK(res.co_priority == 2);
  }
}

TEST_CASE("stable positions keep their relative order and the tree stays in sync") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.n = 1 + seed % 3;
    cfg.c = 1 + seed % 4;
    cfg.alphabet_size = 2;
    cfg.density = 0.5;
    cfg.top_probability = seed % 7 == 0 ? 0.1 : 0.0;
    cfg.seed = seed * 11 + 5;
    ParityNpa p = random_npa(cfg);
    normalise_priorities(p);

    LirDeterminisation det = determinise_parity_to_dpa(p);
    NhtDeterminisation rab = determinise_parity_to_rabin(p);
    std::uint32_t quiet = p.n * p.even_ceiling() + 1;

    // Same input, same words: the LIR's underlying tree must equal the NHT
    // reached by the Rabin construction. Walk the synchronised product.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frontier{{0, 0}};
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen = frontier;
    while (!frontier.empty()) {
      auto [ls, ns] = frontier.back();
      frontier.pop_back();
      bool l_tree = det.automaton.kinds[ls] == DetStateKind::Tree;
      bool n_tree = rab.automaton.kinds[ns] == DetStateKind::Tree;
      REQUIRE(l_tree == n_tree);
      if (l_tree) {
        CHECK(nht_of_lir(det.lir_states[ls], p.c).tree == rab.tree_states[ns]);
        auto rep = validate_lir(det.lir_states[ls], p.c);
        CHECK_MESSAGE(rep.ok, rep.detail);
      }
      for (std::uint32_t a = 0; a < p.letters.size(); ++a) {
        std::uint32_t co = det.automaton.co_priority[det.automaton.transition_id(ls, a)];
        CHECK(co >= 1);
        CHECK(co <= quiet);
        auto next = std::pair{det.automaton.successor(ls, a), rab.automaton.successor(ns, a)};
        if (l_tree && std::find(seen.begin(), seen.end(), next) == seen.end()) {
          seen.push_back(next);
          frontier.push_back(next);
        }
      }
    }

    // order preservation: stepping any reachable record keeps survivors
    // in relative order (they form the prefix, matched by node identity)
    for (const LirState& n : det.lir_states) {
      LirTreeView before = nht_of_lir(n, p.c);
      for (std::uint32_t a = 0; a < p.letters.size(); ++a) {
        LirStepResult res = lir_step(n, a, p);
        if (res.sink != SinkKind::None) continue;
        auto rep = validate_lir(res.state, p.c);
        CHECK_MESSAGE(rep.ok, rep.detail);
      }
    }
  }
}

TEST_CASE("DPA agrees with the oracle and the Rabin route on every lasso") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GenConfig cfg;
    cfg.n = 1 + seed % 3;
    cfg.c = 1 + seed % 4;
    cfg.alphabet_size = 2;
    cfg.density = 0.5;
    cfg.top_probability = seed % 6 == 0 ? 0.1 : 0.0;
    cfg.seed = seed * 13 + 7;
    ParityNpa p = random_npa(cfg);
    LirDeterminisation dpa = determinise_parity_to_dpa(p);
    NhtDeterminisation dra = determinise_parity_to_rabin(p);
    CheckMode mode;
    mode.max_stem = 2;
    mode.max_cycle = 3;
    CHECK_FALSE(find_counterexample(p, dpa.automaton, mode).has_value());
    bool cross_agree = true;
    for_each_lasso(2, 2, 3, [&](const LassoWord& w) {
      if (accepts_lasso(dpa.automaton, w) != accepts_lasso(dra.automaton, w)) {
        cross_agree = false;
        return false;
      }
      return true;
    });
    CHECK(cross_agree);
  }
}

TEST_CASE("deep nesting: high priority bounds against the oracle") {
  // c = 5 and 6 exercise two stepchild levels (and, for odd c, a Rabin root
  // at the top); both routes must still match the oracle everywhere.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig cfg;
    cfg.n = 1 + seed % 3;
    cfg.c = 5 + seed % 2;
    cfg.alphabet_size = 2;
    cfg.density = 0.5;
    cfg.top_probability = seed % 5 == 0 ? 0.1 : 0.0;
    cfg.seed = seed * 101 + 3;
    ParityNpa p = random_npa(cfg);
    NhtDeterminisation dra = determinise_parity_to_rabin(p);
    LirDeterminisation dpa = determinise_parity_to_dpa(p);
    for (const OrderedTree& t : dra.tree_states) {
      auto rep = validate_nht(t, p.c);
      CHECK_MESSAGE(rep.ok, rep.detail);
    }
    CheckMode mode;
    mode.max_stem = 2;
    mode.max_cycle = 3;
    CHECK_FALSE(find_counterexample(p, dra.automaton, mode).has_value());
    CHECK_FALSE(find_counterexample(p, dpa.automaton, mode).has_value());
  }
}

TEST_CASE("spiked classification") {
  CHECK(is_spiked(lir({{{1}, 2, {1}}})));
  CHECK(is_spiked(lir({{{0, 1}, 2, {0}}, {{1}, 2, {1}}})));
  CHECK_FALSE(is_spiked(lir({{{0, 1}, 2, {0, 1}}})));
  CHECK_FALSE(is_spiked(lir({{{0, 1}, 4, {0, 1}}, {{0, 1}, 2, {0, 1}}})));
}

TEST_CASE("mutated records never slip past validation into broken trees") {
  // Random small edits of valid records: whatever still validates must
  // reconstruct into a tree that itself validates and round-trips.
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenConfig cfg;
    cfg.n = 2 + seed % 2;
    cfg.c = 2 + seed % 3;
    cfg.alphabet_size = 2;
    cfg.density = 0.5;
    cfg.seed = seed * 7 + 3;
    ParityNpa p = random_npa(cfg);
    normalise_priorities(p);
    LirDeterminisation det = determinise_parity_to_dpa(p);
    for (const LirState& base : det.lir_states) {
      for (int round = 0; round < 20; ++round) {
        LirState mutated = base;
        std::size_t i = rng() % mutated.triples.size();
        switch (rng() % 5) {
          case 0:  // toggle a state in S
            if (set_contains(mutated.triples[i].states, static_cast<state_t>(rng() % p.n)))
              mutated.triples[i].states =
                  set_minus(mutated.triples[i].states, {static_cast<state_t>(rng() % p.n)});
            else
              set_insert(mutated.triples[i].states, static_cast<state_t>(rng() % p.n));
            break;
          case 1:  // toggle a state in P
            if (set_contains(mutated.triples[i].hosted, static_cast<state_t>(rng() % p.n)))
              mutated.triples[i].hosted =
                  set_minus(mutated.triples[i].hosted, {static_cast<state_t>(rng() % p.n)});
            else
              set_insert(mutated.triples[i].hosted, static_cast<state_t>(rng() % p.n));
            break;
          case 2:  // bump the level
            mutated.triples[i].level += 2;
            break;
          case 3:  // swap two positions
            std::swap(mutated.triples[i], mutated.triples[rng() % mutated.triples.size()]);
            break;
          case 4:  // drop a position
            if (mutated.triples.size() > 1)
              mutated.triples.erase(mutated.triples.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
        if (!validate_lir(mutated, p.c).ok) continue;
        LirTreeView view = nht_of_lir(mutated, p.c);
        auto rep = validate_nht(view.tree, p.c);
        CHECK_MESSAGE(rep.ok, rep.detail, " for mutated ", mutated.to_string());
        CHECK(nht_of_lir(lir_of_nht(view.tree, p.c), p.c).tree == view.tree);
      }
    }
  }
}

TEST_CASE("max-parity export flips and shifts co-priorities") {
  auto p = make_parity(1, 1, {0}, {{0, 'a', 0, 2}}, 2);
  LirDeterminisation det = determinise_parity_to_dpa(p);
  const DetParityAutomaton& d = det.automaton;
  CHECK(d.max_co == 3);  // n=1, e=2
  // min-even co q maps to max-parity n*e+2-q with the same parity
  for (std::uint32_t q = 1; q <= d.max_co; ++q) {
    CHECK(max_parity_priority(d, q) == d.max_co + 1 - q);
    CHECK(max_parity_priority(d, q) % 2 == q % 2);
  }
}

TEST_SUITE_END();

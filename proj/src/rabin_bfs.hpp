// Internal bookkeeping shared by the Rabin-producing determinisers: state
// interning, per-transition accepting/stable name records, sink patching and
// final pair assembly. Tree states occupy the dense id prefix 0..k-1, so a
// caller's tree list is indexed directly by automaton state; sinks, when
// used, get the last one or two ids. The tree mechanics stay in the owning
// modules.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "paradet/automata.hpp"
#include "paradet/errors.hpp"
#include "paradet/history_tree.hpp"
#include "paradet/tree_path.hpp"

namespace paradet::detail {

struct RabinBfs {
  static constexpr std::uint32_t kAccPlaceholder = 0xFFFFFFFEu;
  static constexpr std::uint32_t kRejPlaceholder = 0xFFFFFFFDu;

  std::size_t budget;
  std::uint32_t letter_count;

  std::unordered_map<OrderedTree, std::uint32_t, OrderedTreeHash> index;
  std::vector<OrderedTree> trees;   // state id == index
  std::deque<std::uint32_t> queue;  // pending tree states
  bool use_acc_sink = false;
  bool use_rej_sink = false;

  std::map<NodePath, std::uint32_t> name_ids;
  std::vector<NodePath> names;

  struct Edge {
    std::uint32_t target = 0;  // tree state or sink placeholder
    SinkKind sink = SinkKind::None;
    std::vector<std::uint32_t> acc_names;
    std::vector<std::uint32_t> stable_names;
  };
  std::vector<Edge> edges;  // tree-state-major, letter-minor

  RabinBfs(std::size_t budget_arg, std::uint32_t letters)
      : budget(budget_arg), letter_count(letters) {}

  std::size_t sink_count() const {
    return (use_acc_sink ? 1u : 0u) + (use_rej_sink ? 1u : 0u);
  }

  void check_budget(std::size_t next_total) const {
    if (next_total > budget)
      throw capacity_error(
          "state budget of " + std::to_string(budget) + " canonical states exceeded", budget);
  }

  std::uint32_t add_tree(const OrderedTree& t) {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    check_budget(trees.size() + sink_count() + 1);
    std::uint32_t id = static_cast<std::uint32_t>(trees.size());
    index.emplace(t, id);
    trees.push_back(t);
    edges.resize(trees.size() * static_cast<std::size_t>(letter_count));
    queue.push_back(id);
    return id;
  }

  std::uint32_t sink(SinkKind k) {
    bool& flag = k == SinkKind::Accept ? use_acc_sink : use_rej_sink;
    if (!flag) {
      check_budget(trees.size() + sink_count() + 1);
      flag = true;
    }
    return k == SinkKind::Accept ? kAccPlaceholder : kRejPlaceholder;
  }

  std::uint32_t name_id(const NodePath& p) {
    auto [it, fresh] = name_ids.emplace(p, static_cast<std::uint32_t>(names.size()));
    if (fresh) names.push_back(p);
    return it->second;
  }

  std::vector<std::uint32_t> name_vector(const std::vector<NodePath>& paths) {
    std::vector<std::uint32_t> out;
    out.reserve(paths.size());
    for (const NodePath& p : paths) out.push_back(name_id(p));
    std::sort(out.begin(), out.end());
    return out;
  }

  DetRabinAutomaton finish(const std::vector<std::string>& letter_names) {
    std::uint32_t tree_count = static_cast<std::uint32_t>(trees.size());
    std::uint32_t acc_id = tree_count;
    std::uint32_t rej_id = tree_count + (use_acc_sink ? 1 : 0);

    DetRabinAutomaton aut;
    aut.letters = letter_names;
    aut.initial = 0;
    for (const OrderedTree& t : trees) {
      aut.kinds.push_back(DetStateKind::Tree);
      aut.state_labels.push_back(t.to_string());
    }
    if (use_acc_sink) {
      aut.kinds.push_back(DetStateKind::AcceptSink);
      aut.state_labels.push_back("\xe2\x8a\xa4");
    }
    if (use_rej_sink) {
      aut.kinds.push_back(DetStateKind::RejectSink);
      aut.state_labels.push_back("\xe2\x88\x85");
    }
    // Sinks absorb; append their self-loop edge records.
    for (std::uint32_t s = tree_count; s < aut.kinds.size(); ++s)
      for (std::uint32_t a = 0; a < letter_count; ++a) {
        Edge e;
        e.target = s;
        e.sink = aut.kinds[s] == DetStateKind::AcceptSink ? SinkKind::Accept : SinkKind::Reject;
        edges.push_back(std::move(e));
      }
    aut.delta.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::uint32_t t = edges[i].target;
      aut.delta[i] = t == kAccPlaceholder ? acc_id : t == kRejPlaceholder ? rej_id : t;
    }

    // Pair universe: every node name that is ever accepting; pairs that could
    // never fire are dropped. A transition is in R_j exactly when j is not
    // stable; sink transitions are all-accepting resp. all-rejecting.
    std::vector<char> ever_accepting(names.size(), 0);
    for (const Edge& e : edges)
      for (std::uint32_t nid : e.acc_names) ever_accepting[nid] = 1;
    std::vector<std::uint32_t> universe;
    for (std::uint32_t nid = 0; nid < names.size(); ++nid)
      if (ever_accepting[nid]) universe.push_back(nid);
    std::sort(universe.begin(), universe.end(),
              [&](std::uint32_t a, std::uint32_t b) { return path_less(names[a], names[b]); });

    for (std::uint32_t nid : universe) {
      RabinPair pair;
      pair.name = path_to_string(names[nid]);
      for (std::uint32_t tid = 0; tid < edges.size(); ++tid) {
        const Edge& e = edges[tid];
        if (e.sink == SinkKind::Accept) {
          pair.accepting.push_back(tid);
        } else if (e.sink == SinkKind::Reject) {
          pair.rejecting.push_back(tid);
        } else {
          if (std::binary_search(e.acc_names.begin(), e.acc_names.end(), nid))
            pair.accepting.push_back(tid);
          if (!std::binary_search(e.stable_names.begin(), e.stable_names.end(), nid))
            pair.rejecting.push_back(tid);
        }
      }
      aut.pairs.push_back(std::move(pair));
    }
    // Words reaching TOP must still be accepted when no node name ever is.
    if (aut.pairs.empty() && use_acc_sink) {
      RabinPair pair;
      pair.name = "top";
      for (std::uint32_t tid = 0; tid < edges.size(); ++tid)
        if (edges[tid].sink == SinkKind::Accept) pair.accepting.push_back(tid);
      aut.pairs.push_back(std::move(pair));
    }
    return aut;
  }
};

}  // namespace paradet::detail

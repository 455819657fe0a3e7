#include "paradet/lir.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <unordered_map>

namespace paradet {

std::size_t LirState::hash() const {
  std::size_t h = 14695981039346656037ULL;
  for (const LirTriple& t : triples) {
    h = set_hash(t.states, h);
    h = h * 1099511628211ULL + t.level;
    h = set_hash(t.hosted, h);
  }
  return h;
}

std::string LirState::to_string() const {
  std::string out;
  for (const LirTriple& t : triples) {
    out += '(';
    out += state_set_to_string(t.states);
    out += ',';
    out += std::to_string(t.level);
    out += ',';
    out += state_set_to_string(t.hosted);
    out += ')';
  }
  return out;
}

namespace {

struct Rebuild {
  bool ok = true;
  std::string detail;
  LirTreeView view;

  Rebuild& fail(int condition, std::size_t position, const std::string& what) {
    ok = false;
    detail = "condition " + std::to_string(condition) + " violated at position " +
             std::to_string(position + 1) + ": " + what;
    return *this;
  }
  Rebuild& fail_plain(std::string what) {
    ok = false;
    detail = std::move(what);
    return *this;
  }
};

// Reconstructs the tree while checking conditions 1-5. Same-level labels must
// form a laminar family ordered by introduction; hosted sets are matched
// against what the placed children leave behind.
Rebuild rebuild_tree(const LirState& seq, std::uint32_t c) {
  Rebuild r;
  if (c < 2) return r.fail_plain("priority bound must be at least 2 after normalisation");
  std::uint32_t e = 2 * (c / 2);
  const auto& ts = seq.triples;
  std::size_t k = ts.size();
  if (k == 0) return r.fail_plain("record must be non-empty");

  for (std::size_t i = 0; i < k; ++i) {
    if (ts[i].states.empty()) return r.fail(2, i, "label must be non-empty");
    if (ts[i].level % 2 != 0 || ts[i].level < 2 || ts[i].level > e)
      return r.fail(2, i, "level must be even and within [2, e]");
    if (!set_subset(ts[i].hosted, ts[i].states))
      return r.fail(1, i, "hosted states must be part of the label");
    if (ts[i].hosted.empty())
      return r.fail(ts[i].level == 2 ? 2 : 3, i, "hosted set must be non-empty");
  }
  if (ts[0].level != e) return r.fail(5, 0, "the first position must sit at level e");

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (ts[i].level != ts[j].level) continue;
      if (!sets_intersect(ts[i].states, ts[j].states)) continue;
      if (!(set_subset(ts[j].states, ts[i].states) && ts[j].states != ts[i].states))
        return r.fail(2, j, "same-level labels must nest strictly in introduction order");
    }

  std::map<NodePath, StateSet, decltype(&path_less)> nodes(&path_less);
  std::map<NodePath, std::uint32_t, decltype(&path_less)> natural_count(&path_less);
  std::vector<NodePath> node_of(k);

  bool odd = c % 2 == 1;
  if (odd) nodes.emplace(NodePath{}, StateSet{});  // Rabin root, label filled below

  for (std::size_t i = 0; i < k; ++i) {
    if (!odd && i == 0) {
      nodes.emplace(NodePath{}, ts[0].states);
      node_of[0] = {};
      continue;
    }
    // tightest earlier same-level container
    std::size_t parent = k;
    for (std::size_t j = 0; j < i; ++j) {
      if (ts[j].level != ts[i].level || !set_subset(ts[i].states, ts[j].states)) continue;
      if (parent == k || ts[j].states.size() < ts[parent].states.size()) parent = j;
    }
    NodePath path;
    if (parent != k) {
      path = node_of[parent];
    } else if (ts[i].level == e) {
      if (!odd)
        return r.fail(4, i, "level-e label must be contained in the first position's label");
      // natural child of the omitted root
    } else {
      std::size_t host = k;
      for (std::size_t j = 0; j < i; ++j) {
        if (ts[j].level != ts[i].level + 2 || !set_subset(ts[i].states, ts[j].hosted)) continue;
        if (host != k) return r.fail(3, i, "hosted sets of one level must be disjoint");
        host = j;
      }
      if (host == k) return r.fail(5, i, "no earlier position hosts this label");
      path = node_of[host];
      path.push_back(kStepSymbol);
      if (!nodes.count(path)) nodes.emplace(path, ts[host].hosted);
    }
    std::uint32_t idx = natural_count[path]++;
    path.push_back(idx);
    nodes.emplace(path, ts[i].states);
    node_of[i] = std::move(path);
  }

  LirTreeView view;
  for (auto& [p, l] : nodes) {
    view.tree.nodes.push_back(p);
    view.tree.labels.push_back(l);
  }
  view.tree.canonicalise();
  view.triple_nodes = node_of;

  if (odd) {
    // the omitted root's label is the union of its children's labels
    StateSet root;
    for (std::size_t ci : view.tree.children_of(0)) root = set_union(root, view.tree.labels[ci]);
    view.tree.labels[0] = std::move(root);
  }

  // hosted sets must be exactly what the natural children leave behind,
  // and lower-level positions must cover every hosted set (condition 3)
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t ni = view.tree.find(node_of[i]);
    StateSet naturals;
    for (std::size_t ci : view.tree.children_of(ni))
      if (!is_step_component(view.tree.nodes[ci].back()))
        naturals = set_union(naturals, view.tree.labels[ci]);
    if (set_minus(ts[i].states, naturals) != ts[i].hosted)
      return r.fail(2, i, "hosted set does not match the label left by the children");
    if (ts[i].level > 2) {
      NodePath sc = node_of[i];
      sc.push_back(kStepSymbol);
      std::size_t si = view.tree.find(sc);
      if (si == OrderedTree::npos)
        return r.fail(3, i, "hosted states are not carried by any lower-level position");
      StateSet covered;
      for (std::size_t ci : view.tree.children_of(si))
        covered = set_union(covered, view.tree.labels[ci]);
      if (covered != ts[i].hosted)
        return r.fail(3, i, "lower-level positions do not partition the hosted set");
    }
  }

  ValidationReport tree_rep = validate_nht(view.tree, c);
  if (!tree_rep.ok)
    return r.fail_plain("reconstruction produced an invalid tree: " + tree_rep.detail);
  r.view = std::move(view);
  return r;
}

}  // namespace

ValidationReport validate_lir(const LirState& seq, std::uint32_t c) {
  Rebuild r = rebuild_tree(seq, c);
  ValidationReport rep;
  rep.ok = r.ok;
  rep.detail = r.detail;
  return rep;
}

LirTreeView nht_of_lir(const LirState& seq, std::uint32_t c) {
  Rebuild r = rebuild_tree(seq, c);
  if (!r.ok) throw argument_error("invalid later introduction record: " + r.detail);
  return std::move(r.view);
}

LirState lir_of_nht(const OrderedTree& tree, std::uint32_t c) {
  std::uint32_t e = 2 * (c / 2);
  LirState out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (is_rabin_root(tree.nodes[i], c)) continue;
    LirTriple t;
    t.states = tree.labels[i];
    t.level = level_of(tree.nodes[i], e);
    StateSet naturals;
    for (std::size_t ci : tree.children_of(i))
      if (!is_step_component(tree.nodes[ci].back()))
        naturals = set_union(naturals, tree.labels[ci]);
    t.hosted = set_minus(tree.labels[i], naturals);
    out.triples.push_back(std::move(t));
  }
  return out;
}

LirStepResult lir_step(const LirState& seq, std::uint32_t letter, const ParityNpa& p) {
  if (p.c < 2) throw argument_error("priority bound must be at least 2 after normalisation");
  std::uint32_t e = p.even_ceiling();
  std::uint32_t quiet = p.n * e + 1;
  LirTreeView view = nht_of_lir(seq, p.c);
  TreeStepResult res = nht_step(view.tree, letter, p);

  LirStepResult out;
  out.sink = res.sink;
  if (res.sink == SinkKind::Accept) {
    out.co_priority = 2;
    return out;
  }
  if (res.sink == SinkKind::Reject) {
    out.co_priority = 1;
    return out;
  }

  auto in_sorted = [](const std::vector<NodePath>& v, const NodePath& q) {
    return std::binary_search(v.begin(), v.end(), q, path_less);
  };

  // co-priority: smallest position that is rejecting (not stable) or accepting
  out.co_priority = quiet;
  for (std::size_t i = 0; i < seq.triples.size(); ++i) {
    const NodePath& node = view.triple_nodes[i];
    bool rejecting = !in_sorted(res.stable, node);
    bool accepting = in_sorted(res.accepting, node);
    if (rejecting || accepting) {
      out.co_priority = static_cast<std::uint32_t>(rejecting ? 2 * (i + 1) - 1 : 2 * (i + 1));
      break;
    }
  }

  // surviving positions keep their order on the left; the remaining tree
  // nodes are appended on the right in tree order
  auto triple_at = [&](const NodePath& node) {
    std::size_t ni = res.tree.find(node);
    LirTriple t;
    t.states = res.tree.labels[ni];
    t.level = level_of(node, e);
    StateSet naturals;
    for (std::size_t ci : res.tree.children_of(ni))
      if (!is_step_component(res.tree.nodes[ci].back()))
        naturals = set_union(naturals, res.tree.labels[ci]);
    t.hosted = set_minus(t.states, naturals);
    return t;
  };

  std::vector<NodePath> taken;
  for (std::size_t i = 0; i < seq.triples.size(); ++i) {
    const NodePath& node = view.triple_nodes[i];
    if (!in_sorted(res.stable, node)) continue;
    out.state.triples.push_back(triple_at(node));
    taken.push_back(node);
  }
  std::sort(taken.begin(), taken.end(), path_less);
  for (std::size_t i = 0; i < res.tree.size(); ++i) {
    const NodePath& node = res.tree.nodes[i];
    if (is_rabin_root(node, p.c) || in_sorted(taken, node)) continue;
    out.state.triples.push_back(triple_at(node));
  }
  return out;
}

bool is_spiked(const LirState& seq) {
  if (seq.triples.empty()) return false;
  const LirTriple& last = seq.triples.back();
  return last.level == 2 && last.states.size() == 1 && last.states == last.hosted;
}

std::uint32_t max_parity_priority(const DetParityAutomaton& dpa, std::uint32_t co) {
  return dpa.max_co + 1 - co;
}

namespace {

struct LirBfs {
  static constexpr std::uint32_t kAccPlaceholder = 0xFFFFFFFEu;
  static constexpr std::uint32_t kRejPlaceholder = 0xFFFFFFFDu;

  std::size_t budget;
  std::uint32_t letter_count;
  std::unordered_map<LirState, std::uint32_t, LirStateHash> index;
  std::vector<LirState> states;
  std::deque<std::uint32_t> queue;
  bool use_acc_sink = false;
  bool use_rej_sink = false;
  std::vector<std::uint32_t> targets;
  std::vector<std::uint32_t> cos;

  LirBfs(std::size_t b, std::uint32_t l) : budget(b), letter_count(l) {}

  std::size_t sink_count() const { return (use_acc_sink ? 1u : 0u) + (use_rej_sink ? 1u : 0u); }

  void check_budget(std::size_t next_total) const {
    if (next_total > budget)
      throw capacity_error(
          "state budget of " + std::to_string(budget) + " canonical states exceeded", budget);
  }

  std::uint32_t add_state(const LirState& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    check_budget(states.size() + sink_count() + 1);
    std::uint32_t id = static_cast<std::uint32_t>(states.size());
    index.emplace(s, id);
    states.push_back(s);
    targets.resize(states.size() * static_cast<std::size_t>(letter_count));
    cos.resize(states.size() * static_cast<std::size_t>(letter_count));
    queue.push_back(id);
    return id;
  }

  std::uint32_t sink(SinkKind k) {
    bool& flag = k == SinkKind::Accept ? use_acc_sink : use_rej_sink;
    if (!flag) {
      check_budget(states.size() + sink_count() + 1);
      flag = true;
    }
    return k == SinkKind::Accept ? kAccPlaceholder : kRejPlaceholder;
  }
};

}  // namespace

LirDeterminisation determinise_parity_to_dpa(const ParityNpa& input, std::size_t max_states) {
  ParityNpa p = input;
  normalise_priorities(p);
  validate(p);
  std::uint32_t e = p.even_ceiling();
  std::uint32_t max_co = p.n * e + 1;

  LirBfs bfs(max_states, static_cast<std::uint32_t>(p.letters.size()));
  bfs.add_state(lir_of_nht(initial_nht(p.initial, p.c), p.c));
  while (!bfs.queue.empty()) {
    std::uint32_t state = bfs.queue.front();
    bfs.queue.pop_front();
    LirState lir = bfs.states[state];
    for (std::uint32_t a = 0; a < p.letters.size(); ++a) {
      LirStepResult res = lir_step(lir, a, p);
      assert(res.co_priority >= 1 && res.co_priority <= max_co);
      std::uint32_t target =
          res.sink != SinkKind::None ? bfs.sink(res.sink) : bfs.add_state(res.state);
      std::size_t slot = state * static_cast<std::size_t>(p.letters.size()) + a;
      bfs.targets[slot] = target;
      bfs.cos[slot] = res.co_priority;
    }
  }

  std::uint32_t lir_count = static_cast<std::uint32_t>(bfs.states.size());
  std::uint32_t acc_id = lir_count;
  std::uint32_t rej_id = lir_count + (bfs.use_acc_sink ? 1 : 0);

  LirDeterminisation out;
  DetParityAutomaton& aut = out.automaton;
  aut.letters = p.letters;
  aut.initial = 0;
  aut.max_co = max_co;
  for (const LirState& s : bfs.states) {
    aut.kinds.push_back(DetStateKind::Tree);
    aut.state_labels.push_back(s.to_string());
  }
  if (bfs.use_acc_sink) {
    aut.kinds.push_back(DetStateKind::AcceptSink);
    aut.state_labels.push_back("\xe2\x8a\xa4");
  }
  if (bfs.use_rej_sink) {
    aut.kinds.push_back(DetStateKind::RejectSink);
    aut.state_labels.push_back("\xe2\x88\x85");
  }
  for (std::uint32_t s = lir_count; s < aut.kinds.size(); ++s)
    for (std::uint32_t a = 0; a < p.letters.size(); ++a) {
      bfs.targets.push_back(s);
      bfs.cos.push_back(aut.kinds[s] == DetStateKind::AcceptSink ? 2 : 1);
    }
  aut.delta.resize(bfs.targets.size());
  aut.co_priority = bfs.cos;
  for (std::size_t i = 0; i < bfs.targets.size(); ++i) {
    std::uint32_t t = bfs.targets[i];
    aut.delta[i] = t == LirBfs::kAccPlaceholder    ? acc_id
                   : t == LirBfs::kRejPlaceholder ? rej_id
                                                  : t;
  }
  out.lir_states = std::move(bfs.states);
  return out;
}

}  // namespace paradet

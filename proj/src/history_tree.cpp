#include "paradet/history_tree.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "rabin_bfs.hpp"

namespace paradet {

namespace {

std::string cond_msg(int condition, const NodePath& node, const std::string& what) {
  return "condition " + std::to_string(condition) + " violated at node " + path_to_string(node) +
         ": " + what;
}

// Structural checks shared by history trees and RHTs: canonical order,
// prefix/sibling closure, non-empty labels, containment, disjoint siblings.
ValidationReport validate_tree_common(const OrderedTree& t, bool allow_step) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.detail = std::move(msg);
    return rep;
  };
  if (t.nodes.size() != t.labels.size()) return fail("node and label counts differ");
  if (t.nodes.empty() || !t.nodes[0].empty()) return fail("tree must contain the root");
  for (std::size_t i = 1; i < t.nodes.size(); ++i)
    if (!path_less(t.nodes[i - 1], t.nodes[i]))
      return fail("nodes not in canonical lexicographic order");
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const NodePath& p = t.nodes[i];
    if (!allow_step)
      for (std::uint32_t comp : p)
        if (is_step_component(comp))
          return fail("stepchild symbol not allowed at node " + path_to_string(p));
    if (t.labels[i].empty()) return fail("empty label at node " + path_to_string(p));
    if (p.empty()) continue;
    NodePath parent = path_parent(p);
    std::size_t pi = t.find(parent);
    if (pi == OrderedTree::npos)
      return fail("not prefix closed: missing parent of " + path_to_string(p));
    if (!is_step_component(p.back()) && p.back() > 0) {
      NodePath older = parent;
      older.push_back(p.back() - 1);
      if (t.find(older) == OrderedTree::npos)
        return fail("not order closed: missing older sibling of " + path_to_string(p));
    }
    if (!set_subset(t.labels[i], t.labels[pi]))
      return fail(cond_msg(1, p, "label not contained in the parent's label"));
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    StateSet seen;
    for (std::size_t ci : t.children_of(i)) {
      if (sets_intersect(seen, t.labels[ci]))
        return fail(cond_msg(2, t.nodes[ci], "sibling labels are not disjoint"));
      seen = set_union(seen, t.labels[ci]);
    }
  }
  return rep;
}

StateSet child_label_union(const OrderedTree& t, std::size_t i) {
  StateSet u;
  for (std::size_t ci : t.children_of(i)) u = set_union(u, t.labels[ci]);
  return u;
}

}  // namespace

ValidationReport validate_history_tree(const OrderedTree& t) {
  ValidationReport rep = validate_tree_common(t, false);
  if (!rep.ok) return rep;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    StateSet u = child_label_union(t, i);
    if (u.size() >= t.labels[i].size()) {
      rep.ok = false;
      rep.detail = cond_msg(3, t.nodes[i], "children's labels do not leave a state behind");
      return rep;
    }
  }
  return rep;
}

ValidationReport validate_rht(const OrderedTree& t) {
  ValidationReport rep = validate_tree_common(t, false);
  if (!rep.ok) return rep;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    StateSet u = child_label_union(t, i);
    if (i == 0) {
      if (u != t.labels[0]) {
        rep.ok = false;
        rep.detail = cond_msg(3, t.nodes[0], "root label must equal the union of its children");
        return rep;
      }
    } else if (u.size() >= t.labels[i].size()) {
      rep.ok = false;
      rep.detail = cond_msg(3, t.nodes[i], "children's labels do not leave a state behind");
      return rep;
    }
  }
  return rep;
}

OrderedTree initial_rht(const StateSet& initial) {
  if (initial.empty()) throw argument_error("initial state set must be non-empty");
  OrderedTree t;
  t.nodes = {NodePath{}, NodePath{0}};
  t.labels = {initial, initial};
  return t;
}

namespace {

// Successor sets per state, split by transition class, for one letter.
struct Rabin1LetterView {
  std::vector<StateSet> all;   // every transition
  std::vector<StateSet> keep;  // T \ R
  std::vector<StateSet> acc;   // A
  std::vector<char> to_top;
};

Rabin1LetterView make_letter_view(const OnePairRabinNpa& r1, std::uint32_t letter) {
  Rabin1LetterView v;
  v.all.resize(r1.n);
  v.keep.resize(r1.n);
  v.acc.resize(r1.n);
  v.to_top.assign(r1.n, 0);
  for (std::uint32_t i = 0; i < r1.transitions.size(); ++i) {
    const Transition& t = r1.transitions[i];
    if (t.letter != letter) continue;
    bool in_a = std::binary_search(r1.accepting.begin(), r1.accepting.end(), i);
    bool in_r = std::binary_search(r1.rejecting.begin(), r1.rejecting.end(), i);
    if (t.dst == kTopState) {
      v.to_top[t.src] = 1;
      continue;
    }
    set_insert(v.all[t.src], t.dst);
    if (!in_r) set_insert(v.keep[t.src], t.dst);
    if (in_a) set_insert(v.acc[t.src], t.dst);
  }
  return v;
}

StateSet successors(const std::vector<StateSet>& table, const StateSet& from) {
  StateSet out;
  for (state_t q : from) out = set_union(out, table[q]);
  return out;
}

struct WorkNode {
  NodePath path;
  StateSet l1;
  bool original;
  // filled during the step:
  StateSet l2;
  bool in_te = false;
  bool kept = false;
  NodePath renamed;
};

}  // namespace

TreeStepResult rht_step(const OrderedTree& d, std::uint32_t letter, const OnePairRabinNpa& r1) {
  Rabin1LetterView view = make_letter_view(r1, letter);
  TreeStepResult out;

  // Step 1: subset constructions. The root collects all successors, every
  // other node only those through non-rejecting transitions.
  bool top = false;
  for (state_t q : d.labels[0])
    if (view.to_top[q]) top = true;
  if (top) {
    out.sink = SinkKind::Accept;
    return out;
  }
  StateSet root_new = successors(view.all, d.labels[0]);
  if (root_new.empty()) {
    out.sink = SinkKind::Reject;
    return out;
  }

  std::vector<WorkNode> work;
  work.reserve(d.size() * 2);
  for (std::size_t i = 0; i < d.size(); ++i) {
    WorkNode w;
    w.path = d.nodes[i];
    w.l1 = i == 0 ? root_new : successors(view.keep, d.labels[i]);
    w.original = true;
    work.push_back(std::move(w));
  }
  // Step 2: every node spawns a youngest child; accepting-successor labels
  // below the root, a copy of the fresh root label at the root.
  for (std::size_t i = 0; i < d.size(); ++i) {
    WorkNode w;
    w.path = d.nodes[i];
    w.path.push_back(static_cast<std::uint32_t>(d.children_of(i).size()));
    w.l1 = i == 0 ? root_new : successors(view.acc, d.labels[i]);
    w.original = false;
    work.push_back(std::move(w));
  }
  std::sort(work.begin(), work.end(),
            [](const WorkNode& a, const WorkNode& b) { return path_less(a.path, b.path); });

  std::map<NodePath, std::size_t> at;
  for (std::size_t i = 0; i < work.size(); ++i) at.emplace(work[i].path, i);
  std::vector<std::vector<std::size_t>> kids(work.size());
  for (std::size_t i = 1; i < work.size(); ++i)
    kids[at[path_parent(work[i].path)]].push_back(i);
  for (auto& ks : kids)
    std::sort(ks.begin(), ks.end(),
              [&](std::size_t a, std::size_t b) { return path_less(work[a].path, work[b].path); });

  // Step 3: horizontal pruning. Older siblings claim their states from
  // younger siblings and everything below them.
  {
    std::vector<StateSet> banned(work.size());
    work[0].l2 = work[0].l1;
    for (std::size_t i = 0; i < work.size(); ++i) {
      StateSet claimed = banned[i];
      for (std::size_t ci : kids[i]) {
        banned[ci] = claimed;
        work[ci].l2 = set_minus(work[ci].l1, claimed);
        claimed = set_union(claimed, work[ci].l1);
      }
    }
  }

  // Step 4: breakpoints. A non-root node whose (non-empty) label is covered
  // by its children is accepting; its descendants are cut.
  for (std::size_t i = 1; i < work.size(); ++i) {
    StateSet u;
    for (std::size_t ci : kids[i]) u = set_union(u, work[ci].l2);
    work[i].in_te = !work[i].l2.empty() && u == work[i].l2;
  }

  // Steps 4+5: keep the subtree up to breakpoints, dropping empty nodes.
  auto sweep = [&](auto&& self, std::size_t i) -> void {
    if (work[i].l2.empty()) return;
    work[i].kept = true;
    if (i != 0 && work[i].in_te) {
      out.accepting.push_back(work[i].path);
      return;
    }
    for (std::size_t ci : kids[i]) self(self, ci);
  };
  sweep(sweep, 0);

  // Step 6: reordering. Surviving nodes are renamed by their surviving
  // older-sibling count; a node is stable if it keeps its own name.
  OrderedTree next;
  auto rename = [&](auto&& self, std::size_t i, const NodePath& new_path) -> void {
    work[i].renamed = new_path;
    next.nodes.push_back(new_path);
    next.labels.push_back(work[i].l2);
    if (work[i].original && new_path == work[i].path) out.stable.push_back(work[i].path);
    std::uint32_t index = 0;
    for (std::size_t ci : kids[i]) {
      if (!work[ci].kept) continue;
      NodePath child_path = new_path;
      child_path.push_back(index++);
      self(self, ci, child_path);
    }
  };
  rename(rename, 0, NodePath{});

  next.canonicalise();
  std::sort(out.accepting.begin(), out.accepting.end(), path_less);
  std::sort(out.stable.begin(), out.stable.end(), path_less);
  out.tree = std::move(next);
  assert(std::none_of(out.accepting.begin(), out.accepting.end(),
                      [](const NodePath& p) { return p.empty(); }));
  return out;
}

RhtDeterminisation determinise_one_pair_rabin(const OnePairRabinNpa& r1, std::size_t max_states) {
  validate(r1);
  detail::RabinBfs bfs(max_states, static_cast<std::uint32_t>(r1.letters.size()));
  bfs.add_tree(initial_rht(r1.initial));
  while (!bfs.queue.empty()) {
    std::uint32_t state = bfs.queue.front();
    bfs.queue.pop_front();
    OrderedTree tree = bfs.trees[state];  // trees may reallocate on add_tree
    for (std::uint32_t a = 0; a < r1.letters.size(); ++a) {
      TreeStepResult res = rht_step(tree, a, r1);
      std::uint32_t target =
          res.sink != SinkKind::None ? bfs.sink(res.sink) : bfs.add_tree(res.tree);
      detail::RabinBfs::Edge& e = bfs.edges[state * static_cast<std::size_t>(r1.letters.size()) + a];
      e.sink = res.sink;
      e.target = target;
      if (res.sink == SinkKind::None) {
        e.acc_names = bfs.name_vector(res.accepting);
        e.stable_names = bfs.name_vector(res.stable);
      }
    }
  }

  RhtDeterminisation out;
  out.automaton = bfs.finish(r1.letters);
  out.tree_states = std::move(bfs.trees);
  return out;
}

}  // namespace paradet

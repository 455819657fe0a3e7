#include "paradet/nested_tree.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "rabin_bfs.hpp"

namespace paradet {

std::uint32_t level_of(const NodePath& p, std::uint32_t e) {
  std::uint32_t steps = 0;
  for (std::uint32_t comp : p)
    if (is_step_component(comp)) ++steps;
  return e - 2 * steps;  // validated against underflow by the callers
}

bool is_rabin_root(const NodePath& p, std::uint32_t c) {
  if (p.empty()) return c % 2 == 1;  // root level e < c exactly when c is odd
  return is_step_component(p.back());
}

bool is_base_node(const NodePath& p, std::uint32_t c) {
  std::uint32_t e = 2 * (c / 2);
  return !is_rabin_root(p, c) && level_of(p, e) == 2;
}

namespace {

std::string cond_at(const NodePath& node, const std::string& what) {
  return "violation at node " + path_to_string(node) + ": " + what;
}

}  // namespace

ValidationReport validate_nht(const OrderedTree& t, std::uint32_t c) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.detail = std::move(msg);
    return rep;
  };
  if (c < 2) return fail("priority bound must be at least 2 after normalisation");
  std::uint32_t e = 2 * (c / 2);
  if (t.nodes.size() != t.labels.size()) return fail("node and label counts differ");
  if (t.nodes.empty() || !t.nodes[0].empty()) return fail("tree must contain the root");
  for (std::size_t i = 1; i < t.nodes.size(); ++i)
    if (!path_less(t.nodes[i - 1], t.nodes[i]))
      return fail("nodes not in canonical lexicographic order");

  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const NodePath& p = t.nodes[i];
    std::uint32_t steps = 0;
    for (std::uint32_t comp : p)
      if (is_step_component(comp)) ++steps;
    if (2 * steps + 2 > e) return fail(cond_at(p, "level would drop below 2"));
    if (t.labels[i].empty()) return fail(cond_at(p, "empty label"));
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
    if (is_step_component(p.back()) && is_rabin_root(parent, c))
      return fail(cond_at(p, "Rabin roots cannot have stepchildren"));
    if (!set_subset(t.labels[i], t.labels[pi]))
      return fail(cond_at(p, "label not contained in the parent's label"));
  }

  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const NodePath& p = t.nodes[i];
    std::uint32_t level = level_of(p, e);
    bool rabin_root = is_rabin_root(p, c);
    bool base = !rabin_root && level == 2;

    StateSet child_union;
    bool has_step = false;
    StateSet seen;
    for (std::size_t ci : t.children_of(i)) {
      if (sets_intersect(seen, t.labels[ci]))
        return fail(cond_at(t.nodes[ci], "sibling labels are not disjoint"));
      seen = set_union(seen, t.labels[ci]);
      child_union = set_union(child_union, t.labels[ci]);
      if (is_step_component(t.nodes[ci].back())) has_step = true;
    }
    bool wants_step = !base && !rabin_root;
    if (has_step != wants_step)
      return fail(cond_at(p, wants_step ? "missing stepchild" : "unexpected stepchild"));
    if (base) {
      if (child_union.size() >= t.labels[i].size())
        return fail(cond_at(p, "children's labels do not leave a state behind"));
    } else {
      if (child_union != t.labels[i])
        return fail(cond_at(p, "label must equal the union of its children's labels"));
    }
  }
  return rep;
}

namespace {

// Step 7: grow the mandatory structure below childless nodes: a copy child
// under Rabin roots, a stepchild chain elsewhere, down to base level.
void repair_nestedness(OrderedTree& t, std::uint32_t c) {
  std::vector<std::pair<NodePath, StateSet>> added;
  std::vector<std::pair<NodePath, StateSet>> pending;
  {
    std::vector<char> has_child(t.size(), 0);
    for (std::size_t i = 1; i < t.size(); ++i) has_child[t.find(path_parent(t.nodes[i]))] = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!has_child[i]) pending.emplace_back(t.nodes[i], t.labels[i]);
  }
  while (!pending.empty()) {
    auto [p, label] = std::move(pending.back());
    pending.pop_back();
    NodePath child = p;
    if (is_rabin_root(p, c)) {
      child.push_back(0);
    } else if (!is_base_node(p, c)) {
      child.push_back(kStepSymbol);
    } else {
      continue;
    }
    added.emplace_back(child, label);
    pending.emplace_back(std::move(child), std::move(label));
  }
  for (auto& [p, l] : added) {
    t.nodes.push_back(std::move(p));
    t.labels.push_back(std::move(l));
  }
  t.canonicalise();
}

// Per-letter successor tables split by level: neutral (everything except odd
// priorities above the level) and accepting (even priorities at or above it).
struct ParityLetterView {
  std::vector<StateSet> all;
  std::vector<std::vector<StateSet>> neutral;    // [level/2 - 1][state]
  std::vector<std::vector<StateSet>> accepting;  // [level/2 - 1][state]
  std::vector<char> to_top;
};

ParityLetterView make_letter_view(const ParityNpa& p, std::uint32_t letter) {
  std::uint32_t e = p.even_ceiling();
  ParityLetterView v;
  v.all.resize(p.n);
  v.to_top.assign(p.n, 0);
  v.neutral.assign(e / 2, std::vector<StateSet>(p.n));
  v.accepting.assign(e / 2, std::vector<StateSet>(p.n));
  for (std::uint32_t i = 0; i < p.transitions.size(); ++i) {
    const Transition& t = p.transitions[i];
    if (t.letter != letter) continue;
    if (t.dst == kTopState) {
      v.to_top[t.src] = 1;
      continue;
    }
    set_insert(v.all[t.src], t.dst);
    for (std::uint32_t a = 2; a <= e; a += 2) {
      std::uint32_t h = a / 2 - 1;
      if (!(p.pri[i] > a && p.pri[i] % 2 == 1)) set_insert(v.neutral[h][t.src], t.dst);
      if (p.pri[i] >= a && p.pri[i] % 2 == 0) set_insert(v.accepting[h][t.src], t.dst);
    }
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
  StateSet l2;
  bool in_te = false;
  bool kept = false;
};

}  // namespace

OrderedTree initial_nht(const StateSet& initial, std::uint32_t c) {
  if (initial.empty()) throw argument_error("initial state set must be non-empty");
  if (c < 2) throw argument_error("priority bound must be at least 2 after normalisation");
  OrderedTree t;
  t.nodes = {NodePath{}};
  t.labels = {initial};
  repair_nestedness(t, c);
  return t;
}

TreeStepResult nht_step(const OrderedTree& d, std::uint32_t letter, const ParityNpa& p) {
  std::uint32_t c = p.c;
  std::uint32_t e = p.even_ceiling();
  ParityLetterView view = make_letter_view(p, letter);
  TreeStepResult out;

  // Step 1: subset constructions. The root reads every transition; a Rabin
  // root uses the neutral transitions of its parent's (higher) level; any
  // other node the neutral transitions of its own level.
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

  auto neutral_level = [&](const NodePath& path) {
    std::uint32_t lv = level_of(path, e);
    if (is_rabin_root(path, c) && !path.empty()) lv += 2;
    return lv;
  };

  std::vector<WorkNode> work;
  work.reserve(d.size() * 2);
  for (std::size_t i = 0; i < d.size(); ++i) {
    WorkNode w;
    w.path = d.nodes[i];
    w.l1 = i == 0 ? root_new : successors(view.neutral[neutral_level(w.path) / 2 - 1], d.labels[i]);
    w.original = true;
    work.push_back(std::move(w));
  }
  // Step 2: spawning. Non-Rabin-roots split off their accepting successors,
  // Rabin roots copy their fresh label; the new child becomes the youngest
  // natural sibling either way.
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::uint32_t naturals = 0;
    for (std::size_t ci : d.children_of(i))
      if (!is_step_component(d.nodes[ci].back())) ++naturals;
    WorkNode w;
    w.path = d.nodes[i];
    w.path.push_back(naturals);
    if (is_rabin_root(d.nodes[i], c))
      w.l1 = work[i].l1;
    else
      w.l1 = successors(view.accepting[level_of(d.nodes[i], e) / 2 - 1], d.labels[i]);
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

  // Step 3: horizontal pruning; stepchildren sort last, so they are treated
  // as the youngest sibling regardless of creation order.
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

  // Step 4: breakpoints over natural children only. Rabin roots are exempt
  // (their copy child always covers them); the root participates exactly when
  // it is not a Rabin root, i.e. when c is even.
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (is_rabin_root(work[i].path, c)) continue;
    StateSet u;
    for (std::size_t ci : kids[i])
      if (!is_step_component(work[ci].path.back())) u = set_union(u, work[ci].l2);
    work[i].in_te = !work[i].l2.empty() && u == work[i].l2;
  }

  // Steps 4+5: cut below breakpoints, drop empty nodes.
  auto sweep = [&](auto&& self, std::size_t i) -> void {
    if (work[i].l2.empty()) return;
    work[i].kept = true;
    if (work[i].in_te) {
      out.accepting.push_back(work[i].path);
      return;
    }
    for (std::size_t ci : kids[i]) self(self, ci);
  };
  sweep(sweep, 0);

  // Step 6: reordering. Natural components are renamed by their surviving
  // older-natural-sibling count; stepchild components are fixed points.
  OrderedTree next;
  auto rename = [&](auto&& self, std::size_t i, const NodePath& new_path) -> void {
    next.nodes.push_back(new_path);
    next.labels.push_back(work[i].l2);
    if (work[i].original && new_path == work[i].path) out.stable.push_back(work[i].path);
    std::uint32_t index = 0;
    for (std::size_t ci : kids[i]) {
      if (!work[ci].kept) continue;
      NodePath child_path = new_path;
      if (is_step_component(work[ci].path.back()))
        child_path.push_back(kStepSymbol);
      else
        child_path.push_back(index++);
      self(self, ci, child_path);
    }
  };
  rename(rename, 0, NodePath{});
  next.canonicalise();

  // Step 7: repair nestedness below breakpoints and fresh leaves. The added
  // nodes are neither stable nor accepting in this transition.
  repair_nestedness(next, c);

  std::sort(out.accepting.begin(), out.accepting.end(), path_less);
  std::sort(out.stable.begin(), out.stable.end(), path_less);
  out.tree = std::move(next);
  assert(std::none_of(out.accepting.begin(), out.accepting.end(),
                      [&](const NodePath& q) { return is_rabin_root(q, c); }));
  return out;
}

NhtDeterminisation determinise_parity_to_rabin(const ParityNpa& input, std::size_t max_states) {
  ParityNpa p = input;
  normalise_priorities(p);
  validate(p);
  detail::RabinBfs bfs(max_states, static_cast<std::uint32_t>(p.letters.size()));
  bfs.add_tree(initial_nht(p.initial, p.c));
  while (!bfs.queue.empty()) {
    std::uint32_t state = bfs.queue.front();
    bfs.queue.pop_front();
    OrderedTree tree = bfs.trees[state];
    for (std::uint32_t a = 0; a < p.letters.size(); ++a) {
      TreeStepResult res = nht_step(tree, a, p);
      std::uint32_t target =
          res.sink != SinkKind::None ? bfs.sink(res.sink) : bfs.add_tree(res.tree);
      detail::RabinBfs::Edge& e = bfs.edges[state * static_cast<std::size_t>(p.letters.size()) + a];
      e.sink = res.sink;
      e.target = target;
      if (res.sink == SinkKind::None) {
        e.acc_names = bfs.name_vector(res.accepting);
        e.stable_names = bfs.name_vector(res.stable);
      }
    }
  }
  NhtDeterminisation out;
  out.automaton = bfs.finish(p.letters);
  out.tree_states = std::move(bfs.trees);
  return out;
}

}  // namespace paradet

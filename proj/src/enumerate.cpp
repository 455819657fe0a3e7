#include "paradet/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "paradet/errors.hpp"
#include "paradet/nested_tree.hpp"

namespace paradet {

namespace {

using Mask = std::uint32_t;

StateSet mask_to_set(Mask m) {
  StateSet out;
  for (state_t q = 0; m; ++q, m >>= 1)
    if (m & 1) out.push_back(q);
  return out;
}

// Count tables for history trees with a fixed root label of size s:
//   subtree(s) = trees whose children cover at most s-1 of the s elements,
//   cover(r)   = ordered disjoint non-empty child subtrees covering exactly r.
struct CountTables {
  std::vector<BigUint> subtree;  // index s
  std::vector<BigUint> cover;    // index r

  explicit CountTables(std::uint32_t n) {
    subtree.assign(n + 1, BigUint());
    cover.assign(n + 1, BigUint());
    cover[0] = 1;
    for (std::uint32_t s = 1; s <= n; ++s) {
      BigUint f;
      for (std::uint32_t u = 0; u < s; ++u)
        f += BigUint(BigUint::binomial_u64(s, u)) * cover[u];
      subtree[s] = f;
      BigUint b;
      for (std::uint32_t k = 1; k <= s; ++k)
        b += BigUint(BigUint::binomial_u64(s, k)) * subtree[k] * cover[s - k];
      cover[s] = b;
    }
  }
};

void check_count_bound(std::uint32_t n, const EnumerationBounds& bounds) {
  if (n < 1 || n > bounds.max_count_n)
    throw capacity_error("state count " + std::to_string(n) + " outside the configured bound of " +
                             std::to_string(bounds.max_count_n),
                         bounds.max_count_n);
}

// Depth-first enumeration of NHTs for a given priority bound. Every node
// chooses an ordered sequence of disjoint non-empty natural-child labels;
// base nodes and non-Rabin-roots must leave a remainder (which feeds the
// stepchild below base level), Rabin roots must be covered exactly.
class NhtEnumerator {
 public:
  NhtEnumerator(std::uint32_t c, std::function<void(const OrderedTree&)> visit)
      : c_(c), e_(2 * (c / 2)), visit_(std::move(visit)) {}

  void run_root(Mask root_label) {
    Item root;
    root.path = {};
    root.label = root_label;
    root.level = e_;
    root.rabin_root = c_ % 2 == 1;
    paths_.clear();
    labels_.clear();
    pending_.clear();
    expand_one(root);
  }

 private:
  struct Item {
    NodePath path;
    Mask label;
    std::uint32_t level;
    bool rabin_root;
  };

  std::uint32_t c_, e_;
  std::function<void(const OrderedTree&)> visit_;
  std::vector<NodePath> paths_;
  std::vector<Mask> labels_;
  std::vector<Item> pending_;

  void emit() {
    OrderedTree t;
    t.nodes = paths_;
    t.labels.reserve(labels_.size());
    for (Mask m : labels_) t.labels.push_back(mask_to_set(m));
    t.canonicalise();
    visit_(t);
  }

  void expand_pending() {
    if (pending_.empty()) {
      emit();
      return;
    }
    Item item = std::move(pending_.back());
    pending_.pop_back();
    expand_one(item);
    pending_.push_back(std::move(item));
  }

  void expand_one(const Item& item) {
    paths_.push_back(item.path);
    labels_.push_back(item.label);
    choose_children(item, 0, 0);
    paths_.pop_back();
    labels_.pop_back();
  }

  void choose_children(const Item& item, Mask used, std::uint32_t next_index) {
    // option: stop spawning natural children here
    if (item.rabin_root) {
      if (used == item.label) expand_pending();
    } else if (used != item.label) {
      if (item.level == 2) {
        expand_pending();
      } else {
        Item step;
        step.path = item.path;
        step.path.push_back(kStepSymbol);
        step.label = item.label & ~used;
        step.level = item.level - 2;
        step.rabin_root = true;
        pending_.push_back(std::move(step));
        expand_pending();
        pending_.pop_back();
      }
    }
    // option: add one more natural child over a non-empty free submask
    Mask avail = item.label & ~used;
    for (Mask child = avail; child; child = (child - 1) & avail) {
      Item ci;
      ci.path = item.path;
      ci.path.push_back(next_index);
      ci.label = child;
      ci.level = item.level;
      ci.rabin_root = false;
      pending_.push_back(std::move(ci));
      choose_children(item, used | child, next_index + 1);
      pending_.pop_back();
    }
  }
};

void for_each_root_subset(std::uint32_t n, bool proper_only,
                          const std::function<void(Mask)>& visit) {
  Mask full = (n >= 32 ? 0xFFFFFFFFu : (1u << n) - 1);
  for (Mask s = 1; s <= full; ++s)
    if (!proper_only || s != full) visit(s);
}

// Introduction orders of a tree: linear extensions of the partial order
// "after the nearest non-Rabin-root ancestor and the previous natural
// sibling", over the non-Rabin-root nodes.
void for_each_introduction_order(const OrderedTree& t, std::uint32_t c,
                                 const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> members;  // tree indices of non-Rabin-root nodes
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!is_rabin_root(t.nodes[i], c)) members.push_back(i);
  std::size_t k = members.size();
  std::vector<std::size_t> member_index(t.size(), static_cast<std::size_t>(-1));
  for (std::size_t m = 0; m < k; ++m) member_index[members[m]] = m;

  std::vector<std::vector<std::size_t>> preds(k);
  for (std::size_t m = 0; m < k; ++m) {
    NodePath p = t.nodes[members[m]];
    if (!p.empty() && !is_step_component(p.back()) && p.back() > 0) {
      NodePath older = p;
      --older.back();
      preds[m].push_back(member_index[t.find(older)]);
    }
    while (!p.empty()) {
      p = path_parent(p);
      std::size_t i = t.find(p);
      if (!is_rabin_root(t.nodes[i], c)) {
        preds[m].push_back(member_index[i]);
        break;
      }
    }
  }

  std::vector<char> placed(k, 0);
  std::vector<std::size_t> order;
  auto rec = [&](auto&& self) -> void {
    if (order.size() == k) {
      visit(order);
      return;
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (placed[m]) continue;
      bool ready = true;
      for (std::size_t q : preds[m])
        if (!placed[q]) ready = false;
      if (!ready) continue;
      placed[m] = 1;
      order.push_back(members[m]);
      self(self);
      order.pop_back();
      placed[m] = 0;
    }
  };
  rec(rec);
}

LirState record_of_order(const OrderedTree& t, std::uint32_t c,
                         const std::vector<std::size_t>& order) {
  std::uint32_t e = 2 * (c / 2);
  LirState out;
  for (std::size_t i : order) {
    LirTriple triple;
    triple.states = t.labels[i];
    triple.level = level_of(t.nodes[i], e);
    StateSet naturals;
    for (std::size_t ci : t.children_of(i))
      if (!is_step_component(t.nodes[ci].back()))
        naturals = set_union(naturals, t.labels[ci]);
    triple.hosted = set_minus(t.labels[i], naturals);
    out.triples.push_back(std::move(triple));
  }
  return out;
}

}  // namespace

BigUint count_history_trees(std::uint32_t n, const EnumerationBounds& bounds) {
  check_count_bound(n, bounds);
  CountTables tables(n);
  BigUint out;
  for (std::uint32_t s = 1; s <= n; ++s)
    out += BigUint(BigUint::binomial_u64(n, s)) * tables.subtree[s];
  return out;
}

BigUint count_rhts(std::uint32_t n, const EnumerationBounds& bounds) {
  check_count_bound(n, bounds);
  CountTables tables(n);
  BigUint out;
  for (std::uint32_t s = 1; s <= n; ++s)
    out += BigUint(BigUint::binomial_u64(n, s)) * tables.cover[s];
  return out;
}

void enumerate_history_trees(std::uint32_t n, const std::function<void(const OrderedTree&)>& visit,
                             const EnumerationBounds& bounds) {
  if (n < 1 || n > bounds.max_enum_n)
    throw capacity_error("state count outside the enumeration bound", bounds.max_enum_n);
  NhtEnumerator gen(2, visit);  // c = 2: every node is a base node
  for_each_root_subset(n, false, [&](Mask root) { gen.run_root(root); });
}

void enumerate_rhts(std::uint32_t n, const std::function<void(const OrderedTree&)>& visit,
                    const EnumerationBounds& bounds) {
  if (n < 1 || n > bounds.max_enum_n)
    throw capacity_error("state count outside the enumeration bound", bounds.max_enum_n);
  NhtEnumerator gen(3, visit);  // c = 3: root is a Rabin root over base nodes
  for_each_root_subset(n, false, [&](Mask root) { gen.run_root(root); });
}

BigUint count_lir_pairs(std::uint32_t n, std::uint32_t m, bool root_full,
                        const EnumerationBounds& bounds) {
  if (n < 1 || n > bounds.max_enum_n)
    throw capacity_error("state count outside the enumeration bound", bounds.max_enum_n);
  if (m < 1 || m > n + 1) throw argument_error("node count must lie in [1, n+1]");
  BigUint total;
  NhtEnumerator gen(3, [&](const OrderedTree& t) {
    if (t.size() != m) return;
    for_each_introduction_order(t, 3,
                                [&](const std::vector<std::size_t>&) { total += BigUint(1); });
  });
  Mask full = (1u << n) - 1;
  if (root_full) {
    gen.run_root(full);
  } else {
    for_each_root_subset(n, true, [&](Mask root) { gen.run_root(root); });
  }
  return total;
}

CountReport count_lir_nht_states(std::uint32_t n, std::uint32_t c,
                                 const EnumerationBounds& bounds) {
  BigUint total, spiked, unspiked;
  enumerate_lir_nht_states(
      n, c,
      [&](const LirState& s) {
        total += BigUint(1);
        if (is_spiked(s))
          spiked += BigUint(1);
        else
          unspiked += BigUint(1);
      },
      bounds);
  CountReport rep;
  rep.kind = "lir-states";
  rep.n = n;
  rep.c = c;
  rep.counts = {{"states", total}, {"spiked", spiked}, {"unspiked", unspiked}};
  return rep;
}

void enumerate_lir_nht_states(std::uint32_t n, std::uint32_t c,
                              const std::function<void(const LirState&)>& visit,
                              const EnumerationBounds& bounds) {
  if (n < 1 || n > bounds.max_lir_n)
    throw capacity_error("state count outside the record enumeration bound", bounds.max_lir_n);
  if (c < 2 || c > bounds.max_lir_c)
    throw capacity_error("priority bound outside the record enumeration bound", bounds.max_lir_c);
  NhtEnumerator gen(c, [&](const OrderedTree& t) {
    for_each_introduction_order(
        t, c, [&](const std::vector<std::size_t>& order) { visit(record_of_order(t, c, order)); });
  });
  for_each_root_subset(n, false, [&](Mask root) { gen.run_root(root); });
}

GrowthReport growth_report(std::uint32_t max_n, const EnumerationBounds& bounds) {
  check_count_bound(max_n, bounds);
  GrowthReport rep;
  double prev = 0.0;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    GrowthRow row;
    row.n = n;
    row.count = count_history_trees(n, bounds);
    row.ratio = std::pow(row.count.to_double(), 1.0 / n) / n;
    if (n > 1 && row.ratio < prev - 1e-12)
      rep.flags.push_back("ratio decreases at n = " + std::to_string(n));
    if (row.ratio > 1.65 * 1.5)
      rep.flags.push_back("ratio above the sanity band at n = " + std::to_string(n));
    prev = row.ratio;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace paradet

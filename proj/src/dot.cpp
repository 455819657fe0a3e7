#include "paradet/dot.hpp"

#include <algorithm>
#include <functional>

namespace paradet {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string header() {
  return "digraph automaton {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n"
         "  init [shape=point];\n";
}

void emit_init(std::string& out, const StateSet& initial) {
  for (state_t q : initial) out += "  init -> s" + std::to_string(q) + ";\n";
}

void emit_nondet_edges(std::string& out, const NondetAutomaton& a,
                       const std::function<std::string(std::uint32_t)>& annot) {
  std::uint32_t top_id = a.n;
  bool has_top = false;
  for (std::uint32_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    std::uint32_t dst = t.dst == kTopState ? top_id : t.dst;
    if (t.dst == kTopState) has_top = true;
    out += "  s" + std::to_string(t.src) + " -> s" + std::to_string(dst) + " [label=\"" +
           escape(a.letters[t.letter]) + annot(i) + "\"];\n";
  }
  if (has_top) out += "  s" + std::to_string(top_id) + " [label=\"\xe2\x8a\xa4\"];\n";
}

}  // namespace

std::string export_dot(const ParityNpa& p) {
  std::string out = header();
  for (std::uint32_t s = 0; s < p.n; ++s)
    out += "  s" + std::to_string(s) + " [label=\"" + std::to_string(s) + "\"];\n";
  emit_init(out, p.initial);
  emit_nondet_edges(out, p, [&](std::uint32_t i) { return " {" + std::to_string(p.pri[i]) + "}"; });
  out += "}\n";
  return out;
}

std::string export_dot(const OnePairRabinNpa& r) {
  std::string out = header();
  for (std::uint32_t s = 0; s < r.n; ++s)
    out += "  s" + std::to_string(s) + " [label=\"" + std::to_string(s) + "\"];\n";
  emit_init(out, r.initial);
  emit_nondet_edges(out, r, [&](std::uint32_t i) -> std::string {
    std::string annot;
    if (std::binary_search(r.accepting.begin(), r.accepting.end(), i)) annot += " A";
    if (std::binary_search(r.rejecting.begin(), r.rejecting.end(), i)) annot += " R";
    return annot;
  });
  out += "}\n";
  return out;
}

namespace {

void emit_det(std::string& out, const DetAutomaton& d,
              const std::function<std::string(std::uint32_t)>& annot) {
  for (std::uint32_t s = 0; s < d.state_count(); ++s) {
    std::string label = d.state_labels[s].empty() ? std::to_string(s) : d.state_labels[s];
    out += "  s" + std::to_string(s) + " [label=\"" + escape(label) + "\"];\n";
  }
  out += "  init -> s" + std::to_string(d.initial) + ";\n";
  for (std::uint32_t s = 0; s < d.state_count(); ++s)
    for (std::uint32_t a = 0; a < d.letters.size(); ++a) {
      std::uint32_t tid = d.transition_id(s, a);
      out += "  s" + std::to_string(s) + " -> s" + std::to_string(d.delta[tid]) + " [label=\"" +
             escape(d.letters[a]) + annot(tid) + "\"];\n";
    }
}

}  // namespace

std::string export_dot(const DetRabinAutomaton& d) {
  std::vector<std::vector<std::uint32_t>> marks(d.delta.size());
  for (std::size_t j = 0; j < d.pairs.size(); ++j) {
    for (std::uint32_t tid : d.pairs[j].rejecting)
      marks[tid].push_back(static_cast<std::uint32_t>(2 * j));
    for (std::uint32_t tid : d.pairs[j].accepting)
      marks[tid].push_back(static_cast<std::uint32_t>(2 * j + 1));
  }
  for (auto& m : marks) std::sort(m.begin(), m.end());
  std::string out = header();
  emit_det(out, d, [&](std::uint32_t tid) {
    if (marks[tid].empty()) return std::string();
    std::string annot = " {";
    for (std::size_t i = 0; i < marks[tid].size(); ++i) {
      if (i) annot += ' ';
      annot += std::to_string(marks[tid][i]);
    }
    return annot + "}";
  });
  out += "}\n";
  return out;
}

std::string export_dot(const DetParityAutomaton& d) {
  std::string out = header();
  emit_det(out, d,
           [&](std::uint32_t tid) { return " {" + std::to_string(d.co_priority[tid]) + "}"; });
  out += "}\n";
  return out;
}

std::string export_dot(const OrderedTree& t) {
  std::string out = "digraph tree {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + escape(path_to_string(t.nodes[i])) + ":" +
           escape(state_set_to_string(t.labels[i])) + "\"];\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t ci : t.children_of(i))
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(ci) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace paradet

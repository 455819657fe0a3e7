#include "paradet/tree_path.hpp"

#include <algorithm>
#include <numeric>

namespace paradet {

std::string path_to_string(const NodePath& p) {
  if (p.empty()) return "\xce\xb5";  // ε
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    if (is_step_component(p[i]))
      out += 's';
    else
      out += std::to_string(p[i]);
  }
  return out;
}

std::string state_set_to_string(const StateSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  out += '}';
  return out;
}

bool path_less(const NodePath& a, const NodePath& b) {
  // kStepSymbol is the largest uint32 value, so plain comparison already puts
  // stepchildren last among siblings.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t OrderedTree::find(const NodePath& p) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), p, path_less);
  if (it != nodes.end() && *it == p) return static_cast<std::size_t>(it - nodes.begin());
  return npos;
}

std::vector<std::size_t> OrderedTree::children_of(std::size_t i) const {
  std::vector<std::size_t> out;
  const NodePath& parent = nodes[i];
  for (std::size_t j = i + 1; j < nodes.size(); ++j) {
    if (!path_is_prefix(parent, nodes[j])) break;
    if (nodes[j].size() == parent.size() + 1) out.push_back(j);
  }
  return out;
}

std::size_t OrderedTree::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::uint32_t c : nodes[i]) h = h * 1099511628211ULL + c + 1;
    h = h * 1099511628211ULL + 0x517cc1b7;
    h = set_hash(labels[i], h);
  }
  return h;
}

std::string OrderedTree::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ' ';
    out += path_to_string(nodes[i]);
    out += ':';
    out += state_set_to_string(labels[i]);
  }
  return out;
}

void OrderedTree::canonicalise() {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return path_less(nodes[a], nodes[b]); });
  std::vector<NodePath> sorted_nodes(nodes.size());
  std::vector<StateSet> sorted_labels(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_nodes[i] = std::move(nodes[order[i]]);
    sorted_labels[i] = std::move(labels[order[i]]);
  }
  nodes = std::move(sorted_nodes);
  labels = std::move(sorted_labels);
}

}  // namespace paradet

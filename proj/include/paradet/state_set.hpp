// Sorted-vector state sets. Small, canonical, cheap to hash.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace paradet {

using state_t = std::uint32_t;
using StateSet = std::vector<state_t>;  // strictly increasing

inline bool set_contains(const StateSet& s, state_t q) {
  return std::binary_search(s.begin(), s.end(), q);
}

inline void set_insert(StateSet& s, state_t q) {
  auto it = std::lower_bound(s.begin(), s.end(), q);
  if (it == s.end() || *it != q) s.insert(it, q);
}

inline StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline StateSet set_minus(const StateSet& a, const StateSet& b) {
  StateSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline StateSet set_intersect(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool sets_intersect(const StateSet& a, const StateSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

inline bool set_subset(const StateSet& a, const StateSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::size_t set_hash(const StateSet& s, std::size_t seed = 0) {
  for (state_t q : s) seed = seed * 1099511628211ULL + q + 0x9e3779b9;
  return seed;
}

}  // namespace paradet

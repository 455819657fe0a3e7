// Exhaustive enumeration and exact counting of history trees, RHTs, NHTs and
// LIR-NHT states over small state counts. Counts come from closed recurrences
// over set sizes; enumerators generate explicit structures; validators check
// the enumerators and vice versa.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paradet/bigint.hpp"
#include "paradet/lir.hpp"
#include "paradet/tree_path.hpp"

namespace paradet {

struct EnumerationBounds {
  std::uint32_t max_count_n = 12;  // recurrence-based counts
  std::uint32_t max_enum_n = 6;    // explicit structure enumeration
  std::uint32_t max_lir_n = 5;
  std::uint32_t max_lir_c = 6;
};

struct CountReport {
  std::string kind;
  std::uint32_t n = 0;
  std::optional<std::uint32_t> c;
  std::vector<std::pair<std::string, BigUint>> counts;  // ordered
};

// Number of history trees / root history trees over an n-state set, any
// non-empty root label.
BigUint count_history_trees(std::uint32_t n, const EnumerationBounds& bounds = {});
BigUint count_rhts(std::uint32_t n, const EnumerationBounds& bounds = {});

// Iterator variants: every yielded tree is valid by construction; canonical
// deterministic order.
void enumerate_history_trees(std::uint32_t n, const std::function<void(const OrderedTree&)>& visit,
                             const EnumerationBounds& bounds = {});
void enumerate_rhts(std::uint32_t n, const std::function<void(const OrderedTree&)>& visit,
                    const EnumerationBounds& bounds = {});

// RHT/introduction-record pairs with exactly m nodes; root label the full
// n-set (root_full) or any proper non-empty subset.
BigUint count_lir_pairs(std::uint32_t n, std::uint32_t m, bool root_full,
                        const EnumerationBounds& bounds = {});

// All LIR-NHT states over n states for priority bound c, with the
// spiked/unspiked breakdown.
CountReport count_lir_nht_states(std::uint32_t n, std::uint32_t c,
                                 const EnumerationBounds& bounds = {});
void enumerate_lir_nht_states(std::uint32_t n, std::uint32_t c,
                              const std::function<void(const LirState&)>& visit,
                              const EnumerationBounds& bounds = {});

struct GrowthRow {
  std::uint32_t n;
  BigUint count;
  double ratio;  // count^(1/n) / n
};
struct GrowthReport {
  std::vector<GrowthRow> rows;
  std::vector<std::string> flags;  // non-monotone or out-of-band rows, for inspection
};
GrowthReport growth_report(std::uint32_t max_n, const EnumerationBounds& bounds = {});

}  // namespace paradet

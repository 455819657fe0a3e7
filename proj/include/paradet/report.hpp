// Structured output: line-delimited JSON records with a versioned schema tag,
// plain tables for the terminal, and the letters-file format for the full
// automaton.
#pragma once

#include <string>
#include <vector>

#include "paradet/automata.hpp"
#include "paradet/enumerate.hpp"
#include "paradet/full_automaton.hpp"

namespace paradet {

inline constexpr const char* kReportSchema = "paradet-report-v1";

std::string count_report_to_json(const CountReport& rep);
std::string count_report_to_table(const CountReport& rep);
std::string growth_report_to_json(const GrowthReport& rep);
std::string growth_report_to_table(const GrowthReport& rep);
std::string counterexample_to_json(const LassoWord& w, const std::vector<std::string>& letters);

// A letters file is a JSON array of sparse letters; each cell is a
// [source, target, [priorities...]] triple, with "top" as the target for
// immediate acceptance.
std::string letters_to_json(const std::vector<FullLetter>& letters);
std::vector<FullLetter> letters_from_json(const std::string& text, std::uint32_t n,
                                          std::uint32_t c);

}  // namespace paradet

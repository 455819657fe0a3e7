// HOA v1 ingestion and emission. Two alphabet conventions are understood:
// the "alphabet:" extension header names letters directly (body labels are
// letter indices), and atomic-proposition headers give letters as minterms
// (capped at 256). Automata with TOP transitions materialise the sink as an
// extra all-accepting state recorded in a "top-state:" header, so files stay
// readable for ordinary HOA tools.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paradet/automata.hpp"

namespace paradet {

enum class HoaAcceptance : std::uint8_t {
  Buchi,
  ParityMinEven,
  ParityMinOdd,
  ParityMaxEven,
  ParityMaxOdd,
  Rabin,
};

struct ParsedHoa {
  std::uint32_t states = 0;
  std::vector<std::string> letters;
  StateSet start;
  HoaAcceptance acceptance = HoaAcceptance::Buchi;
  std::uint32_t set_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rabin_pairs;  // (fin, inf) set ids
  std::optional<state_t> top_state;
  std::vector<std::string> state_names;
  std::vector<std::string> pair_names;

  struct Edge {
    std::uint32_t src;
    std::uint32_t letter;
    std::uint32_t dst;
    std::vector<std::uint32_t> marks;
  };
  std::vector<Edge> edges;
};

// Throws parse_error (malformed text) or unsupported_error (recognised but
// out-of-scope acceptance, e.g. Streett).
ParsedHoa parse_hoa(std::string_view text);

// Typed views of a parsed document; each validates and converts.
ParityNpa to_parity_npa(const ParsedHoa& doc);
OnePairRabinNpa to_one_pair_rabin(const ParsedHoa& doc);
DetRabinAutomaton to_det_rabin(const ParsedHoa& doc);
DetParityAutomaton to_det_parity(const ParsedHoa& doc);

enum class ParityStyle : std::uint8_t { MinEven, MaxEven };

std::string print_hoa(const ParityNpa& p);
std::string print_hoa(const OnePairRabinNpa& r);
std::string print_hoa(const DetRabinAutomaton& d);
std::string print_hoa(const DetParityAutomaton& d, ParityStyle style = ParityStyle::MinEven);

}  // namespace paradet

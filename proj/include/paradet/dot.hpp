// Graphviz text export for automata and single tree states.
#pragma once

#include <string>

#include "paradet/automata.hpp"
#include "paradet/tree_path.hpp"

namespace paradet {

std::string export_dot(const ParityNpa& p);
std::string export_dot(const OnePairRabinNpa& r);
std::string export_dot(const DetRabinAutomaton& d);
std::string export_dot(const DetParityAutomaton& d);

// Renders one tree state with its node/label structure.
std::string export_dot(const OrderedTree& t);

}  // namespace paradet

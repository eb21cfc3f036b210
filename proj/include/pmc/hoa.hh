#ifndef PMC_HOA_HH
#define PMC_HOA_HH

#include <string>
#include <variant>

#include "pmc/automaton.hh"

namespace pmc {

// Parses a HOA v1 automaton with transition-based acceptance. Supported
// acceptance names: Buchi, generalized-Buchi, Rabin, parity min even.
// Rabin and parity inputs must be deterministic. State-based acceptance,
// implicit edges, alternation, and other acceptance kinds are rejected with
// an InputError carrying line/column information.
std::variant<Ngba, DetAutomaton> hoa_parse(const std::string& text);

std::string hoa_emit(const Ngba& automaton);
std::string hoa_emit(const DetAutomaton& automaton);

}  // namespace pmc

#endif

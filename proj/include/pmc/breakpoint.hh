#ifndef PMC_BREAKPOINT_HH
#define PMC_BREAKPOINT_HH

#include <optional>
#include <vector>

#include "pmc/automaton.hh"

namespace pmc {

// Breakpoint state (R, j, C): reached states R, active accepting index j
// (0-based here, [k] in the usual notation), and the commitment set C of
// states on accepting ancestry, with C strictly contained in R.
struct BreakpointState {
    Bitset reached;     // R, non-empty
    int index;          // j in [0, k)
    Bitset commitment;  // C ⊊ R

    bool operator==(const BreakpointState&) const = default;
};

struct BreakpointStateHash {
    std::size_t operator()(const BreakpointState& s) const {
        return s.reached.hash() * 31 + s.commitment.hash() * 7 +
               static_cast<std::size_t>(s.index);
    }
};

struct BreakpointStep {
    BreakpointState state;
    bool accepting;  // the breakpoint fired: C caught up with R
    bool rejecting;  // the commitment died: T(C, σ) is empty
};

// One deterministic step of the breakpoint construction, or nullopt when
// R has no successors (blocked). Accepting steps advance j cyclically and
// reset C; rejecting flags only non-accepting steps whose carried commitment
// has no successor.
std::optional<BreakpointStep> bp_successor(const BreakpointState& state,
                                           Symbol symbol, const Ngba& automaton);

// Reachable fragment of the breakpoint construction from `init`. Accepting
// and rejecting flags on the edges serve both readings: the
// under-approximation uses the single pair (accepting, ∅) and the
// over-approximation adds the pair (all transitions, rejecting).
class BreakpointAutomaton {
public:
    struct Edge {
        Symbol symbol;
        int dst;
        bool accepting;
        bool rejecting;
    };

    const Alphabet& alphabet() const { return alphabet_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    int initial() const { return 0; }
    const BreakpointState& state(int id) const { return states_[id]; }
    const std::vector<Edge>& edges(int id) const { return edges_[id]; }
    const Edge* edge(int id, Symbol symbol) const;
    int find_state(const BreakpointState& s) const;

    // Rabin view: pair 0 is (accepting, ∅); with `over` a second pair
    // (all, rejecting) is added.
    DetAutomaton as_deterministic(bool over) const;

    friend BreakpointAutomaton build_breakpoint(const Ngba& automaton,
                                                const BreakpointState& init);

private:
    Alphabet alphabet_;
    std::vector<BreakpointState> states_;
    std::vector<std::vector<Edge>> edges_;
};

BreakpointAutomaton build_breakpoint(const Ngba& automaton,
                                     const BreakpointState& init);

// Default initial breakpoint state (I, 1, ∅).
BreakpointState initial_breakpoint(const Ngba& automaton);

// Breakpoint state ({q}, 1, ∅).
BreakpointState singleton_breakpoint(const Ngba& automaton, int q);

}  // namespace pmc

#endif

#ifndef PMC_SEMIDET_HH
#define PMC_SEMIDET_HH

#include <optional>
#include <unordered_map>
#include <vector>

#include "pmc/breakpoint.hh"
#include "pmc/subset.hh"

namespace pmc {

// Semi-determinization of an NGBA: a deterministic initial part (the subset
// construction, accepting nothing), a deterministic final part (the
// breakpoint construction, accepting on breakpoints), and nondeterministic
// transit transitions from R to any (R', j', C') with R' ⊆ T(R, σ).
//
// The final part is exponential, so breakpoint states are interned lazily:
// only transit targets that are actually queried, and their successors, get
// materialized. The transit relation itself stays a predicate.
class SemiDetAutomaton {
public:
    explicit SemiDetAutomaton(Ngba automaton);

    const Ngba& ngba() const { return automaton_; }
    const Alphabet& alphabet() const { return automaton_.alphabet(); }
    int k() const { return automaton_.acc_count(); }

    const SubsetAutomaton& initial_part() const { return initial_part_; }

    // Size of the full final part bp(Q, k): k * (3^n - 2^n).
    long long final_part_size() const;

    // --- final part, grown on demand -------------------------------------
    int bp_id(const BreakpointState& state);
    const BreakpointState& bp_state(int id) const { return bp_states_[id]; }
    int materialized_bp_count() const { return static_cast<int>(bp_states_.size()); }

    struct BpEdge {
        int dst;
        bool accepting;
    };
    std::optional<BpEdge> bp_step(int id, Symbol symbol);

    // --- transit transitions ---------------------------------------------
    bool transit(int subset_id, Symbol symbol, const BreakpointState& target) const;

    // All transit targets of (subset state, symbol) in canonical order
    // (reached set, then index, then commitment, each compared numerically).
    const std::vector<int>& transit_targets(int subset_id, Symbol symbol);

private:
    Ngba automaton_;
    SubsetAutomaton initial_part_;
    std::vector<BreakpointState> bp_states_;
    std::vector<std::vector<std::optional<BpEdge>>> bp_edges_;  // per state, per symbol
    std::vector<std::vector<char>> bp_edge_known_;
    std::unordered_map<BreakpointState, int, BreakpointStateHash> bp_ids_;
    // memoized transit enumerations, keyed by (subset state, symbol)
    std::unordered_map<long long, std::vector<int>> transit_cache_;
};

// State of the parity determinization: the subset part (or blank) plus an
// ordered injective assignment of slots to breakpoint states.
struct ParityState {
    int subset = -1;         // subset-part state id, -1 = blank
    std::vector<int> slots;  // breakpoint state ids, duplicate-free

    bool operator==(const ParityState&) const = default;
};

struct ParityStateHash {
    std::size_t operator()(const ParityState& s) const {
        std::size_t h = static_cast<std::size_t>(s.subset) + 0x9e37;
        for (int v : s.slots)
            h = h * 1000003 + static_cast<std::size_t>(v);
        return h;
    }
};

struct ParityStep {
    ParityState state;
    int priority;
};

// One transition of the parity determinization of the SDBA: advance the
// subset part and every slot, find the best accepting slot (a) and the best
// vacated slot (d), compact, and append the transit targets of the old
// subset state in canonical order. Priority is 2d-1 when d <= a, else 2a.
ParityStep parity_step(SemiDetAutomaton& sd, const ParityState& state, Symbol symbol);

// Initial parity state: the subset initial state with no slots.
ParityState parity_initial(const SemiDetAutomaton& sd);

// Full reachable parity automaton; throws when max_states is exceeded.
DetAutomaton determinize_parity(SemiDetAutomaton& sd, int max_states = 200000);

// Membership oracles used by the language-equality tests.
bool lasso_member_semidet(SemiDetAutomaton& sd, const LassoWord& word);
bool lasso_member_parity_of_semidet(SemiDetAutomaton& sd, const LassoWord& word);

}  // namespace pmc

#endif

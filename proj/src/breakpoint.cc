#include "pmc/breakpoint.hh"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "pmc/error.hh"

namespace pmc {

std::optional<BreakpointStep> bp_successor(const BreakpointState& state,
                                           Symbol symbol, const Ngba& automaton) {
    assert(state.commitment.is_subset_of(state.reached) &&
           state.commitment != state.reached);
    Bitset reached = automaton.successors(state.reached, symbol);
    if (reached.none())
        return std::nullopt;
    Bitset carried = automaton.successors(state.commitment, symbol);
    Bitset commitment = carried | automaton.acc_successors(state.reached, symbol,
                                                           state.index);
    if (commitment == reached) {
        int next = (state.index + 1) % automaton.acc_count();
        return BreakpointStep{{std::move(reached), next, Bitset(automaton.state_count())},
                              true, false};
    }
    // The rejecting mark follows the formal definition: the carried
    // commitment (not the refreshed one) must have died.
    bool rejecting = carried.none();
    return BreakpointStep{{std::move(reached), state.index, std::move(commitment)},
                          false, rejecting};
}

const BreakpointAutomaton::Edge* BreakpointAutomaton::edge(int id,
                                                           Symbol symbol) const {
    const auto& row = edges_[id];
    auto it = std::lower_bound(row.begin(), row.end(), symbol,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    if (it == row.end() || it->symbol != symbol)
        return nullptr;
    return &*it;
}

int BreakpointAutomaton::find_state(const BreakpointState& s) const {
    for (int i = 0; i < state_count(); ++i)
        if (states_[i] == s)
            return i;
    return -1;
}

DetAutomaton BreakpointAutomaton::as_deterministic(bool over) const {
    DetAutomaton det(alphabet_, state_count(), 0, Acceptance::rabin, over ? 2 : 1);
    for (int s = 0; s < state_count(); ++s) {
        for (const Edge& e : edges_[s]) {
            std::uint64_t acc = e.accepting ? 1u : 0u;
            std::uint64_t rej = 0;
            if (over) {
                acc |= 2u;  // pair 1 accepts on every transition ...
                if (e.rejecting)
                    rej |= 2u;  // ... unless a rejecting mark recurs
            }
            det.add_edge(s, {e.symbol, e.dst, acc, rej, 0});
        }
    }
    return det;
}

BreakpointAutomaton build_breakpoint(const Ngba& automaton,
                                     const BreakpointState& init) {
    if (init.reached.none() || !init.commitment.is_subset_of(init.reached) ||
        init.commitment == init.reached || init.index < 0 ||
        init.index >= automaton.acc_count())
        throw InputError("invalid breakpoint start state");

    BreakpointAutomaton out;
    out.alphabet_ = automaton.alphabet();

    std::unordered_map<BreakpointState, int, BreakpointStateHash> ids;
    auto intern = [&](const BreakpointState& s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(out.states_.size());
        ids.emplace(s, id);
        out.states_.push_back(s);
        out.edges_.emplace_back();
        return id;
    };

    intern(init);
    const Symbol symbols = static_cast<Symbol>(automaton.alphabet().symbol_count());
    for (int id = 0; id < static_cast<int>(out.states_.size()); ++id) {
        const BreakpointState src = out.states_[id];
        for (Symbol s = 0; s < symbols; ++s) {
            std::optional<BreakpointStep> step = bp_successor(src, s, automaton);
            if (!step)
                continue;
            // Intern first: it may grow the edge table.
            int dst = intern(step->state);
            out.edges_[id].push_back({s, dst, step->accepting, step->rejecting});
        }
    }
    return out;
}

BreakpointState initial_breakpoint(const Ngba& automaton) {
    return {automaton.initial(), 0, Bitset(automaton.state_count())};
}

BreakpointState singleton_breakpoint(const Ngba& automaton, int q) {
    return {Bitset::singleton(automaton.state_count(), q), 0,
            Bitset(automaton.state_count())};
}

}  // namespace pmc

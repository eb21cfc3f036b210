#ifndef PMC_SUBSET_HH
#define PMC_SUBSET_HH

#include <vector>

#include "pmc/automaton.hh"

namespace pmc {

enum class ComponentClass { accepting, rejecting, unknown };

// Deterministic subset automaton of an NGBA, carrying both acceptance
// approximations per edge: the over-approximating sets F^o_j (some matching
// source/target pair is accepting) and the under-approximating sets F^u_j
// (every source/target pair is an accepting transition).
class SubsetAutomaton {
public:
    struct Edge {
        Symbol symbol;
        int dst;
        std::uint32_t over_mask;
        std::uint32_t under_mask;
    };

    const Alphabet& alphabet() const { return alphabet_; }
    int acc_count() const { return acc_count_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    int initial() const { return 0; }

    const Bitset& state_set(int id) const { return states_[id]; }
    const std::vector<Edge>& edges(int id) const { return edges_[id]; }
    const Edge* edge(int id, Symbol symbol) const;

    // Id of a subset state, or -1 when it is not part of the reachable
    // fragment.
    int find_state(const Bitset& set) const;

    // Edges flattened in (state, symbol) order; edge ids index this list.
    const Edge& global_edge(int edge_id) const;
    int global_edge_id(int state, Symbol symbol) const;
    int global_edge_count() const { return static_cast<int>(edge_index_.size()); }

    // View with generalized Büchi acceptance from the over- or
    // under-approximating family (used by the language sandwich tests).
    DetAutomaton as_deterministic(bool over) const;

    friend SubsetAutomaton build_subset(const Ngba& automaton);

private:
    Alphabet alphabet_;
    int acc_count_ = 0;
    std::vector<Bitset> states_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<std::pair<int, int>> edge_index_;  // edge id -> (state, offset)
    std::vector<int> edge_base_;                   // first edge id per state
};

// Reachable fragment of the subset construction, starting from the set of
// initial states. Letters with no successor are blocked.
SubsetAutomaton build_subset(const Ngba& automaton);

// Classifies a component by the subset criterion. `component_edges` holds
// global edge ids of the projected component transitions: accepting when
// every under-approximating set is hit, rejecting when some
// over-approximating set is missed entirely.
ComponentClass classify_component_subset(const std::vector<int>& component_edges,
                                         const SubsetAutomaton& subset);

}  // namespace pmc

#endif

#ifndef PMC_GRAPH_HH
#define PMC_GRAPH_HH

#include <vector>

#include "pmc/product.hh"

namespace pmc {

// A component of a product model: states plus, for MDPs, the choice indices
// (positions into the state's row) that stay inside the component.
struct Component {
    std::vector<int> states;                 // sorted ascending
    std::vector<std::vector<int>> enabled;   // per states[i]: allowed row positions

    bool contains(int state) const;
    int position_of(int state) const;        // -1 when absent
};

// Strongly connected components in deterministic order (sorted by smallest
// contained state). Trivial one-state components without a self-loop are
// included; `enabled` lists every choice.
std::vector<Component> sccs(const ProductModel& product);

// Bottom SCCs of a Markov-chain product: SCCs no edge leaves, excluding
// absorbing states (blocked or empty rows count as absorbing here only when
// the full row mass is gone). A state whose row is substochastic leaks to
// the sink and therefore never belongs to a bottom SCC.
std::vector<Component> bottom_sccs(const ProductModel& product);

// Maximal end components: largest sub-MDPs closed under the enabled choices
// and strongly connected. Choices with substochastic mass leak and are never
// enabled inside an end component.
std::vector<Component> max_end_components(const ProductModel& product);

// States reaching the target with probability 1 (Markov chain), or from
// which some scheduler reaches it with probability 1 (MDP). Target states
// qualify regardless of their outgoing structure.
std::vector<char> prob1_reach(const ProductModel& product,
                              const std::vector<char>& target);

// States with no path to the target under any scheduler.
std::vector<char> prob0_reach(const ProductModel& product,
                              const std::vector<char>& target);

// Largest sub-structure of the component's alive states avoiding `bad`
// forever: states keeping a component-enabled choice whose successors stay
// inside the result. Used to discard states that cannot avoid a failed
// multi-breakpoint candidate. All three vectors are indexed by product state.
std::vector<char> safe_region(const ProductModel& product, const Component& component,
                              const std::vector<char>& alive,
                              const std::vector<char>& bad);

}  // namespace pmc

#endif

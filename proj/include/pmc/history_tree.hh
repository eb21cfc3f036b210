#ifndef PMC_HISTORY_TREE_HH
#define PMC_HISTORY_TREE_HH

#include <optional>
#include <vector>

#include "pmc/automaton.hh"

namespace pmc {

// Node names are paths of child indices; the root is the empty path.
using NodeName = std::vector<int>;

// Generalized history tree: an ordered tree whose nodes carry non-empty
// state-set labels (strictly shrinking towards the leaves, disjoint between
// siblings, never exhausting the parent) and an active accepting index.
// Nodes are stored in depth-first order; node 0 is the root.
class HistoryTree {
public:
    HistoryTree() = default;
    HistoryTree(std::vector<NodeName> names, std::vector<Bitset> labels,
                std::vector<int> indices);

    int node_count() const { return static_cast<int>(names_.size()); }
    const NodeName& name(int node) const { return names_[node]; }
    const Bitset& label(int node) const { return labels_[node]; }
    int index(int node) const { return indices_[node]; }

    // The set of currently reached states: the label of the root.
    const Bitset& reached() const { return labels_[0]; }

    // Parent position in the node array, -1 for the root.
    int parent(int node) const;
    std::vector<int> children(int node) const;

    // Checks the three label constraints; used by tests and assertions.
    bool well_formed() const;

    bool operator==(const HistoryTree&) const = default;
    std::size_t hash() const;

private:
    std::vector<NodeName> names_;   // depth-first (lexicographic) order
    std::vector<Bitset> labels_;
    std::vector<int> indices_;      // active accepting index per node, 0-based
};

struct HistoryTreeHash {
    std::size_t operator()(const HistoryTree& t) const { return t.hash(); }
};

// The single-node tree (ε ↦ initial states, index 1).
HistoryTree initial_history_tree(const Ngba& automaton);

// A single-node tree with the given root label; seeds component-local
// determinization.
HistoryTree history_tree_with_root(const Ngba& automaton, const Bitset& root);

struct HistoryTreeStep {
    HistoryTree tree;
    // Names whose breakpoint fired and that survived the step unchanged.
    std::vector<NodeName> accepting;
    // Names that were sprouted, removed, or renamed during the step: every
    // name touched by the transition that is not stable across it.
    std::vector<NodeName> rejecting;
    // Names present in both source and target under the same identity.
    std::vector<NodeName> stable;
};

// One deterministic step of the determinization, or nullopt when the root
// label has no successors.
std::optional<HistoryTreeStep> history_tree_successor(const HistoryTree& tree,
                                                      Symbol symbol,
                                                      const Ngba& automaton);

// Deterministic Rabin automaton equivalent to the NGBA, built from the
// reachable history trees. Rabin pairs are indexed by the node names seen in
// reachable trees; a transition is in R_v unless v exists before and after
// the step under the same name, and in A_v when v's breakpoint fires.
DetAutomaton determinize_rabin(const Ngba& automaton);
DetAutomaton determinize_rabin(const Ngba& automaton, const HistoryTree& init);

// The history trees backing each state of determinize_rabin, in state order.
std::vector<HistoryTree> reachable_history_trees(const Ngba& automaton,
                                                 const HistoryTree& init);

}  // namespace pmc

#endif

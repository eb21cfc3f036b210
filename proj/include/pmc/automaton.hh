#ifndef PMC_AUTOMATON_HH
#define PMC_AUTOMATON_HH

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "pmc/alphabet.hh"
#include "pmc/bitset.hh"

namespace pmc {

struct Transition {
    int src;
    Symbol symbol;
    int dst;

    auto operator<=>(const Transition&) const = default;
};

// Nondeterministic generalized Büchi automaton with transition-based
// acceptance: a run is accepting when every accepting set is visited
// infinitely often. Blocked (finite) runs reject.
class Ngba {
public:
    Ngba(Alphabet alphabet, int state_count, Bitset initial,
         std::vector<Transition> transitions,
         std::vector<std::vector<Transition>> accepting_sets);

    const Alphabet& alphabet() const { return alphabet_; }
    int state_count() const { return state_count_; }
    int acc_count() const { return static_cast<int>(acc_count_); }
    const Bitset& initial() const { return initial_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    // Transitions of accepting set j (0-based).
    std::vector<Transition> accepting_set(int j) const;

    Bitset successors(int state, Symbol symbol) const;
    Bitset successors(const Bitset& from, Symbol symbol) const;

    // Successors of `from` through transitions of accepting set j.
    Bitset acc_successors(const Bitset& from, Symbol symbol, int j) const;

    bool has_transition(int src, Symbol symbol, int dst) const;

    // Bitmask over accepting sets containing (src, symbol, dst).
    std::uint32_t acc_mask(int src, Symbol symbol, int dst) const;

    // True when |initial| == 1 and every (state, symbol) has at most one
    // successor.
    bool is_deterministic() const;

private:
    struct EdgeGroup {
        Symbol symbol;
        Bitset all;                 // successor set
        std::vector<Bitset> acc;    // successor set per accepting set
    };

    const EdgeGroup* group(int state, Symbol symbol) const;

    Alphabet alphabet_;
    int state_count_;
    std::size_t acc_count_;
    Bitset initial_;
    std::vector<Transition> transitions_;
    std::vector<std::uint32_t> transition_acc_;      // parallel to transitions_
    std::vector<std::vector<EdgeGroup>> by_state_;   // sorted by symbol
};

enum class Acceptance {
    generalized_buchi,  // acc_size accepting sets, all to be hit infinitely often
    rabin,              // acc_size pairs (A_i, R_i)
    parity,             // priorities in [1, acc_size]; min-even wins
};

struct DetEdge {
    Symbol symbol;
    int dst;
    std::uint64_t acc_bits;  // generalized_buchi: F_j bits; rabin: A_i bits
    std::uint64_t rej_bits;  // rabin: R_i bits; otherwise 0
    int priority;            // parity only; otherwise 0
};

// Deterministic automaton with a partial transition function and
// transition-based acceptance. Supports at most 64 accepting sets/pairs.
class DetAutomaton {
public:
    DetAutomaton(Alphabet alphabet, int state_count, int initial,
                 Acceptance kind, int acc_size);

    void add_edge(int src, const DetEdge& edge);

    const Alphabet& alphabet() const { return alphabet_; }
    int state_count() const { return state_count_; }
    int initial() const { return initial_; }
    Acceptance kind() const { return kind_; }
    // Number of accepting sets (generalized Büchi), pairs (Rabin), or the
    // priority bound (parity).
    int acc_size() const { return acc_size_; }

    const DetEdge* edge(int state, Symbol symbol) const;
    std::optional<int> successor(int state, Symbol symbol) const;

    const std::vector<DetEdge>& edges(int state) const { return edges_[state]; }
    std::size_t edge_count() const;

private:
    Alphabet alphabet_;
    int state_count_;
    int initial_;
    Acceptance kind_;
    int acc_size_;
    std::vector<std::vector<DetEdge>> edges_;  // per state, sorted by symbol
};

// Ultimately periodic word prefix.period^ω; the period is non-empty.
struct LassoWord {
    std::vector<Symbol> prefix;
    std::vector<Symbol> period;

    std::size_t length() const { return prefix.size() + period.size(); }

    // Symbol at an unrolled position, wrapping into the period.
    Symbol at(std::size_t pos) const {
        if (pos < prefix.size())
            return prefix[pos];
        return period[(pos - prefix.size()) % period.size()];
    }

    // Position following `pos` in the folded graph of |prefix|+|period| slots.
    std::size_t next(std::size_t pos) const {
        ++pos;
        if (pos == length())
            pos = prefix.size();
        return pos;
    }
};

// Membership of the lasso word in L(B), decided by cycle search over the
// (period position × state) graph.
bool lasso_member_ngba(const Ngba& automaton, const LassoWord& word);

// Transitions on the limit cycle of the unique run, or empty when the run
// blocks before cycling.
std::vector<const DetEdge*> lasso_cycle(const DetAutomaton& automaton,
                                        const LassoWord& word);

// Membership for a deterministic automaton; a blocked run rejects.
bool lasso_run_deterministic(const DetAutomaton& automaton, const LassoWord& word);

// Minimum priority occurring on the limit cycle of a parity automaton run,
// or nullopt when the run blocks.
std::optional<int> lasso_limit_priority(const DetAutomaton& automaton,
                                        const LassoWord& word);

}  // namespace pmc

#endif

#ifndef PMC_PRODUCT_HH
#define PMC_PRODUCT_HH

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pmc/automaton.hh"
#include "pmc/model.hh"
#include "pmc/subset.hh"

namespace pmc {

// Edge of a product model. The marks carry the automaton acceptance lifted
// onto the product transition; their meaning depends on the automaton the
// product was built from:
//   deterministic automaton:  mark_a/mark_r = acc/rej bit masks, priority;
//   subset automaton:         mark_a = over sets, mark_r = under sets,
//                             aut_edge = global subset edge id;
//   breakpoint products:      mark_a bit 0 = breakpoint fired,
//                             mark_r bit 0 = commitment died.
struct ProductEdge {
    int dst;
    double prob;
    std::uint64_t mark_a = 0;
    std::uint64_t mark_r = 0;
    int priority = 0;
    int aut_edge = -1;
};

struct ProductChoice {
    int action;  // 0 for Markov chains
    std::vector<ProductEdge> edges;
};

// Reachable product of a model with a deterministic transition structure.
// Rows may be substochastic: probability lost to blocked automaton steps
// behaves as an implicit rejecting sink.
class ProductModel {
public:
    bool is_mdp = false;
    std::vector<std::pair<int, int>> states;  // (model state, automaton state)
    std::vector<std::vector<ProductChoice>> rows;
    std::vector<std::pair<int, double>> initial;  // (product state, probability)

    int state_count() const { return static_cast<int>(states.size()); }
    int find_state(int model_state, int aut_state) const;

    // Total outgoing probability of a choice (1 minus the blocked mass).
    static double choice_mass(const ProductChoice& c);

    friend class ProductBuilder;

private:
    std::unordered_map<long long, int> index_;
};

// Generic product exploration, shared by the deterministic-automaton and
// subset products and by the engine's component-local constructions.
class ProductBuilder {
public:
    struct AutStep {
        int dst;
        std::uint64_t mark_a = 0;
        std::uint64_t mark_r = 0;
        int priority = 0;
        int aut_edge = -1;
    };
    // (automaton state, symbol) -> successor, or nullopt when blocked.
    using StepFn = std::function<std::optional<AutStep>(int, Symbol)>;
    // (model state, automaton state, choice position) -> whether to expand
    // the choice; the position indexes the model state's row.
    using AllowFn = std::function<bool(int, int, int)>;

    ProductBuilder(const MarkovChain& mc, std::vector<Symbol> projected_labels,
                   StepFn step);
    ProductBuilder(const Mdp& mdp, std::vector<Symbol> projected_labels,
                   StepFn step);

    // Restricts which (state, aut, action) choices are expanded.
    ProductBuilder& restrict(AllowFn allow);

    // Adds the standard initial states: for every model state m with
    // positive initial mass, the pair (m, step(aut_initial, L(m))).
    ProductBuilder& with_initial(int aut_initial);

    // Adds an exploration seed without initial probability.
    ProductBuilder& seed(int model_state, int aut_state);

    ProductModel build();

private:
    const MarkovChain* mc_ = nullptr;
    const Mdp* mdp_ = nullptr;
    std::vector<Symbol> label_;
    StepFn step_;
    AllowFn allow_;
    std::optional<int> aut_initial_;
    std::vector<std::pair<int, int>> seeds_;
};

// Model labels re-encoded over the automaton's alphabet. Propositions of the
// automaton must be declared by the model; extra model propositions project
// away.
std::vector<Symbol> project_labels(const Alphabet& model_alphabet,
                                   const std::vector<Symbol>& labels,
                                   const Alphabet& automaton_alphabet);

// Product with a deterministic automaton, with lifted acceptance marks.
ProductModel product(const MarkovChain& mc, const DetAutomaton& automaton);
ProductModel product(const Mdp& mdp, const DetAutomaton& automaton);

// Product with the subset automaton, carrying both acceptance families; this
// doubles as the quotient structure for all transient probabilities.
ProductModel product_subset(const MarkovChain& mc, const SubsetAutomaton& subset);
ProductModel product_subset(const Mdp& mdp, const SubsetAutomaton& subset);
ProductModel product_subset(const MarkovChain& mc, const Ngba& automaton);
ProductModel product_subset(const Mdp& mdp, const Ngba& automaton);

// Step function over a deterministic automaton, reusable by seeded products.
ProductBuilder::StepFn det_step_fn(const DetAutomaton& automaton);
ProductBuilder::StepFn subset_step_fn(const SubsetAutomaton& subset);

}  // namespace pmc

#endif

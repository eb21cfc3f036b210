#ifndef PMC_ENGINE_HH
#define PMC_ENGINE_HH

#include <atomic>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "pmc/breakpoint.hh"
#include "pmc/graph.hh"
#include "pmc/ltl.hh"
#include "pmc/model.hh"
#include "pmc/product.hh"
#include "pmc/subset.hh"

namespace pmc {

struct EngineOptions {
    enum class Method { lazy, rabin_oracle };
    enum class Fallback { multibreakpoint, rabin };

    Method method = Method::lazy;
    Fallback fallback = Fallback::multibreakpoint;
    bool use_witness_cache = true;
    int threads = 1;
    double tolerance = 1e-12;
    long max_iterations = 1000000;
};

enum class Layer { subset, breakpoint, multibreakpoint, rabin };

struct ComponentVerdict {
    int component;  // index into Engine::components()
    bool accepting;
    Layer decided_by;  // first conclusive layer
    // Successful multi-breakpoint start: (model state, breakpoint seed).
    std::optional<std::pair<int, BreakpointState>> witness;
};

struct MultiBreakpointAttempt {
    enum class Status { failed, eliminated, succeeded };
    int product_state;  // candidate (m, R) in the subset product
    Status status;
};

struct MultiBreakpointOutcome {
    bool accepting = false;
    std::optional<std::pair<int, BreakpointState>> witness;
    std::vector<MultiBreakpointAttempt> attempts;
};

struct LayerCounts {
    int subset = 0;
    int breakpoint = 0;
    int multibreakpoint = 0;
    int rabin = 0;
};

struct CheckResult {
    double probability = 0.0;
    std::string mode;  // "exact" (MC), "max" or "min" (MDP)
    LayerCounts layers;
    int components = 0;
    long states_explored = 0;
};

// Probability of reaching the target set in a Markov-chain product, target
// states treated as absorbing. Uses direct elimination up to 2000 transient
// states and Gauss-Seidel iteration beyond; throws ConvergenceError when the
// iteration budget runs out.
std::vector<double> reach_probability_mc(const ProductModel& product,
                                         const std::vector<char>& target,
                                         double tolerance = 1e-12,
                                         long max_iterations = 1000000);

// Maximal reachability probability in an MDP product via value iteration
// after probability-0/1 precomputation.
std::vector<double> reach_probability_max_mdp(const ProductModel& product,
                                              const std::vector<char>& target,
                                              double tolerance = 1e-12,
                                              long max_iterations = 1000000);

// One model-checking run: the subset product, its components, and the
// layered classification. Holds references to the model; the automaton is
// copied.
class Engine {
public:
    Engine(const MarkovChain& mc, Ngba automaton, EngineOptions options = {});
    Engine(const Mdp& mdp, Ngba automaton, EngineOptions options = {});

    bool is_mdp() const { return mdp_ != nullptr; }
    const Ngba& ngba() const { return automaton_; }
    const SubsetAutomaton& subset() const { return subset_; }
    const ProductModel& subset_product() const { return product_; }
    // Bottom SCCs (MC) or MECs (MDP) of the subset product, ordered by
    // smallest contained state.
    const std::vector<Component>& components() const { return components_; }

    // --- individual layers (exposed for tests and diagnostics) ------------
    ComponentClass classify_subset(int component) const;
    ComponentClass classify_breakpoint(int component) const;
    MultiBreakpointOutcome decide_multibreakpoint(int component);
    bool decide_rabin_local(int component) const;

    // Escalating classification of every component. Components are decided
    // cheapest-first (by size); verdicts come back in component order.
    std::vector<ComponentVerdict> compute_accepting_components();

    CheckResult model_check();

private:
    ComponentVerdict decide_component(int component);
    std::vector<int> component_edge_ids(int component) const;
    // Component-local product of the model with an automaton structure run
    // in lockstep with the subset automaton. The restriction is keyed by
    // subset-product states and action ids (positions differ between the
    // model rows and the product rows once blocked choices drop out).
    ProductModel breakpoint_product(int seed_model, int seed_subset,
                                    const ProductBuilder::StepFn& inner,
                                    int inner_initial,
                                    const std::vector<char>* alive,
                                    const std::vector<std::vector<int>>* enabled_actions) const;
    // Action ids of the component-enabled choices, per product state.
    std::vector<std::vector<int>> component_actions(int component) const;
    CheckResult rabin_oracle_check();
    double reach_accepting(const ProductModel& product,
                           const std::vector<char>& target) const;

    const MarkovChain* mc_ = nullptr;
    const Mdp* mdp_ = nullptr;
    Ngba automaton_;
    EngineOptions options_;
    SubsetAutomaton subset_;
    std::vector<Symbol> projected_labels_;
    ProductModel product_;
    std::vector<Component> components_;

    mutable std::mutex cache_mutex_;
    std::set<std::pair<int, int>> witness_cache_;  // (model state, automaton state)
};

CheckResult model_check(const MarkovChain& mc, const Ngba& automaton,
                        const EngineOptions& options = {});
CheckResult model_check(const Mdp& mdp, const Ngba& automaton,
                        const EngineOptions& options = {});

// LTL front end. `minimize` asks for the infimum over schedulers, answered
// through the negated formula; it requires an MDP.
CheckResult model_check_ltl(const MarkovChain& mc, const LtlFormula& formula,
                            const EngineOptions& options = {});
CheckResult model_check_ltl(const Mdp& mdp, const LtlFormula& formula,
                            const EngineOptions& options = {}, bool minimize = false);

}  // namespace pmc

#endif

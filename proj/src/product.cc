#include "pmc/product.hh"

#include <algorithm>
#include <cassert>

#include "pmc/error.hh"

namespace pmc {

int ProductModel::find_state(int model_state, int aut_state) const {
    long long key = (static_cast<long long>(model_state) << 32) |
                    static_cast<unsigned>(aut_state);
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

double ProductModel::choice_mass(const ProductChoice& c) {
    double mass = 0.0;
    for (const ProductEdge& e : c.edges)
        mass += e.prob;
    return mass;
}

std::vector<Symbol> project_labels(const Alphabet& model_alphabet,
                                   const std::vector<Symbol>& labels,
                                   const Alphabet& automaton_alphabet) {
    std::vector<int> source_bit(automaton_alphabet.proposition_count());
    for (std::size_t i = 0; i < automaton_alphabet.proposition_count(); ++i) {
        int idx = model_alphabet.index_of(automaton_alphabet.proposition(i));
        if (idx < 0)
            throw InputError("model does not declare atomic proposition '" +
                             automaton_alphabet.proposition(i) +
                             "' used by the specification");
        source_bit[i] = idx;
    }
    std::vector<Symbol> out;
    out.reserve(labels.size());
    for (Symbol label : labels) {
        Symbol sym = 0;
        for (std::size_t i = 0; i < source_bit.size(); ++i)
            if ((label >> source_bit[i]) & 1u)
                sym |= Symbol(1) << i;
        out.push_back(sym);
    }
    return out;
}

ProductBuilder::ProductBuilder(const MarkovChain& mc,
                               std::vector<Symbol> projected_labels, StepFn step)
    : mc_(&mc), label_(std::move(projected_labels)), step_(std::move(step)) {}

ProductBuilder::ProductBuilder(const Mdp& mdp, std::vector<Symbol> projected_labels,
                               StepFn step)
    : mdp_(&mdp), label_(std::move(projected_labels)), step_(std::move(step)) {}

ProductBuilder& ProductBuilder::restrict(AllowFn allow) {
    allow_ = std::move(allow);
    return *this;
}

ProductBuilder& ProductBuilder::with_initial(int aut_initial) {
    aut_initial_ = aut_initial;
    return *this;
}

ProductBuilder& ProductBuilder::seed(int model_state, int aut_state) {
    seeds_.push_back({model_state, aut_state});
    return *this;
}

ProductModel ProductBuilder::build() {
    ProductModel out;
    out.is_mdp = mdp_ != nullptr;

    std::unordered_map<long long, int> index;
    auto intern = [&](int m, int a) {
        long long key = (static_cast<long long>(m) << 32) | static_cast<unsigned>(a);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        int id = static_cast<int>(out.states.size());
        index.emplace(key, id);
        out.states.push_back({m, a});
        out.rows.emplace_back();
        return id;
    };

    const std::vector<double>& mu0 = mc_ ? mc_->initial : mdp_->initial;
    if (aut_initial_) {
        for (std::size_t m = 0; m < mu0.size(); ++m) {
            if (mu0[m] <= 0.0)
                continue;
            // The labelling of the initial state is consumed up front.
            std::optional<AutStep> step = step_(*aut_initial_, label_[m]);
            if (!step)
                continue;
            out.initial.push_back({intern(static_cast<int>(m), step->dst), mu0[m]});
        }
    }
    for (const auto& [m, a] : seeds_)
        intern(m, a);

    for (int id = 0; id < static_cast<int>(out.states.size()); ++id) {
        const auto [m, a] = out.states[id];
        int choice_count = mc_ ? 1 : static_cast<int>(mdp_->rows[m].size());
        for (int c = 0; c < choice_count; ++c) {
            int action;
            const std::vector<std::pair<int, double>>* dist;
            if (mc_) {
                action = 0;
                dist = &mc_->rows[m];
            } else {
                action = mdp_->rows[m][c].action;
                dist = &mdp_->rows[m][c].dist;
            }
            if (dist->empty())
                continue;  // absorbing state
            if (allow_ && !allow_(m, a, c))
                continue;
            ProductChoice choice{action, {}};
            for (const auto& [m2, p] : *dist) {
                std::optional<AutStep> step = step_(a, label_[m2]);
                if (!step)
                    continue;  // blocked: mass falls into the implicit sink
                choice.edges.push_back({intern(m2, step->dst), p, step->mark_a,
                                        step->mark_r, step->priority,
                                        step->aut_edge});
            }
            // A fully blocked choice only feeds the sink; maximizing
            // schedulers never pick it.
            if (!choice.edges.empty())
                out.rows[id].push_back(std::move(choice));
        }
    }

    out.index_ = std::move(index);
    return out;
}

ProductBuilder::StepFn det_step_fn(const DetAutomaton& automaton) {
    return [&automaton](int state, Symbol symbol) -> std::optional<ProductBuilder::AutStep> {
        const DetEdge* e = automaton.edge(state, symbol);
        if (!e)
            return std::nullopt;
        return ProductBuilder::AutStep{e->dst, e->acc_bits, e->rej_bits, e->priority, -1};
    };
}

ProductBuilder::StepFn subset_step_fn(const SubsetAutomaton& subset) {
    return [&subset](int state, Symbol symbol) -> std::optional<ProductBuilder::AutStep> {
        const SubsetAutomaton::Edge* e = subset.edge(state, symbol);
        if (!e)
            return std::nullopt;
        return ProductBuilder::AutStep{e->dst, e->over_mask, e->under_mask, 0,
                                       subset.global_edge_id(state, symbol)};
    };
}

ProductModel product(const MarkovChain& mc, const DetAutomaton& automaton) {
    return ProductBuilder(mc, project_labels(mc.alphabet, mc.label, automaton.alphabet()),
                          det_step_fn(automaton))
        .with_initial(automaton.initial())
        .build();
}

ProductModel product(const Mdp& mdp, const DetAutomaton& automaton) {
    return ProductBuilder(mdp, project_labels(mdp.alphabet, mdp.label, automaton.alphabet()),
                          det_step_fn(automaton))
        .with_initial(automaton.initial())
        .build();
}

ProductModel product_subset(const MarkovChain& mc, const SubsetAutomaton& subset) {
    return ProductBuilder(mc, project_labels(mc.alphabet, mc.label, subset.alphabet()),
                          subset_step_fn(subset))
        .with_initial(subset.initial())
        .build();
}

ProductModel product_subset(const Mdp& mdp, const SubsetAutomaton& subset) {
    return ProductBuilder(mdp, project_labels(mdp.alphabet, mdp.label, subset.alphabet()),
                          subset_step_fn(subset))
        .with_initial(subset.initial())
        .build();
}

ProductModel product_subset(const MarkovChain& mc, const Ngba& automaton) {
    return product_subset(mc, build_subset(automaton));
}

ProductModel product_subset(const Mdp& mdp, const Ngba& automaton) {
    return product_subset(mdp, build_subset(automaton));
}

}  // namespace pmc

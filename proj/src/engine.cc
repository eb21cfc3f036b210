#include "pmc/engine.hh"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>
#include <thread>

#include "pmc/error.hh"
#include "pmc/history_tree.hh"

namespace pmc {

std::vector<double> reach_probability_mc(const ProductModel& product,
                                         const std::vector<char>& target,
                                         double tolerance, long max_iterations) {
    if (product.is_mdp)
        throw InputError("reach_probability_mc needs a Markov-chain product");
    const int n = product.state_count();
    std::vector<char> zero = prob0_reach(product, target);
    std::vector<char> one = prob1_reach(product, target);
    std::vector<double> value(n, 0.0);
    std::vector<int> transient;
    for (int s = 0; s < n; ++s) {
        if (target[s] || one[s])
            value[s] = 1.0;  // qualitative states are exact
        else if (!zero[s])
            transient.push_back(s);
    }
    if (transient.empty())
        return value;

    const int t = static_cast<int>(transient.size());
    if (t <= 2000) {
        // Direct elimination of (I - A) x = b with partial pivoting.
        std::vector<int> idx(n, -1);
        for (int i = 0; i < t; ++i)
            idx[transient[i]] = i;
        const int w = t + 1;
        std::vector<double> mat(static_cast<std::size_t>(t) * w, 0.0);
        for (int i = 0; i < t; ++i) {
            mat[static_cast<std::size_t>(i) * w + i] = 1.0;
            for (const ProductEdge& e : product.rows[transient[i]][0].edges) {
                if (target[e.dst] || one[e.dst])
                    mat[static_cast<std::size_t>(i) * w + t] += e.prob;
                else if (idx[e.dst] >= 0)
                    mat[static_cast<std::size_t>(i) * w + idx[e.dst]] -= e.prob;
            }
        }
        for (int col = 0; col < t; ++col) {
            int pivot = col;
            for (int r = col + 1; r < t; ++r)
                if (std::abs(mat[static_cast<std::size_t>(r) * w + col]) >
                    std::abs(mat[static_cast<std::size_t>(pivot) * w + col]))
                    pivot = r;
            if (pivot != col)
                for (int c = col; c <= t; ++c)
                    std::swap(mat[static_cast<std::size_t>(col) * w + c],
                              mat[static_cast<std::size_t>(pivot) * w + c]);
            double head = mat[static_cast<std::size_t>(col) * w + col];
            if (std::abs(head) < 1e-300)
                throw ConvergenceError("singular reachability system", 0.0);
            for (int r = col + 1; r < t; ++r) {
                double factor = mat[static_cast<std::size_t>(r) * w + col] / head;
                if (factor == 0.0)
                    continue;
                for (int c = col; c <= t; ++c)
                    mat[static_cast<std::size_t>(r) * w + c] -=
                        factor * mat[static_cast<std::size_t>(col) * w + c];
            }
        }
        for (int i = t - 1; i >= 0; --i) {
            double acc = mat[static_cast<std::size_t>(i) * w + t];
            for (int c = i + 1; c < t; ++c)
                acc -= mat[static_cast<std::size_t>(i) * w + c] * value[transient[c]];
            value[transient[i]] = acc / mat[static_cast<std::size_t>(i) * w + i];
        }
        return value;
    }

    // Gauss-Seidel sweep for large systems.
    double delta = 0.0;
    for (long iter = 0; iter < max_iterations; ++iter) {
        delta = 0.0;
        for (int s : transient) {
            double acc = 0.0;
            for (const ProductEdge& e : product.rows[s][0].edges)
                acc += e.prob * value[e.dst];
            delta = std::max(delta, std::abs(acc - value[s]));
            value[s] = acc;
        }
        if (delta < tolerance)
            return value;
    }
    throw ConvergenceError("reachability iteration did not converge (residual " +
                               std::to_string(delta) + ")",
                           delta);
}

std::vector<double> reach_probability_max_mdp(const ProductModel& product,
                                              const std::vector<char>& target,
                                              double tolerance, long max_iterations) {
    const int n = product.state_count();
    std::vector<char> zero = prob0_reach(product, target);
    std::vector<char> one = prob1_reach(product, target);
    std::vector<double> value(n, 0.0);
    std::vector<int> open;
    for (int s = 0; s < n; ++s) {
        if (target[s] || one[s])
            value[s] = 1.0;
        else if (!zero[s])
            open.push_back(s);
    }
    if (open.empty())
        return value;

    double delta = 0.0;
    for (long iter = 0; iter < max_iterations; ++iter) {
        delta = 0.0;
        for (int s : open) {
            double best = 0.0;
            for (const ProductChoice& choice : product.rows[s]) {
                double acc = 0.0;
                for (const ProductEdge& e : choice.edges)
                    acc += e.prob * value[e.dst];
                best = std::max(best, acc);
            }
            delta = std::max(delta, std::abs(best - value[s]));
            value[s] = best;
        }
        if (delta < tolerance)
            return value;
    }
    throw ConvergenceError("value iteration did not converge (residual " +
                               std::to_string(delta) + ")",
                           delta);
}

namespace {

ProductBuilder::StepFn bp_step_fn(const BreakpointAutomaton& bp) {
    return [&bp](int state, Symbol symbol) -> std::optional<ProductBuilder::AutStep> {
        const BreakpointAutomaton::Edge* e = bp.edge(state, symbol);
        if (!e)
            return std::nullopt;
        return ProductBuilder::AutStep{e->dst, e->accepting ? 1u : 0u,
                                       e->rejecting ? 1u : 0u, 0, -1};
    };
}

// Drops every choice containing an edge whose rejecting mask intersects
// `rej_mask`; the MEC analysis of the remainder realizes the completion
// semantics of Rabin pair pruning.
ProductModel prune_rejecting(const ProductModel& product, std::uint64_t rej_mask) {
    ProductModel out = product;
    for (auto& row : out.rows) {
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [&](const ProductChoice& c) {
                                     for (const ProductEdge& e : c.edges)
                                         if (e.mark_r & rej_mask)
                                             return true;
                                     return false;
                                 }),
                  row.end());
    }
    return out;
}

bool component_hits(const ProductModel& product, const Component& comp,
                    std::uint64_t acc_mask) {
    for (std::size_t i = 0; i < comp.states.size(); ++i)
        for (int c : comp.enabled[i])
            for (const ProductEdge& e : product.rows[comp.states[i]][c].edges)
                if (e.mark_a & acc_mask)
                    return true;
    return false;
}

std::uint64_t component_acc_union(const ProductModel& product, const Component& comp) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < comp.states.size(); ++i)
        for (int c : comp.enabled[i])
            for (const ProductEdge& e : product.rows[comp.states[i]][c].edges)
                out |= e.mark_a;
    return out;
}

std::uint64_t component_rej_union(const ProductModel& product, const Component& comp) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < comp.states.size(); ++i)
        for (int c : comp.enabled[i])
            for (const ProductEdge& e : product.rows[comp.states[i]][c].edges)
                out |= e.mark_r;
    return out;
}

}  // namespace

namespace {

template <typename Model>
const Model* validated(const Model& model) {
    model.validate();
    return &model;
}

}  // namespace

Engine::Engine(const MarkovChain& mc, Ngba automaton, EngineOptions options)
    : mc_(validated(mc)),
      automaton_(std::move(automaton)),
      options_(options),
      subset_(build_subset(automaton_)),
      projected_labels_(project_labels(mc.alphabet, mc.label, automaton_.alphabet())),
      product_(product_subset(mc, subset_)),
      components_(bottom_sccs(product_)) {}

Engine::Engine(const Mdp& mdp, Ngba automaton, EngineOptions options)
    : mdp_(validated(mdp)),
      automaton_(std::move(automaton)),
      options_(options),
      subset_(build_subset(automaton_)),
      projected_labels_(project_labels(mdp.alphabet, mdp.label, automaton_.alphabet())),
      product_(product_subset(mdp, subset_)),
      components_(max_end_components(product_)) {}

std::vector<int> Engine::component_edge_ids(int component) const {
    const Component& comp = components_[component];
    std::vector<int> out;
    for (std::size_t i = 0; i < comp.states.size(); ++i)
        for (int c : comp.enabled[i])
            for (const ProductEdge& e : product_.rows[comp.states[i]][c].edges)
                if (e.aut_edge >= 0 && comp.contains(e.dst))
                    out.push_back(e.aut_edge);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ComponentClass Engine::classify_subset(int component) const {
    return classify_component_subset(component_edge_ids(component), subset_);
}

ProductModel Engine::breakpoint_product(
    int seed_model, int seed_subset, const ProductBuilder::StepFn& inner,
    int inner_initial, const std::vector<char>* alive,
    const std::vector<std::vector<int>>* enabled_actions) const {
    // Composite automaton: the inner deterministic structure in lockstep
    // with the subset automaton, whose component the restriction acts on.
    struct Composite {
        std::vector<std::pair<int, int>> states;
        std::unordered_map<long long, int> ids;

        int intern(int inner_state, int shadow) {
            long long key = (static_cast<long long>(inner_state) << 32) |
                            static_cast<unsigned>(shadow);
            auto it = ids.find(key);
            if (it != ids.end())
                return it->second;
            int id = static_cast<int>(states.size());
            ids.emplace(key, id);
            states.push_back({inner_state, shadow});
            return id;
        }
    };
    auto composite = std::make_shared<Composite>();
    int seed_aut = composite->intern(inner_initial, seed_subset);

    const SubsetAutomaton* subset = &subset_;
    ProductBuilder::StepFn step =
        [inner, subset, composite](int aut, Symbol symbol)
        -> std::optional<ProductBuilder::AutStep> {
        auto [inner_state, shadow] = composite->states[aut];
        std::optional<ProductBuilder::AutStep> inner_step = inner(inner_state, symbol);
        if (!inner_step)
            return std::nullopt;
        const SubsetAutomaton::Edge* se = subset->edge(shadow, symbol);
        assert(se != nullptr);  // the inner run under-approximates the subset run
        inner_step->dst = composite->intern(inner_step->dst, se->dst);
        inner_step->aut_edge = -1;
        return inner_step;
    };

    ProductBuilder builder = mc_ ? ProductBuilder(*mc_, projected_labels_, step)
                                 : ProductBuilder(*mdp_, projected_labels_, step);
    builder.seed(seed_model, seed_aut);
    if (alive) {
        const ProductModel* prod = &product_;
        const Mdp* mdp = mdp_;
        builder.restrict(
            [composite, prod, mdp, alive, enabled_actions](int m, int aut, int c) {
                int shadow = composite->states[aut].second;
                int ps = prod->find_state(m, shadow);
                if (ps < 0 || !(*alive)[ps])
                    return false;
                int action = mdp->rows[m][c].action;
                const std::vector<int>& ok = (*enabled_actions)[ps];
                return std::find(ok.begin(), ok.end(), action) != ok.end();
            });
    }
    return builder.build();
}

std::vector<std::vector<int>> Engine::component_actions(int component) const {
    const Component& comp = components_[component];
    std::vector<std::vector<int>> actions(product_.state_count());
    for (std::size_t i = 0; i < comp.states.size(); ++i)
        for (int c : comp.enabled[i])
            actions[comp.states[i]].push_back(
                product_.rows[comp.states[i]][c].action);
    return actions;
}

ComponentClass Engine::classify_breakpoint(int component) const {
    const Component& comp = components_[component];
    int seed = comp.states[0];
    auto [m0, subset0] = product_.states[seed];
    BreakpointState init{subset_.state_set(subset0), 0,
                         Bitset(automaton_.state_count())};
    BreakpointAutomaton bp = build_breakpoint(automaton_, init);

    if (!is_mdp()) {
        ProductModel p =
            breakpoint_product(m0, subset0, bp_step_fn(bp), bp.initial(), nullptr,
                               nullptr);
        bool rejecting_found = false;
        for (const Component& bscc : bottom_sccs(p)) {
            if (component_acc_union(p, bscc) & 1u)
                return ComponentClass::accepting;
            if (component_rej_union(p, bscc) & 1u)
                rejecting_found = true;
        }
        return rejecting_found ? ComponentClass::rejecting : ComponentClass::unknown;
    }

    const int n = product_.state_count();
    std::vector<char> alive(n, 0);
    for (int s : comp.states)
        alive[s] = 1;
    std::vector<std::vector<int>> enabled = component_actions(component);
    ProductModel p =
        breakpoint_product(m0, subset0, bp_step_fn(bp), bp.initial(), &alive, &enabled);
    for (const Component& mec : max_end_components(p))
        if (component_hits(p, mec, 1u))
            return ComponentClass::accepting;
    // Rejecting only when no end component avoids the rejecting marks:
    // otherwise the over-approximation still accepts through its second pair.
    ProductModel pruned = prune_rejecting(p, 1u);
    if (max_end_components(pruned).empty())
        return ComponentClass::rejecting;
    return ComponentClass::unknown;
}

MultiBreakpointOutcome Engine::decide_multibreakpoint(int component) {
    const Component& comp = components_[component];
    MultiBreakpointOutcome out;

    if (options_.use_witness_cache) {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        for (int s : comp.states) {
            auto [m, subset_id] = product_.states[s];
            const Bitset& reached = subset_.state_set(subset_id);
            auto it = witness_cache_.lower_bound({m, 0});
            for (; it != witness_cache_.end() && it->first == m; ++it) {
                if (reached.test(it->second)) {
                    out.accepting = true;
                    out.witness = {m, singleton_breakpoint(automaton_, it->second)};
                    return out;
                }
            }
        }
    }

    const int n = product_.state_count();
    if (!is_mdp()) {
        // Every component state is a candidate; a start succeeds when it
        // reaches an accepting bottom SCC of its breakpoint product almost
        // surely. Singleton starts may block, so success can need a
        // different candidate than the canonical first one.
        for (int s : comp.states) {
            auto [m, subset_id] = product_.states[s];
            const Bitset& reached = subset_.state_set(subset_id);
            bool succeeded = false;
            for (int q : reached.to_vector()) {
                BreakpointState init = singleton_breakpoint(automaton_, q);
                BreakpointAutomaton bp = build_breakpoint(automaton_, init);
                ProductModel p = breakpoint_product(m, subset_id, bp_step_fn(bp),
                                                    bp.initial(), nullptr, nullptr);
                std::vector<char> target(p.state_count(), 0);
                bool any_accepting = false;
                for (const Component& bscc : bottom_sccs(p)) {
                    if (component_acc_union(p, bscc) & 1u) {
                        any_accepting = true;
                        for (int u : bscc.states)
                            target[u] = 1;
                    }
                }
                if (!any_accepting)
                    continue;
                std::vector<char> sure = prob1_reach(p, target);
                int start = p.find_state(m, 0);
                assert(start == 0);
                if (sure[start]) {
                    succeeded = true;
                    out.witness = {m, init};
                    if (options_.use_witness_cache) {
                        std::lock_guard<std::mutex> lock(cache_mutex_);
                        witness_cache_.insert({m, q});
                    }
                    break;
                }
            }
            out.attempts.push_back(
                {s, succeeded ? MultiBreakpointAttempt::Status::succeeded
                              : MultiBreakpointAttempt::Status::failed});
            if (succeeded) {
                out.accepting = true;
                return out;
            }
        }
        return out;
    }

    // MDP: iterate candidates in canonical order; when a candidate fails,
    // discard it together with every state that cannot avoid it, and search
    // only the surviving restriction afterwards.
    std::vector<char> alive(n, 0);
    for (int s : comp.states)
        alive[s] = 1;
    // Allowed action ids per product state, shrinking with the eliminations.
    std::vector<std::vector<int>> enabled(n);
    auto recompute_enabled = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < comp.states.size(); ++i) {
                int s = comp.states[i];
                if (!alive[s])
                    continue;
                enabled[s].clear();
                for (int c : comp.enabled[i]) {
                    bool inside = true;
                    for (const ProductEdge& e : product_.rows[s][c].edges) {
                        if (!alive[e.dst]) {
                            inside = false;
                            break;
                        }
                    }
                    if (inside)
                        enabled[s].push_back(product_.rows[s][c].action);
                }
                if (enabled[s].empty()) {
                    alive[s] = 0;
                    changed = true;
                }
            }
        }
    };
    recompute_enabled();

    for (int s : comp.states) {
        if (!alive[s])
            continue;  // eliminated earlier, already logged
        auto [m, subset_id] = product_.states[s];
        const Bitset& reached = subset_.state_set(subset_id);
        for (int q : reached.to_vector()) {
            BreakpointState init = singleton_breakpoint(automaton_, q);
            BreakpointAutomaton bp = build_breakpoint(automaton_, init);
            ProductModel p = breakpoint_product(m, subset_id, bp_step_fn(bp),
                                                bp.initial(), &alive, &enabled);
            bool accepting = false;
            for (const Component& mec : max_end_components(p)) {
                if (component_hits(p, mec, 1u)) {
                    accepting = true;
                    break;
                }
            }
            if (accepting) {
                out.attempts.push_back({s, MultiBreakpointAttempt::Status::succeeded});
                out.accepting = true;
                out.witness = {m, init};
                if (options_.use_witness_cache) {
                    std::lock_guard<std::mutex> lock(cache_mutex_);
                    witness_cache_.insert({m, q});
                }
                return out;
            }
        }
        out.attempts.push_back({s, MultiBreakpointAttempt::Status::failed});
        std::vector<char> bad(n, 0);
        bad[s] = 1;
        std::vector<char> next_alive = safe_region(product_, comp, alive, bad);
        for (int u : comp.states)
            if (alive[u] && !next_alive[u] && u != s)
                out.attempts.push_back({u, MultiBreakpointAttempt::Status::eliminated});
        alive = std::move(next_alive);
        recompute_enabled();
    }
    return out;
}

bool Engine::decide_rabin_local(int component) const {
    const Component& comp = components_[component];
    int seed = comp.states[0];
    auto [m0, subset0] = product_.states[seed];
    DetAutomaton rabin = determinize_rabin(
        automaton_, history_tree_with_root(automaton_, subset_.state_set(subset0)));

    if (!is_mdp()) {
        ProductModel p = breakpoint_product(m0, subset0, det_step_fn(rabin),
                                            rabin.initial(), nullptr, nullptr);
        for (const Component& bscc : bottom_sccs(p)) {
            std::uint64_t acc = component_acc_union(p, bscc);
            std::uint64_t rej = component_rej_union(p, bscc);
            if (acc & ~rej)
                return true;
        }
        return false;
    }

    const int n = product_.state_count();
    std::vector<char> alive(n, 0);
    for (int s : comp.states)
        alive[s] = 1;
    std::vector<std::vector<int>> enabled = component_actions(component);
    ProductModel p = breakpoint_product(m0, subset0, det_step_fn(rabin),
                                        rabin.initial(), &alive, &enabled);
    for (int pair = 0; pair < rabin.acc_size(); ++pair) {
        std::uint64_t bit = std::uint64_t(1) << pair;
        ProductModel pruned = prune_rejecting(p, bit);
        for (const Component& mec : max_end_components(pruned))
            if (component_hits(pruned, mec, bit))
                return true;
    }
    return false;
}

ComponentVerdict Engine::decide_component(int component) {
    switch (classify_subset(component)) {
    case ComponentClass::accepting:
        return {component, true, Layer::subset, {}};
    case ComponentClass::rejecting:
        return {component, false, Layer::subset, {}};
    case ComponentClass::unknown:
        break;
    }
    switch (classify_breakpoint(component)) {
    case ComponentClass::accepting:
        return {component, true, Layer::breakpoint, {}};
    case ComponentClass::rejecting:
        return {component, false, Layer::breakpoint, {}};
    case ComponentClass::unknown:
        break;
    }
    if (options_.fallback == EngineOptions::Fallback::multibreakpoint) {
        MultiBreakpointOutcome out = decide_multibreakpoint(component);
        return {component, out.accepting, Layer::multibreakpoint, out.witness};
    }
    return {component, decide_rabin_local(component), Layer::rabin, {}};
}

std::vector<ComponentVerdict> Engine::compute_accepting_components() {
    std::vector<int> order(components_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    // Cheapest components first; ties by smallest contained state.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (components_[a].states.size() != components_[b].states.size())
            return components_[a].states.size() < components_[b].states.size();
        return components_[a].states.front() < components_[b].states.front();
    });

    std::vector<ComponentVerdict> verdicts(components_.size());
    if (options_.threads <= 1) {
        for (int ci : order)
            verdicts[ci] = decide_component(ci);
        return verdicts;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t at = next.fetch_add(1);
            if (at >= order.size())
                break;
            verdicts[order[at]] = decide_component(order[at]);
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(options_.threads, static_cast<int>(order.size()));
    for (int i = 0; i < std::max(1, count); ++i)
        pool.emplace_back(worker);
    for (std::thread& th : pool)
        th.join();
    return verdicts;
}

double Engine::reach_accepting(const ProductModel& product,
                               const std::vector<char>& target) const {
    std::vector<double> value =
        product.is_mdp
            ? reach_probability_max_mdp(product, target, options_.tolerance,
                                        options_.max_iterations)
            : reach_probability_mc(product, target, options_.tolerance,
                                   options_.max_iterations);
    double out = 0.0;
    for (const auto& [s, w] : product.initial)
        out += w * value[s];
    assert(out >= -1e-9 && out <= 1.0 + 1e-9);
    return std::min(1.0, std::max(0.0, out));
}

CheckResult Engine::rabin_oracle_check() {
    DetAutomaton rabin = determinize_rabin(automaton_);
    ProductModel p = mc_ ? product(*mc_, rabin) : product(*mdp_, rabin);
    std::vector<char> target(p.state_count(), 0);
    int component_count = 0;
    if (!is_mdp()) {
        for (const Component& bscc : bottom_sccs(p)) {
            ++component_count;
            std::uint64_t acc = component_acc_union(p, bscc);
            std::uint64_t rej = component_rej_union(p, bscc);
            if (acc & ~rej)
                for (int s : bscc.states)
                    target[s] = 1;
        }
    } else {
        component_count = static_cast<int>(max_end_components(p).size());
        for (int pair = 0; pair < rabin.acc_size(); ++pair) {
            std::uint64_t bit = std::uint64_t(1) << pair;
            ProductModel pruned = prune_rejecting(p, bit);
            for (const Component& mec : max_end_components(pruned))
                if (component_hits(pruned, mec, bit))
                    for (int s : mec.states)
                        target[s] = 1;
        }
    }
    CheckResult result;
    result.probability = reach_accepting(p, target);
    result.mode = is_mdp() ? "max" : "exact";
    result.layers.rabin = component_count;
    result.components = component_count;
    result.states_explored = p.state_count();
    return result;
}

CheckResult Engine::model_check() {
    if (options_.method == EngineOptions::Method::rabin_oracle)
        return rabin_oracle_check();

    std::vector<ComponentVerdict> verdicts = compute_accepting_components();
    std::vector<char> target(product_.state_count(), 0);
    CheckResult result;
    for (const ComponentVerdict& v : verdicts) {
        switch (v.decided_by) {
        case Layer::subset: ++result.layers.subset; break;
        case Layer::breakpoint: ++result.layers.breakpoint; break;
        case Layer::multibreakpoint: ++result.layers.multibreakpoint; break;
        case Layer::rabin: ++result.layers.rabin; break;
        }
        if (v.accepting)
            for (int s : components_[v.component].states)
                target[s] = 1;
    }
    result.probability = reach_accepting(product_, target);
    result.mode = is_mdp() ? "max" : "exact";
    result.components = static_cast<int>(components_.size());
    result.states_explored = product_.state_count();
    return result;
}

CheckResult model_check(const MarkovChain& mc, const Ngba& automaton,
                        const EngineOptions& options) {
    Engine engine(mc, automaton, options);
    return engine.model_check();
}

CheckResult model_check(const Mdp& mdp, const Ngba& automaton,
                        const EngineOptions& options) {
    Engine engine(mdp, automaton, options);
    return engine.model_check();
}

CheckResult model_check_ltl(const MarkovChain& mc, const LtlFormula& formula,
                            const EngineOptions& options) {
    Alphabet alphabet(collect_propositions(formula));
    CheckResult result = model_check(mc, translate_ltl_to_ngba(formula, alphabet),
                                     options);
    return result;
}

CheckResult model_check_ltl(const Mdp& mdp, const LtlFormula& formula,
                            const EngineOptions& options, bool minimize) {
    Alphabet alphabet(collect_propositions(formula));
    if (!minimize)
        return model_check(mdp, translate_ltl_to_ngba(formula, alphabet), options);
    // Infimum through the complement: inf P(φ) = 1 - sup P(¬φ).
    CheckResult result = model_check(
        mdp, translate_ltl_to_ngba(nnf_negated(formula), alphabet), options);
    result.probability = std::min(1.0, std::max(0.0, 1.0 - result.probability));
    result.mode = "min";
    return result;
}

}  // namespace pmc

#include "pmc/graph.hh"

#include <algorithm>
#include <cassert>

namespace pmc {

namespace {

constexpr double mass_tolerance = 1e-9;

bool full_mass(const ProductChoice& c) {
    return ProductModel::choice_mass(c) > 1.0 - mass_tolerance;
}

// Iterative Tarjan. `use_choice(state, position)` filters the edge relation.
template <typename ChoiceFilter>
std::vector<std::vector<int>> tarjan(const ProductModel& product,
                                     const std::vector<int>& domain,
                                     ChoiceFilter use_choice) {
    const int n = product.state_count();
    std::vector<char> in_domain(n, 0);
    for (int s : domain)
        in_domain[s] = 1;

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> scc_stack;
    std::vector<std::vector<int>> out;
    int next_index = 0;

    struct Frame {
        int state;
        std::size_t choice;
        std::size_t edge;
    };
    std::vector<Frame> frames;

    for (int root : domain) {
        if (index[root] != -1)
            continue;
        index[root] = low[root] = next_index++;
        on_stack[root] = 1;
        scc_stack.push_back(root);
        frames.push_back({root, 0, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& row = product.rows[f.state];
            bool descended = false;
            while (f.choice < row.size()) {
                if (!use_choice(f.state, static_cast<int>(f.choice))) {
                    ++f.choice;
                    f.edge = 0;
                    continue;
                }
                const auto& edges = row[f.choice].edges;
                if (f.edge >= edges.size()) {
                    ++f.choice;
                    f.edge = 0;
                    continue;
                }
                int dst = edges[f.edge++].dst;
                if (!in_domain[dst])
                    continue;
                if (index[dst] == -1) {
                    index[dst] = low[dst] = next_index++;
                    on_stack[dst] = 1;
                    scc_stack.push_back(dst);
                    frames.push_back({dst, 0, 0});
                    descended = true;
                    break;
                }
                if (on_stack[dst])
                    low[f.state] = std::min(low[f.state], index[dst]);
            }
            if (descended)
                continue;
            if (f.choice >= row.size()) {
                int v = f.state;
                if (low[v] == index[v]) {
                    std::vector<int> scc;
                    while (true) {
                        int u = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[u] = 0;
                        scc.push_back(u);
                        if (u == v)
                            break;
                    }
                    std::sort(scc.begin(), scc.end());
                    out.push_back(std::move(scc));
                }
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().state] = std::min(low[frames.back().state], low[v]);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace

bool Component::contains(int state) const {
    return std::binary_search(states.begin(), states.end(), state);
}

int Component::position_of(int state) const {
    auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
        return -1;
    return static_cast<int>(it - states.begin());
}

std::vector<Component> sccs(const ProductModel& product) {
    std::vector<int> domain(product.state_count());
    for (int i = 0; i < product.state_count(); ++i)
        domain[i] = i;
    std::vector<Component> out;
    for (auto& scc : tarjan(product, domain, [](int, int) { return true; })) {
        Component comp;
        comp.states = std::move(scc);
        comp.enabled.resize(comp.states.size());
        for (std::size_t i = 0; i < comp.states.size(); ++i)
            for (std::size_t c = 0; c < product.rows[comp.states[i]].size(); ++c)
                comp.enabled[i].push_back(static_cast<int>(c));
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<Component> bottom_sccs(const ProductModel& product) {
    std::vector<Component> out;
    for (Component& comp : sccs(product)) {
        bool bottom = true;
        bool has_edge = false;
        for (int s : comp.states) {
            if (product.rows[s].empty()) {
                bottom = false;  // absorbing state
                break;
            }
            for (const ProductChoice& choice : product.rows[s]) {
                if (!full_mass(choice)) {
                    bottom = false;  // leaks into the sink
                    break;
                }
                for (const ProductEdge& e : choice.edges) {
                    if (!comp.contains(e.dst)) {
                        bottom = false;
                        break;
                    }
                    has_edge = true;
                }
                if (!bottom)
                    break;
            }
            if (!bottom)
                break;
        }
        if (bottom && has_edge)
            out.push_back(std::move(comp));
    }
    return out;
}

std::vector<Component> max_end_components(const ProductModel& product) {
    std::vector<Component> out;
    std::vector<std::vector<int>> pending;
    {
        std::vector<int> all(product.state_count());
        for (int i = 0; i < product.state_count(); ++i)
            all[i] = i;
        pending.push_back(std::move(all));
    }

    const int n = product.state_count();
    std::vector<char> member(n, 0);
    while (!pending.empty()) {
        std::vector<int> set = std::move(pending.back());
        pending.pop_back();

        for (int s : set)
            member[s] = 1;
        // Keep only choices staying inside the set with full mass; drop
        // states left without choices until stable.
        std::vector<std::vector<int>> allowed(set.size());
        bool changed = true;
        std::vector<char> dropped(n, 0);
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < set.size(); ++i) {
                int s = set[i];
                if (dropped[s])
                    continue;
                allowed[i].clear();
                for (std::size_t c = 0; c < product.rows[s].size(); ++c) {
                    const ProductChoice& choice = product.rows[s][c];
                    if (!full_mass(choice))
                        continue;
                    bool inside = true;
                    for (const ProductEdge& e : choice.edges) {
                        if (!member[e.dst] || dropped[e.dst]) {
                            inside = false;
                            break;
                        }
                    }
                    if (inside)
                        allowed[i].push_back(static_cast<int>(c));
                }
                if (allowed[i].empty()) {
                    dropped[s] = 1;
                    changed = true;
                }
            }
        }

        std::vector<int> alive;
        for (int s : set)
            if (!dropped[s])
                alive.push_back(s);
        for (int s : set)
            member[s] = 0;

        if (alive.empty())
            continue;
        std::vector<std::vector<int>> allowed_of(n);
        for (std::size_t i = 0; i < set.size(); ++i)
            if (!dropped[set[i]])
                allowed_of[set[i]] = allowed[i];

        auto filter = [&](int s, int c) {
            const auto& ok = allowed_of[s];
            return std::find(ok.begin(), ok.end(), c) != ok.end();
        };
        std::vector<std::vector<int>> parts = tarjan(product, alive, filter);

        if (parts.size() == 1 && parts[0].size() == alive.size() &&
            alive.size() == set.size()) {
            // Stable and strongly connected: a maximal end component,
            // provided it sustains at least one transition.
            bool has_choice = false;
            for (int s : alive)
                if (!allowed_of[s].empty())
                    has_choice = true;
            // Singletons need a self-loop choice to be an end component.
            if (alive.size() == 1) {
                has_choice = false;
                for (int c : allowed_of[alive[0]])
                    for (const ProductEdge& e : product.rows[alive[0]][c].edges)
                        if (e.dst == alive[0])
                            has_choice = true;
            }
            if (has_choice) {
                Component comp;
                comp.states = alive;
                for (int s : alive)
                    comp.enabled.push_back(allowed_of[s]);
                out.push_back(std::move(comp));
            }
            continue;
        }
        for (auto& part : parts)
            pending.push_back(std::move(part));
    }

    std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
        return a.states.front() < b.states.front();
    });
    return out;
}

std::vector<char> prob0_reach(const ProductModel& product,
                              const std::vector<char>& target) {
    const int n = product.state_count();
    // Backward reachability needs predecessor lists.
    std::vector<std::vector<int>> preds(n);
    for (int s = 0; s < n; ++s)
        for (const ProductChoice& choice : product.rows[s])
            for (const ProductEdge& e : choice.edges)
                preds[e.dst].push_back(s);
    std::vector<char> can_reach(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (target[s]) {
            can_reach[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : preds[s]) {
            if (!can_reach[p]) {
                can_reach[p] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<char> out(n, 0);
    for (int s = 0; s < n; ++s)
        out[s] = !can_reach[s];
    return out;
}

namespace {

std::vector<char> prob1_reach_mc(const ProductModel& product,
                                 const std::vector<char>& target) {
    const int n = product.state_count();
    std::vector<char> zero = prob0_reach(product, target);
    // States that leak probability (to the sink or by being absorbing)
    // cannot reach the target almost surely.
    std::vector<char> bad(n, 0);
    for (int s = 0; s < n; ++s) {
        if (target[s])
            continue;
        if (zero[s])
            bad[s] = 1;
        if (product.rows[s].empty() || !full_mass(product.rows[s][0]))
            bad[s] = 1;
    }
    // Probability 1 iff no target-avoiding path into a bad state.
    std::vector<std::vector<int>> preds(n);
    for (int s = 0; s < n; ++s) {
        if (target[s])
            continue;  // target treated as absorbing
        for (const ProductChoice& choice : product.rows[s])
            for (const ProductEdge& e : choice.edges)
                preds[e.dst].push_back(s);
    }
    std::vector<char> tainted(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (bad[s]) {
            tainted[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : preds[s]) {
            if (!tainted[p] && !target[p]) {
                tainted[p] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<char> out(n, 0);
    for (int s = 0; s < n; ++s)
        out[s] = !tainted[s];
    return out;
}

std::vector<char> prob1_reach_mdp(const ProductModel& product,
                                  const std::vector<char>& target) {
    const int n = product.state_count();
    std::vector<char> in_z(n, 1);
    while (true) {
        // Least fixpoint: reach the target via choices confined to Z.
        std::vector<char> in_y(n, 0);
        bool grew = true;
        while (grew) {
            grew = false;
            for (int s = 0; s < n; ++s) {
                if (in_y[s])
                    continue;
                if (target[s]) {
                    in_y[s] = 1;
                    grew = true;
                    continue;
                }
                for (const ProductChoice& choice : product.rows[s]) {
                    if (!full_mass(choice))
                        continue;
                    bool confined = true, touches = false;
                    for (const ProductEdge& e : choice.edges) {
                        if (!in_z[e.dst])
                            confined = false;
                        if (in_y[e.dst])
                            touches = true;
                    }
                    if (confined && touches) {
                        in_y[s] = 1;
                        grew = true;
                        break;
                    }
                }
            }
        }
        if (in_y == in_z)
            return in_z;
        in_z = std::move(in_y);
    }
}

}  // namespace

std::vector<char> prob1_reach(const ProductModel& product,
                              const std::vector<char>& target) {
    return product.is_mdp ? prob1_reach_mdp(product, target)
                          : prob1_reach_mc(product, target);
}

std::vector<char> safe_region(const ProductModel& product, const Component& component,
                              const std::vector<char>& alive,
                              const std::vector<char>& bad) {
    const int n = product.state_count();
    std::vector<char> in(n, 0);
    for (int s : component.states)
        if (alive[s] && !bad[s])
            in[s] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < component.states.size(); ++i) {
            int s = component.states[i];
            if (!in[s])
                continue;
            bool has_safe_choice = false;
            for (int c : component.enabled[i]) {
                bool inside = true;
                for (const ProductEdge& e : product.rows[s][c].edges) {
                    if (!in[e.dst]) {
                        inside = false;
                        break;
                    }
                }
                if (inside) {
                    has_safe_choice = true;
                    break;
                }
            }
            if (!has_safe_choice) {
                in[s] = 0;
                changed = true;
            }
        }
    }
    return in;
}

}  // namespace pmc

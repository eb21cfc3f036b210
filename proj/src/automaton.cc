#include "pmc/automaton.hh"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "pmc/error.hh"

namespace pmc {

Ngba::Ngba(Alphabet alphabet, int state_count, Bitset initial,
           std::vector<Transition> transitions,
           std::vector<std::vector<Transition>> accepting_sets)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      acc_count_(accepting_sets.size()),
      initial_(std::move(initial)) {
    if (state_count_ <= 0)
        throw InputError("automaton needs at least one state");
    if (acc_count_ == 0)
        throw InputError("generalized Büchi automaton needs at least one accepting set");
    if (acc_count_ > 32)
        throw InputError("too many accepting sets");
    if (initial_.size() != static_cast<std::size_t>(state_count_) || initial_.none())
        throw InputError("initial state set must be a non-empty subset of the states");

    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
    transitions_ = std::move(transitions);

    auto check = [&](const Transition& t) {
        if (t.src < 0 || t.src >= state_count_ || t.dst < 0 || t.dst >= state_count_)
            throw InputError("transition endpoint out of range");
        if (t.symbol >= alphabet_.symbol_count())
            throw InputError("transition symbol out of range");
    };
    for (const Transition& t : transitions_)
        check(t);

    transition_acc_.assign(transitions_.size(), 0);
    for (std::size_t j = 0; j < acc_count_; ++j) {
        for (const Transition& t : accepting_sets[j]) {
            check(t);
            auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
            if (it == transitions_.end() || *it != t)
                throw InputError("accepting set contains a non-transition");
            transition_acc_[it - transitions_.begin()] |= std::uint32_t(1) << j;
        }
    }

    by_state_.resize(state_count_);
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const Transition& t = transitions_[i];
        auto& groups = by_state_[t.src];
        if (groups.empty() || groups.back().symbol != t.symbol) {
            groups.push_back({t.symbol, Bitset(state_count_),
                              std::vector<Bitset>(acc_count_, Bitset(state_count_))});
        }
        EdgeGroup& g = groups.back();
        g.all.set(t.dst);
        for (std::size_t j = 0; j < acc_count_; ++j)
            if ((transition_acc_[i] >> j) & 1u)
                g.acc[j].set(t.dst);
    }
}

std::vector<Transition> Ngba::accepting_set(int j) const {
    std::vector<Transition> out;
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        if ((transition_acc_[i] >> j) & 1u)
            out.push_back(transitions_[i]);
    return out;
}

const Ngba::EdgeGroup* Ngba::group(int state, Symbol symbol) const {
    const auto& groups = by_state_[state];
    auto it = std::lower_bound(groups.begin(), groups.end(), symbol,
                               [](const EdgeGroup& g, Symbol s) { return g.symbol < s; });
    if (it == groups.end() || it->symbol != symbol)
        return nullptr;
    return &*it;
}

Bitset Ngba::successors(int state, Symbol symbol) const {
    if (const EdgeGroup* g = group(state, symbol))
        return g->all;
    return Bitset(state_count_);
}

Bitset Ngba::successors(const Bitset& from, Symbol symbol) const {
    Bitset out(state_count_);
    from.for_each([&](std::size_t q) {
        if (const EdgeGroup* g = group(static_cast<int>(q), symbol))
            out |= g->all;
    });
    return out;
}

Bitset Ngba::acc_successors(const Bitset& from, Symbol symbol, int j) const {
    Bitset out(state_count_);
    from.for_each([&](std::size_t q) {
        if (const EdgeGroup* g = group(static_cast<int>(q), symbol))
            out |= g->acc[j];
    });
    return out;
}

bool Ngba::has_transition(int src, Symbol symbol, int dst) const {
    const EdgeGroup* g = group(src, symbol);
    return g && g->all.test(dst);
}

std::uint32_t Ngba::acc_mask(int src, Symbol symbol, int dst) const {
    Transition t{src, symbol, dst};
    auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
    if (it == transitions_.end() || *it != t)
        return 0;
    return transition_acc_[it - transitions_.begin()];
}

bool Ngba::is_deterministic() const {
    if (initial_.count() != 1)
        return false;
    for (const auto& groups : by_state_)
        for (const EdgeGroup& g : groups)
            if (g.all.count() > 1)
                return false;
    return true;
}

DetAutomaton::DetAutomaton(Alphabet alphabet, int state_count, int initial,
                           Acceptance kind, int acc_size)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      initial_(initial),
      kind_(kind),
      acc_size_(acc_size),
      edges_(state_count) {
    if (state_count_ <= 0 || initial_ < 0 || initial_ >= state_count_)
        throw InputError("invalid deterministic automaton shape");
    if (acc_size_ < 0)
        throw InputError("negative acceptance size");
    // Set and pair memberships live in 64-bit masks; parity priorities do not.
    if (kind_ != Acceptance::parity && acc_size_ > 64)
        throw InputError("unsupported acceptance size (at most 64 sets/pairs)");
}

void DetAutomaton::add_edge(int src, const DetEdge& edge) {
    assert(src >= 0 && src < state_count_);
    assert(edge.dst >= 0 && edge.dst < state_count_);
    auto& row = edges_[src];
    auto it = std::lower_bound(row.begin(), row.end(), edge.symbol,
                               [](const DetEdge& e, Symbol s) { return e.symbol < s; });
    if (it != row.end() && it->symbol == edge.symbol)
        throw InputError("duplicate edge breaks determinism");
    row.insert(it, edge);
}

const DetEdge* DetAutomaton::edge(int state, Symbol symbol) const {
    const auto& row = edges_[state];
    auto it = std::lower_bound(row.begin(), row.end(), symbol,
                               [](const DetEdge& e, Symbol s) { return e.symbol < s; });
    if (it == row.end() || it->symbol != symbol)
        return nullptr;
    return &*it;
}

std::optional<int> DetAutomaton::successor(int state, Symbol symbol) const {
    const DetEdge* e = edge(state, symbol);
    if (!e)
        return std::nullopt;
    return e->dst;
}

std::size_t DetAutomaton::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : edges_)
        n += row.size();
    return n;
}

namespace {

void check_word(const Alphabet& alphabet, const LassoWord& word) {
    if (word.period.empty())
        throw InputError("lasso word needs a non-empty period");
    for (Symbol s : word.prefix)
        if (s >= alphabet.symbol_count())
            throw InputError("lasso symbol outside the automaton alphabet");
    for (Symbol s : word.period)
        if (s >= alphabet.symbol_count())
            throw InputError("lasso symbol outside the automaton alphabet");
}

}  // namespace

bool lasso_member_ngba(const Ngba& automaton, const LassoWord& word) {
    check_word(automaton.alphabet(), word);
    const std::size_t slots = word.length();
    const int n = automaton.state_count();
    const std::size_t nodes = slots * static_cast<std::size_t>(n);
    auto node = [&](std::size_t pos, int q) { return pos * n + q; };

    // Reachability from the initial layer.
    std::vector<char> reach(nodes, 0);
    std::vector<std::size_t> stack;
    automaton.initial().for_each([&](std::size_t q) {
        std::size_t v = node(0, static_cast<int>(q));
        if (!reach[v]) {
            reach[v] = 1;
            stack.push_back(v);
        }
    });
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        std::size_t pos = v / n;
        int q = static_cast<int>(v % n);
        std::size_t npos = word.next(pos);
        automaton.successors(q, word.at(pos)).for_each([&](std::size_t q2) {
            std::size_t u = node(npos, static_cast<int>(q2));
            if (!reach[u]) {
                reach[u] = 1;
                stack.push_back(u);
            }
        });
    }

    // Iterative Tarjan over the reachable nodes; a reachable SCC whose
    // internal transitions together hit every accepting set witnesses
    // membership.
    const std::uint32_t full = automaton.acc_count() >= 32
                                   ? ~std::uint32_t(0)
                                   : (std::uint32_t(1) << automaton.acc_count()) - 1;
    std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
    std::vector<char> on_stack(nodes, 0);
    std::vector<std::size_t> scc_stack;
    int next_index = 0, next_comp = 0;

    struct Frame {
        std::size_t v;
        std::size_t succ_at;
        std::vector<std::size_t> succs;
    };
    std::vector<Frame> frames;

    auto successors_of = [&](std::size_t v) {
        std::vector<std::size_t> out;
        std::size_t pos = v / n;
        int q = static_cast<int>(v % n);
        std::size_t npos = word.next(pos);
        automaton.successors(q, word.at(pos)).for_each([&](std::size_t q2) {
            out.push_back(node(npos, static_cast<int>(q2)));
        });
        return out;
    };

    for (std::size_t root = 0; root < nodes; ++root) {
        if (!reach[root] || index[root] != -1)
            continue;
        frames.push_back({root, 0, successors_of(root)});
        index[root] = low[root] = next_index++;
        on_stack[root] = 1;
        scc_stack.push_back(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.succ_at < f.succs.size()) {
                std::size_t u = f.succs[f.succ_at++];
                if (index[u] == -1) {
                    index[u] = low[u] = next_index++;
                    on_stack[u] = 1;
                    scc_stack.push_back(u);
                    frames.push_back({u, 0, successors_of(u)});
                } else if (on_stack[u]) {
                    low[f.v] = std::min(low[f.v], index[u]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        std::size_t u = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[u] = 0;
                        comp[u] = next_comp;
                        if (u == f.v)
                            break;
                    }
                    ++next_comp;
                }
                std::size_t v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }

    std::vector<std::uint32_t> comp_mask(next_comp, 0);
    std::vector<char> comp_has_cycle(next_comp, 0);
    for (std::size_t v = 0; v < nodes; ++v) {
        if (!reach[v] || comp[v] == -1)
            continue;
        std::size_t pos = v / n;
        int q = static_cast<int>(v % n);
        std::size_t npos = word.next(pos);
        Symbol s = word.at(pos);
        automaton.successors(q, s).for_each([&](std::size_t q2) {
            std::size_t u = node(npos, static_cast<int>(q2));
            if (comp[u] == comp[v]) {
                comp_has_cycle[comp[v]] = 1;
                comp_mask[comp[v]] |= automaton.acc_mask(q, s, static_cast<int>(q2));
            }
        });
    }
    for (int c = 0; c < next_comp; ++c)
        if (comp_has_cycle[c] && comp_mask[c] == full)
            return true;
    return false;
}

std::vector<const DetEdge*> lasso_cycle(const DetAutomaton& automaton,
                                        const LassoWord& word) {
    check_word(automaton.alphabet(), word);
    const std::size_t slots = word.length();
    // Visit order index per (position, state); -1 = unseen.
    std::vector<std::vector<int>> seen(slots,
                                       std::vector<int>(automaton.state_count(), -1));
    std::vector<const DetEdge*> trail;
    std::size_t pos = 0;
    int state = automaton.initial();
    int step = 0;
    while (seen[pos][state] == -1) {
        seen[pos][state] = step++;
        const DetEdge* e = automaton.edge(state, word.at(pos));
        if (!e)
            return {};  // blocked run
        trail.push_back(e);
        state = e->dst;
        pos = word.next(pos);
    }
    int cycle_start = seen[pos][state];
    return std::vector<const DetEdge*>(trail.begin() + cycle_start, trail.end());
}

bool lasso_run_deterministic(const DetAutomaton& automaton, const LassoWord& word) {
    std::vector<const DetEdge*> cycle = lasso_cycle(automaton, word);
    if (cycle.empty())
        return false;
    switch (automaton.kind()) {
    case Acceptance::generalized_buchi: {
        std::uint64_t mask = 0;
        for (const DetEdge* e : cycle)
            mask |= e->acc_bits;
        const std::uint64_t full = automaton.acc_size() >= 64
                                       ? ~std::uint64_t(0)
                                       : (std::uint64_t(1) << automaton.acc_size()) - 1;
        return mask == full;
    }
    case Acceptance::rabin: {
        std::uint64_t inf_acc = 0, inf_rej = 0;
        for (const DetEdge* e : cycle) {
            inf_acc |= e->acc_bits;
            inf_rej |= e->rej_bits;
        }
        return (inf_acc & ~inf_rej) != 0;
    }
    case Acceptance::parity: {
        int min_pri = cycle.front()->priority;
        for (const DetEdge* e : cycle)
            min_pri = std::min(min_pri, e->priority);
        return min_pri % 2 == 0;
    }
    }
    return false;
}

std::optional<int> lasso_limit_priority(const DetAutomaton& automaton,
                                        const LassoWord& word) {
    std::vector<const DetEdge*> cycle = lasso_cycle(automaton, word);
    if (cycle.empty())
        return std::nullopt;
    int min_pri = cycle.front()->priority;
    for (const DetEdge* e : cycle)
        min_pri = std::min(min_pri, e->priority);
    return min_pri;
}

}  // namespace pmc

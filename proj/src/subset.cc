#include "pmc/subset.hh"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace pmc {

const SubsetAutomaton::Edge* SubsetAutomaton::edge(int id, Symbol symbol) const {
    const auto& row = edges_[id];
    auto it = std::lower_bound(row.begin(), row.end(), symbol,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    if (it == row.end() || it->symbol != symbol)
        return nullptr;
    return &*it;
}

int SubsetAutomaton::find_state(const Bitset& set) const {
    for (int i = 0; i < state_count(); ++i)
        if (states_[i] == set)
            return i;
    return -1;
}

const SubsetAutomaton::Edge& SubsetAutomaton::global_edge(int edge_id) const {
    const auto& [state, offset] = edge_index_[edge_id];
    return edges_[state][offset];
}

int SubsetAutomaton::global_edge_id(int state, Symbol symbol) const {
    const auto& row = edges_[state];
    auto it = std::lower_bound(row.begin(), row.end(), symbol,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    if (it == row.end() || it->symbol != symbol)
        return -1;
    return edge_base_[state] + static_cast<int>(it - row.begin());
}

DetAutomaton SubsetAutomaton::as_deterministic(bool over) const {
    DetAutomaton det(alphabet_, state_count(), 0, Acceptance::generalized_buchi,
                     acc_count_);
    for (int s = 0; s < state_count(); ++s)
        for (const Edge& e : edges_[s])
            det.add_edge(s, {e.symbol, e.dst, over ? e.over_mask : e.under_mask, 0, 0});
    return det;
}

SubsetAutomaton build_subset(const Ngba& automaton) {
    SubsetAutomaton out;
    out.alphabet_ = automaton.alphabet();
    out.acc_count_ = automaton.acc_count();

    std::unordered_map<Bitset, int, BitsetHash> ids;
    auto intern = [&](const Bitset& set) {
        auto it = ids.find(set);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(out.states_.size());
        ids.emplace(set, id);
        out.states_.push_back(set);
        out.edges_.emplace_back();
        return id;
    };

    intern(automaton.initial());
    const Symbol symbols = static_cast<Symbol>(automaton.alphabet().symbol_count());
    for (int id = 0; id < static_cast<int>(out.states_.size()); ++id) {
        const Bitset src = out.states_[id];
        for (Symbol s = 0; s < symbols; ++s) {
            Bitset dst = automaton.successors(src, s);
            if (dst.none())
                continue;  // blocked letter
            std::uint32_t over = 0, under = 0;
            for (int j = 0; j < out.acc_count_; ++j) {
                bool all = true, some = false;
                src.for_each([&](std::size_t q) {
                    dst.for_each([&](std::size_t q2) {
                        std::uint32_t mask = automaton.acc_mask(
                            static_cast<int>(q), s, static_cast<int>(q2));
                        if ((mask >> j) & 1u)
                            some = true;
                        else
                            all = false;
                    });
                });
                if (some)
                    over |= std::uint32_t(1) << j;
                if (all)
                    under |= std::uint32_t(1) << j;
            }
            // Intern first: it may grow the edge table.
            int dst_id = intern(dst);
            out.edges_[id].push_back({s, dst_id, over, under});
        }
    }

    for (int s = 0; s < out.state_count(); ++s) {
        out.edge_base_.push_back(static_cast<int>(out.edge_index_.size()));
        for (std::size_t off = 0; off < out.edges_[s].size(); ++off)
            out.edge_index_.push_back({s, static_cast<int>(off)});
    }
    return out;
}

ComponentClass classify_component_subset(const std::vector<int>& component_edges,
                                         const SubsetAutomaton& subset) {
    std::uint32_t over_seen = 0, under_seen = 0;
    for (int edge_id : component_edges) {
        const SubsetAutomaton::Edge& e = subset.global_edge(edge_id);
        over_seen |= e.over_mask;
        under_seen |= e.under_mask;
    }
    const std::uint32_t full = subset.acc_count() >= 32
                                   ? ~std::uint32_t(0)
                                   : (std::uint32_t(1) << subset.acc_count()) - 1;
    if (under_seen == full)
        return ComponentClass::accepting;
    if (over_seen != full)
        return ComponentClass::rejecting;
    return ComponentClass::unknown;
}

}  // namespace pmc

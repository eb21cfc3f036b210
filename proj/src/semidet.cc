#include "pmc/semidet.hh"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

#include "pmc/error.hh"

namespace pmc {

namespace {

bool bp_state_less(const BreakpointState& a, const BreakpointState& b) {
    if (int c = a.reached.compare(b.reached))
        return c < 0;
    if (a.index != b.index)
        return a.index < b.index;
    return a.commitment.compare(b.commitment) < 0;
}

}  // namespace

SemiDetAutomaton::SemiDetAutomaton(Ngba automaton)
    : automaton_(std::move(automaton)), initial_part_(build_subset(automaton_)) {
    if (automaton_.state_count() > 18)
        throw InputError("semi-determinization is limited to 18 automaton states");
}

long long SemiDetAutomaton::final_part_size() const {
    long long pow3 = 1, pow2 = 1;
    for (int i = 0; i < automaton_.state_count(); ++i) {
        pow3 *= 3;
        pow2 *= 2;
    }
    return static_cast<long long>(k()) * (pow3 - pow2);
}

int SemiDetAutomaton::bp_id(const BreakpointState& state) {
    assert(state.reached.any() && state.commitment.is_subset_of(state.reached) &&
           state.commitment != state.reached);
    auto it = bp_ids_.find(state);
    if (it != bp_ids_.end())
        return it->second;
    int id = static_cast<int>(bp_states_.size());
    bp_ids_.emplace(state, id);
    bp_states_.push_back(state);
    bp_edges_.emplace_back(alphabet().symbol_count());
    bp_edge_known_.emplace_back(alphabet().symbol_count(), 0);
    return id;
}

std::optional<SemiDetAutomaton::BpEdge> SemiDetAutomaton::bp_step(int id,
                                                                  Symbol symbol) {
    if (!bp_edge_known_[id][symbol]) {
        std::optional<BreakpointStep> step =
            bp_successor(bp_states_[id], symbol, automaton_);
        bp_edge_known_[id][symbol] = 1;
        if (step) {
            // Intern first: it may grow the edge tables.
            int dst = bp_id(step->state);
            bp_edges_[id][symbol] = BpEdge{dst, step->accepting};
        }
    }
    return bp_edges_[id][symbol];
}

bool SemiDetAutomaton::transit(int subset_id, Symbol symbol,
                               const BreakpointState& target) const {
    const SubsetAutomaton::Edge* e = initial_part_.edge(subset_id, symbol);
    if (!e)
        return false;
    return target.reached.any() &&
           target.reached.is_subset_of(initial_part_.state_set(e->dst));
}

const std::vector<int>& SemiDetAutomaton::transit_targets(int subset_id,
                                                          Symbol symbol) {
    long long key = (static_cast<long long>(subset_id) << 32) | symbol;
    auto cached = transit_cache_.find(key);
    if (cached != transit_cache_.end())
        return cached->second;

    const SubsetAutomaton::Edge* e = initial_part_.edge(subset_id, symbol);
    std::vector<int> out;
    if (!e)
        return transit_cache_.emplace(key, std::move(out)).first->second;
    std::vector<int> support = initial_part_.state_set(e->dst).to_vector();
    if (support.size() > 16)
        throw InputError("transit target enumeration is limited to 16 states");
    const int n = automaton_.state_count();
    std::vector<BreakpointState> targets;
    for (std::uint32_t rbits = 1; rbits < (1u << support.size()); ++rbits) {
        Bitset reached(n);
        for (std::size_t i = 0; i < support.size(); ++i)
            if ((rbits >> i) & 1u)
                reached.set(support[i]);
        // C ranges over strict subsets of R.
        for (std::uint32_t cbits = 0; cbits < (1u << support.size()); ++cbits) {
            if ((cbits & rbits) != cbits || cbits == rbits)
                continue;
            Bitset commitment(n);
            for (std::size_t i = 0; i < support.size(); ++i)
                if ((cbits >> i) & 1u)
                    commitment.set(support[i]);
            for (int j = 0; j < k(); ++j)
                targets.push_back({reached, j, commitment});
        }
    }
    std::sort(targets.begin(), targets.end(), bp_state_less);
    out.reserve(targets.size());
    for (const BreakpointState& t : targets)
        out.push_back(bp_id(t));
    return transit_cache_.emplace(key, std::move(out)).first->second;
}

ParityState parity_initial(const SemiDetAutomaton& sd) {
    return {sd.initial_part().initial(), {}};
}

ParityStep parity_step(SemiDetAutomaton& sd, const ParityState& state,
                       Symbol symbol) {
    const long long undefined = sd.final_part_size() + 1;

    // Subset part update; a blocked subset run goes blank.
    int next_subset = -1;
    if (state.subset >= 0) {
        if (const SubsetAutomaton::Edge* e = sd.initial_part().edge(state.subset, symbol))
            next_subset = e->dst;
    }

    const int m = static_cast<int>(state.slots.size());
    std::vector<int> g(m, -1);
    long long a = undefined;
    for (int j = 0; j < m; ++j) {
        std::optional<SemiDetAutomaton::BpEdge> e = sd.bp_step(state.slots[j], symbol);
        if (e) {
            g[j] = e->dst;
            if (e->accepting && a == undefined)
                a = j + 1;
        }
    }

    // Blank duplicate targets, keeping the lowest slot.
    std::vector<int> g_dedup(g);
    long long d = undefined;
    for (int j = 0; j < m; ++j) {
        for (int h = 0; h < j; ++h) {
            if (g[h] == g[j]) {
                g_dedup[j] = -1;
                break;
            }
        }
        if (g_dedup[j] == -1 && d == undefined)
            d = j + 1;
    }

    ParityState next;
    next.subset = next_subset;
    std::unordered_set<int> present;
    for (int j = 0; j < m; ++j) {
        if (g_dedup[j] != -1) {
            next.slots.push_back(g_dedup[j]);
            present.insert(g_dedup[j]);
        }
    }
    if (state.subset >= 0) {
        for (int target : sd.transit_targets(state.subset, symbol))
            if (present.insert(target).second)
                next.slots.push_back(target);
    }

    long long priority = d <= a ? 2 * d - 1 : 2 * a;
    return {std::move(next), static_cast<int>(priority)};
}

DetAutomaton determinize_parity(SemiDetAutomaton& sd, int max_states) {
    const long long max_priority = 2 * (sd.final_part_size() + 1) - 1;
    if (max_priority > (1ll << 30))
        throw InputError("parity determinization priority range too large");

    std::vector<ParityState> states;
    std::unordered_map<ParityState, int, ParityStateHash> ids;
    states.push_back(parity_initial(sd));
    ids.emplace(states[0], 0);

    struct RawEdge {
        int src;
        Symbol symbol;
        int dst;
        int priority;
    };
    std::vector<RawEdge> raw;

    const Symbol symbols = static_cast<Symbol>(sd.alphabet().symbol_count());
    for (std::size_t at = 0; at < states.size(); ++at) {
        for (Symbol s = 0; s < symbols; ++s) {
            ParityStep step = parity_step(sd, states[at], s);
            auto [it, fresh] = ids.emplace(step.state, static_cast<int>(states.size()));
            if (fresh) {
                if (static_cast<int>(states.size()) >= max_states)
                    throw InputError("parity determinization exceeded the state budget");
                states.push_back(std::move(step.state));
            }
            raw.push_back({static_cast<int>(at), s, it->second, step.priority});
        }
    }

    DetAutomaton det(sd.alphabet(), static_cast<int>(states.size()), 0,
                     Acceptance::parity, static_cast<int>(max_priority) + 1);
    for (const RawEdge& e : raw)
        det.add_edge(e.src, {e.symbol, e.dst, 0, 0, e.priority});
    return det;
}

namespace {

// Deterministic breakpoint run over the suffix lasso; accepting iff the
// limit cycle contains a breakpoint edge.
bool bp_run_accepts(SemiDetAutomaton& sd, int bp_start, const LassoWord& word) {
    std::unordered_map<long long, int> seen;
    std::vector<char> accepting_trail;
    std::size_t pos = 0;
    int state = bp_start;
    int step_no = 0;
    while (true) {
        long long key = (static_cast<long long>(pos) << 32) | static_cast<unsigned>(state);
        auto [it, fresh] = seen.emplace(key, step_no);
        if (!fresh) {
            for (std::size_t i = it->second; i < accepting_trail.size(); ++i)
                if (accepting_trail[i])
                    return true;
            return false;
        }
        std::optional<SemiDetAutomaton::BpEdge> e = sd.bp_step(state, word.at(pos));
        if (!e)
            return false;
        accepting_trail.push_back(e->accepting);
        state = e->dst;
        pos = word.next(pos);
        ++step_no;
    }
}

// The lasso suffix starting at unrolled position t+0.
LassoWord suffix_lasso(const LassoWord& word, std::size_t t) {
    LassoWord out;
    if (t < word.prefix.size()) {
        out.prefix.assign(word.prefix.begin() + t, word.prefix.end());
        out.period = word.period;
        return out;
    }
    std::size_t shift = (t - word.prefix.size()) % word.period.size();
    out.period.reserve(word.period.size());
    for (std::size_t i = 0; i < word.period.size(); ++i)
        out.period.push_back(word.period[(shift + i) % word.period.size()]);
    return out;
}

}  // namespace

bool lasso_member_semidet(SemiDetAutomaton& sd, const LassoWord& word) {
    // Follow the deterministic initial part; at every distinct
    // (position, subset state) pair, try all transit departures.
    std::unordered_set<long long> seen;
    std::size_t pos = 0;
    int subset = sd.initial_part().initial();
    while (true) {
        long long key = (static_cast<long long>(pos) << 32) | static_cast<unsigned>(subset);
        if (!seen.insert(key).second)
            return false;  // initial-part cycle closed without acceptance
        Symbol sym = word.at(pos);
        std::size_t next_pos = word.next(pos);
        for (int target : sd.transit_targets(subset, sym)) {
            if (bp_run_accepts(sd, target, suffix_lasso(word, next_pos)))
                return true;
        }
        const SubsetAutomaton::Edge* e = sd.initial_part().edge(subset, sym);
        if (!e)
            return false;  // initial part blocked and no transit succeeded
        subset = e->dst;
        pos = next_pos;
    }
}

bool lasso_member_parity_of_semidet(SemiDetAutomaton& sd, const LassoWord& word) {
    std::vector<int> priorities;
    // (position, state) pairs already visited, bucketed by position.
    std::unordered_map<std::size_t, std::vector<std::pair<ParityState, int>>> visited;
    ParityState state = parity_initial(sd);
    std::size_t pos = 0;
    int step_no = 0;
    while (true) {
        auto& bucket = visited[pos];
        int cycle_start = -1;
        for (const auto& [old_state, old_step] : bucket) {
            if (old_state == state) {
                cycle_start = old_step;
                break;
            }
        }
        if (cycle_start >= 0) {
            int min_pri = priorities[cycle_start];
            for (std::size_t i = cycle_start; i < priorities.size(); ++i)
                min_pri = std::min(min_pri, priorities[i]);
            return min_pri % 2 == 0;
        }
        bucket.push_back({state, step_no});
        ParityStep step = parity_step(sd, state, word.at(pos));
        priorities.push_back(step.priority);
        state = std::move(step.state);
        pos = word.next(pos);
        ++step_no;
    }
}

}  // namespace pmc

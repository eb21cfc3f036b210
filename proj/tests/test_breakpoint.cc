#include "doctest.h"
#include "pmc/breakpoint.hh"
#include "pmc/subset.hh"
#include "support.hh"

using namespace pmc;
using namespace pmc::testing;

namespace {

Bitset of(std::initializer_list<int> bits, int n = 3) {
    Bitset b(n);
    for (int i : bits)
        b.set(i);
    return b;
}

}  // namespace

TEST_CASE("single breakpoint steps on the running example") {
    Ngba b = example_ngba();
    const int x = 0, y = 1;

    // ({x},1,∅) --a--> ({y,z},1,{y}), not accepting.
    BreakpointState s0{of({x}), 0, of({})};
    auto step = bp_successor(s0, sym_a, b);
    REQUIRE(step);
    CHECK(step->state.reached == of({1, 2}));
    CHECK(step->state.index == 0);
    CHECK(step->state.commitment == of({y}));
    CHECK_FALSE(step->accepting);
    CHECK(step->rejecting);  // the carried commitment was empty

    // ({y,z},1,{y}) --c--> ({x},2,∅), accepting.
    auto step2 = bp_successor(*&step->state, sym_c, b);
    REQUIRE(step2);
    CHECK(step2->state.reached == of({x}));
    CHECK(step2->state.index == 1);
    CHECK(step2->state.commitment == of({}));
    CHECK(step2->accepting);
    CHECK_FALSE(step2->rejecting);

    // ({y,z},2,∅) --b--> ({x},1,∅), accepting: the index wraps around.
    BreakpointState s3{of({1, 2}), 1, of({})};
    auto step3 = bp_successor(s3, sym_b, b);
    REQUIRE(step3);
    CHECK(step3->state.reached == of({x}));
    CHECK(step3->state.index == 0);
    CHECK(step3->accepting);

    // Blocked when the reached set dies.
    CHECK_FALSE(bp_successor(s0, sym_b, b));
}

TEST_CASE("reachable breakpoint fragment of the running example") {
    Ngba b = example_ngba();
    BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
    // ({x},1,∅), ({y,z},1,{y}), ({x},2,∅), ({y,z},2,∅).
    REQUIRE(bp.state_count() == 4);
    CHECK(bp.find_state({of({0}), 0, of({})}) == 0);
    CHECK(bp.find_state({of({1, 2}), 0, of({1})}) >= 0);
    CHECK(bp.find_state({of({0}), 1, of({})}) >= 0);
    CHECK(bp.find_state({of({1, 2}), 1, of({})}) >= 0);

    int accepting_edges = 0, rejecting_edges = 0;
    for (int s = 0; s < bp.state_count(); ++s) {
        for (const BreakpointAutomaton::Edge& e : bp.edges(s)) {
            accepting_edges += e.accepting;
            rejecting_edges += e.rejecting;
        }
    }
    CHECK(accepting_edges == 2);  // the c and b breakpoint transitions
    CHECK(rejecting_edges == 4);
}

TEST_CASE("universal acceptance fires on every step") {
    Alphabet ab({"a"});
    // Both letters loop and every transition is accepting.
    std::vector<Transition> trans = {{0, 0, 0}, {0, 1, 0}};
    Ngba b(ab, 1, Bitset::singleton(1, 0), trans, {trans});
    BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
    for (int s = 0; s < bp.state_count(); ++s)
        for (const BreakpointAutomaton::Edge& e : bp.edges(s))
            CHECK(e.accepting);
}

TEST_CASE("breakpoint states stay within the k*3^n bound and keep C strictly inside R") {
    Rng rng(fuzz_seed() + 9);
    for (int round = 0; round < 120; ++round) {
        Ngba b = random_ngba(rng, 5, 2, 2);
        BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
        long long bound = b.acc_count();
        for (int i = 0; i < b.state_count(); ++i)
            bound *= 3;
        CHECK(bp.state_count() <= bound);
        for (int s = 0; s < bp.state_count(); ++s) {
            const BreakpointState& state = bp.state(s);
            CHECK(state.reached.any());
            CHECK(state.commitment.is_subset_of(state.reached));
            CHECK(state.commitment != state.reached);
        }
    }
}

TEST_CASE("dropping the commitment projects onto the subset construction") {
    Rng rng(fuzz_seed() + 10);
    for (int round = 0; round < 60; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        SubsetAutomaton s = build_subset(b);
        for (int i = 0; i < 20; ++i) {
            LassoWord w = random_lasso(rng, b.alphabet(), 5);
            BreakpointState bp_state = initial_breakpoint(b);
            int subset_state = s.initial();
            bool bp_alive = true;
            for (std::size_t pos = 0; pos < 2 * w.length(); ++pos) {
                Symbol sym = w.at(pos % w.length());
                auto step = bp_successor(bp_state, sym, b);
                const SubsetAutomaton::Edge* edge = s.edge(subset_state, sym);
                CHECK(step.has_value() == (edge != nullptr));
                if (!step) {
                    bp_alive = false;
                    break;
                }
                bp_state = step->state;
                subset_state = edge->dst;
                CHECK(bp_state.reached == s.state_set(subset_state));
            }
            (void)bp_alive;
        }
    }
}

TEST_CASE("language sandwich including the breakpoint automata") {
    Rng rng(fuzz_seed() + 11);
    for (int round = 0; round < 120; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        SubsetAutomaton s = build_subset(b);
        BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
        DetAutomaton s_under = s.as_deterministic(false);
        DetAutomaton s_over = s.as_deterministic(true);
        DetAutomaton bp_under = bp.as_deterministic(false);
        DetAutomaton bp_over = bp.as_deterministic(true);
        for (int i = 0; i < 40; ++i) {
            LassoWord w = random_lasso(rng, b.alphabet(), 5);
            bool in_su = lasso_run_deterministic(s_under, w);
            bool in_bpu = lasso_run_deterministic(bp_under, w);
            bool in_b = lasso_member_ngba(b, w);
            bool in_bpo = lasso_run_deterministic(bp_over, w);
            bool in_so = lasso_run_deterministic(s_over, w);
            if (in_su)
                CHECK(in_bpu);
            if (in_bpu)
                CHECK(in_b);
            if (in_b) {
                CHECK(in_bpo);
                CHECK(in_so);
            }
        }
    }
}

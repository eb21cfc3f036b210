#include <algorithm>

#include "doctest.h"
#include "pmc/history_tree.hh"
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

bool has_name(const std::vector<NodeName>& names, const NodeName& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

TEST_CASE("initial history trees") {
    Ngba b = example_ngba();
    HistoryTree t = initial_history_tree(b);
    CHECK(t.node_count() == 1);
    CHECK(t.name(0).empty());
    CHECK(t.reached() == of({0}));
    CHECK(t.index(0) == 0);

    Bitset all(3);
    all.set(0);
    all.set(1);
    all.set(2);
    CHECK(history_tree_with_root(b, all).reached() == all);
}

TEST_CASE("successor steps of the running example") {
    Ngba b = example_ngba();
    const int x = 0, y = 1;

    // (ε,{x},1) --a--> root {y,z} with child 0 labelled {y}; the new node
    // resets its pair.
    HistoryTree t0 = initial_history_tree(b);
    auto step = history_tree_successor(t0, sym_a, b);
    REQUIRE(step);
    CHECK(step->tree.node_count() == 2);
    CHECK(step->tree.reached() == of({1, 2}));
    CHECK(step->tree.label(1) == of({y}));
    CHECK(step->tree.index(0) == 0);
    CHECK(step->tree.index(1) == 0);
    CHECK(step->accepting.empty());
    CHECK(has_name(step->rejecting, NodeName{0}));
    CHECK(has_name(step->stable, NodeName{}));

    // Two-node tree --c--> (ε,{x},2): the child's labels caught up with the
    // root, the root accepts.
    auto step2 = history_tree_successor(step->tree, sym_c, b);
    REQUIRE(step2);
    CHECK(step2->tree.node_count() == 1);
    CHECK(step2->tree.reached() == of({x}));
    CHECK(step2->tree.index(0) == 1);
    CHECK(has_name(step2->accepting, NodeName{}));
    CHECK_FALSE(has_name(step2->rejecting, NodeName{}));

    // (ε,{y,z},2) --b--> (ε,{x},1): accepting again, index wraps.
    HistoryTree t3({NodeName{}}, {of({1, 2})}, {1});
    auto step3 = history_tree_successor(t3, sym_b, b);
    REQUIRE(step3);
    CHECK(step3->tree.node_count() == 1);
    CHECK(step3->tree.reached() == of({x}));
    CHECK(step3->tree.index(0) == 0);
    CHECK(has_name(step3->accepting, NodeName{}));

    // Blocked when the root label has no successors.
    CHECK_FALSE(history_tree_successor(t0, sym_b, b));
}

TEST_CASE("determinization of the running example") {
    Ngba b = example_ngba();
    DetAutomaton det = determinize_rabin(b);
    CHECK(det.state_count() == 4);
    CHECK(det.kind() == Acceptance::rabin);
    // Tracked names: ε and 0.
    CHECK(det.acc_size() == 2);
    // A_ε is non-empty, R_ε and A_0 are empty (pair 0 is ε, interned first).
    std::uint64_t acc_eps = 0, rej_eps = 0, acc_child = 0;
    for (int s = 0; s < det.state_count(); ++s) {
        for (const DetEdge& e : det.edges(s)) {
            acc_eps |= e.acc_bits & 1u;
            rej_eps |= e.rej_bits & 1u;
            acc_child |= e.acc_bits & 2u;
        }
    }
    CHECK(acc_eps == 1);
    CHECK(rej_eps == 0);
    CHECK(acc_child == 0);
}

TEST_CASE("reachable trees satisfy the label constraints") {
    Rng rng(fuzz_seed() + 12);
    for (int round = 0; round < 80; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        for (const HistoryTree& t :
             reachable_history_trees(b, initial_history_tree(b)))
            CHECK(t.well_formed());
    }
}

TEST_CASE("acceptance and rejection marks never share a node") {
    Rng rng(fuzz_seed() + 13);
    for (int round = 0; round < 80; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        for (const HistoryTree& t :
             reachable_history_trees(b, initial_history_tree(b))) {
            for (Symbol s = 0; s < b.alphabet().symbol_count(); ++s) {
                auto step = history_tree_successor(t, s, b);
                if (!step)
                    continue;
                for (const NodeName& name : step->accepting)
                    CHECK_FALSE(has_name(step->rejecting, name));
            }
        }
    }
}

TEST_CASE("the determinization preserves the language") {
    Rng rng(fuzz_seed() + 14);
    for (int round = 0; round < 80; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        DetAutomaton det = determinize_rabin(b);
        for (int i = 0; i < 50; ++i) {
            LassoWord w = random_lasso(rng, b.alphabet(), 5);
            CHECK(lasso_member_ngba(b, w) == lasso_run_deterministic(det, w));
        }
    }
}

TEST_CASE("deterministic Büchi automata survive determinization") {
    Rng rng(fuzz_seed() + 15);
    int checked = 0;
    for (int round = 0; round < 400 && checked < 40; ++round) {
        Ngba b = random_ngba(rng, 3, 1, 2);
        if (!b.is_deterministic())
            continue;
        ++checked;
        DetAutomaton det = determinize_rabin(b);
        for (int i = 0; i < 50; ++i) {
            LassoWord w = random_lasso(rng, b.alphabet(), 5);
            CHECK(lasso_member_ngba(b, w) == lasso_run_deterministic(det, w));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("a state accepts exactly the words of its reached set") {
    // From every reachable tree d, the automaton started at d accepts the
    // same lassos as the NGBA restarted from the reached set of d.
    Rng rng(fuzz_seed() + 16);
    for (int round = 0; round < 40; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        std::vector<HistoryTree> trees =
            reachable_history_trees(b, initial_history_tree(b));
        for (std::size_t at = 0; at < trees.size() && at < 6; ++at) {
            DetAutomaton from_tree = determinize_rabin(b, trees[at]);
            Ngba restarted(b.alphabet(), b.state_count(), trees[at].reached(),
                           b.transitions(),
                           [&] {
                               std::vector<std::vector<Transition>> acc;
                               for (int j = 0; j < b.acc_count(); ++j)
                                   acc.push_back(b.accepting_set(j));
                               return acc;
                           }());
            for (int i = 0; i < 30; ++i) {
                LassoWord w = random_lasso(rng, b.alphabet(), 4);
                CHECK(lasso_run_deterministic(from_tree, w) ==
                      lasso_member_ngba(restarted, w));
            }
        }
    }
}

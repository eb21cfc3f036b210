#include "doctest.h"
#include "pmc/error.hh"
#include "pmc/history_tree.hh"
#include "pmc/hoa.hh"
#include "pmc/semidet.hh"
#include "support.hh"

using namespace pmc;
using namespace pmc::testing;

namespace {

const char* minimal_hoa = R"(HOA: v1
States: 1
Start: 0
AP: 0
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0
[t] 0 {0}
--END--
)";

// The running example automaton over one-hot letters a, b, c.
const char* example_hoa = R"(HOA: v1
States: 3
Start: 0
AP: 3 "a" "b" "c"
acc-name: generalized-Buchi 2
Acceptance: 2 Inf(0)&Inf(1)
--BODY--
State: 0
[0&!1&!2] 1 {0}
[0&!1&!2] 2
State: 1
[!0&!1&2] 0
State: 2
[!0&1&!2] 0 {1}
--END--
)";

bool same_structure(const Ngba& a, const Ngba& b) {
    if (a.state_count() != b.state_count() || a.acc_count() != b.acc_count())
        return false;
    if (!(a.initial() == b.initial()))
        return false;
    if (a.transitions() != b.transitions())
        return false;
    for (const Transition& t : a.transitions())
        if (a.acc_mask(t.src, t.symbol, t.dst) != b.acc_mask(t.src, t.symbol, t.dst))
            return false;
    return true;
}

}  // namespace

TEST_CASE("minimal HOA with a true self-loop") {
    auto parsed = hoa_parse(minimal_hoa);
    REQUIRE(std::holds_alternative<Ngba>(parsed));
    const Ngba& b = std::get<Ngba>(parsed);
    CHECK(b.state_count() == 1);
    CHECK(b.acc_count() == 1);
    CHECK(b.transitions().size() == 1);
    CHECK(b.accepting_set(0).size() == 1);
}

TEST_CASE("parsing the running example") {
    auto parsed = hoa_parse(example_hoa);
    REQUIRE(std::holds_alternative<Ngba>(parsed));
    const Ngba& b = std::get<Ngba>(parsed);
    CHECK(b.state_count() == 3);
    CHECK(b.acc_count() == 2);
    CHECK(b.transitions().size() == 4);
    CHECK(b.accepting_set(0) == std::vector<Transition>{{0, sym_a, 1}});
    CHECK(b.accepting_set(1) == std::vector<Transition>{{2, sym_b, 0}});
    // Emit and reparse: same states, transitions, and acceptance.
    auto again = hoa_parse(hoa_emit(b));
    REQUIRE(std::holds_alternative<Ngba>(again));
    CHECK(std::get<Ngba>(again).transitions().size() == 4);
    CHECK(std::get<Ngba>(again).acc_count() == 2);
}

TEST_CASE("state-based acceptance is rejected") {
    const char* text = R"(HOA: v1
States: 1
Start: 0
AP: 0
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 {0}
[t] 0
--END--
)";
    CHECK_THROWS_WITH_AS(hoa_parse(text),
                         doctest::Contains("state-based acceptance"), InputError);
}

TEST_CASE("unsupported acceptance kinds are rejected") {
    const char* streett = R"(HOA: v1
States: 1
Start: 0
AP: 0
acc-name: Streett 1
Acceptance: 2 Fin(0)|Inf(1)
--BODY--
State: 0
[t] 0
--END--
)";
    CHECK_THROWS_WITH_AS(hoa_parse(streett),
                         doctest::Contains("unsupported acceptance kind"),
                         InputError);
}

TEST_CASE("too many atomic propositions") {
    std::string text = "HOA: v1\nStates: 1\nStart: 0\nAP: 17";
    for (int i = 0; i < 17; ++i)
        text += " \"p" + std::to_string(i) + "\"";
    text += "\nacc-name: Buchi\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n--END--\n";
    CHECK_THROWS_WITH_AS(hoa_parse(text), doctest::Contains("too many"), InputError);
}

TEST_CASE("empty automaton emits valid HOA") {
    Alphabet ab({"a"});
    Ngba b(ab, 1, Bitset::singleton(1, 0), {}, {{}});
    auto again = hoa_parse(hoa_emit(b));
    REQUIRE(std::holds_alternative<Ngba>(again));
    CHECK(std::get<Ngba>(again).transitions().empty());
}

TEST_CASE("rabin and parity round-trips") {
    Alphabet ab({"a"});
    DetAutomaton rabin(ab, 2, 0, Acceptance::rabin, 2);
    rabin.add_edge(0, {0, 1, 0b01, 0b10, 0});
    rabin.add_edge(1, {1, 0, 0b10, 0b01, 0});
    auto parsed = hoa_parse(hoa_emit(rabin));
    REQUIRE(std::holds_alternative<DetAutomaton>(parsed));
    const DetAutomaton& r2 = std::get<DetAutomaton>(parsed);
    CHECK(r2.kind() == Acceptance::rabin);
    CHECK(r2.acc_size() == 2);
    CHECK(r2.edge(0, 0)->acc_bits == 0b01);
    CHECK(r2.edge(0, 0)->rej_bits == 0b10);

    DetAutomaton parity(ab, 1, 0, Acceptance::parity, 4);
    parity.add_edge(0, {0, 0, 0, 0, 3});
    parity.add_edge(0, {1, 0, 0, 0, 2});
    auto parsed2 = hoa_parse(hoa_emit(parity));
    REQUIRE(std::holds_alternative<DetAutomaton>(parsed2));
    const DetAutomaton& p2 = std::get<DetAutomaton>(parsed2);
    CHECK(p2.kind() == Acceptance::parity);
    CHECK(p2.edge(0, 0)->priority == 3);
    CHECK(p2.edge(0, 1)->priority == 2);
}

TEST_CASE("exports of the derived automata round-trip") {
    Ngba b = std::get<Ngba>(hoa_parse(example_hoa));
    DetAutomaton rabin = determinize_rabin(b);
    auto rabin2 = hoa_parse(hoa_emit(rabin));
    REQUIRE(std::holds_alternative<DetAutomaton>(rabin2));
    CHECK(std::get<DetAutomaton>(rabin2).state_count() == rabin.state_count());
    CHECK(std::get<DetAutomaton>(rabin2).acc_size() == rabin.acc_size());

    SubsetAutomaton s = build_subset(b);
    auto subset2 = hoa_parse(hoa_emit(s.as_deterministic(true)));
    REQUIRE(std::holds_alternative<Ngba>(subset2));
    CHECK(std::get<Ngba>(subset2).state_count() == 2);

    SemiDetAutomaton sd(b);
    DetAutomaton parity = determinize_parity(sd);
    auto parity2 = hoa_parse(hoa_emit(parity));
    REQUIRE(std::holds_alternative<DetAutomaton>(parity2));
    const DetAutomaton& p2 = std::get<DetAutomaton>(parity2);
    CHECK(p2.kind() == Acceptance::parity);
    CHECK(p2.state_count() == parity.state_count());
    for (int st = 0; st < parity.state_count(); ++st)
        for (const DetEdge& e : parity.edges(st))
            CHECK(p2.edge(st, e.symbol)->priority == e.priority);
}

TEST_CASE("round-trip on random automata") {
    Rng rng(fuzz_seed() + 2);
    for (int round = 0; round < 500; ++round) {
        Ngba b = random_ngba(rng, 6, 3, 2);
        auto parsed = hoa_parse(hoa_emit(b));
        REQUIRE(std::holds_alternative<Ngba>(parsed));
        CHECK(same_structure(b, std::get<Ngba>(parsed)));
    }
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(hoa_parse("HOA: v2\n"), doctest::Contains("1:"), InputError);
    CHECK_THROWS_WITH_AS(hoa_parse("HOA: v1\nStates: 1\nStart: 0\nAP: 0\n"
                                   "acc-name: Buchi\nAcceptance: 1 Inf(0)\n"
                                   "--BODY--\nState: 0\n[t 0\n--END--\n"),
                         doctest::Contains("expected ']'"), InputError);
}

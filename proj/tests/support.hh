#ifndef PMC_TESTS_SUPPORT_HH
#define PMC_TESTS_SUPPORT_HH

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "pmc/automaton.hh"
#include "pmc/ltl.hh"
#include "pmc/model.hh"

namespace pmc::testing {

// Symbols over the one-hot alphabet [a, b, c].
inline constexpr Symbol sym_a = 1;
inline constexpr Symbol sym_b = 2;
inline constexpr Symbol sym_c = 4;

inline Alphabet abc_alphabet() { return Alphabet({"a", "b", "c"}); }

// The running example automaton: states x, y, z; x -a-> y in F_1,
// x -a-> z, y -c-> x, z -b-> x in F_2. Language: subset of (ab|ac)^ω where
// each b is eventually followed by a c and vice versa.
inline Ngba example_ngba() {
    const int x = 0, y = 1, z = 2;
    std::vector<Transition> trans = {
        {x, sym_a, y}, {x, sym_a, z}, {y, sym_c, x}, {z, sym_b, x}};
    return Ngba(abc_alphabet(), 3, Bitset::singleton(3, x), trans,
                {{{x, sym_a, y}}, {{z, sym_b, x}}});
}

// The running example Markov chain: states a, b, c labelled by themselves;
// a -> c with 2/3, a -> b with 1/3, b -> a, c -> a. Initial state a.
inline MarkovChain example_mc() {
    MarkovChain mc;
    mc.alphabet = abc_alphabet();
    mc.state_count = 3;
    mc.label = {sym_a, sym_b, sym_c};
    mc.initial = {1.0, 0.0, 0.0};
    mc.rows = {{{1, 1.0 / 3.0}, {2, 2.0 / 3.0}}, {{0, 1.0}}, {{0, 1.0}}};
    return mc;
}

// Büchi automaton for "infinitely many a" with a committed copy: state 0
// loops on everything and guesses a jump on a; state 1 only loops on a
// (accepting) and dies otherwise. Used by the MDP end-component example.
inline Ngba commit_inf_a_ngba(const Alphabet& alphabet) {
    std::vector<Transition> trans;
    std::vector<Transition> acc;
    for (Symbol s = 0; s < alphabet.symbol_count(); ++s) {
        trans.push_back({0, s, 0});
        if (s & 1u) {
            trans.push_back({0, s, 1});
            trans.push_back({1, s, 1});
            acc.push_back({1, s, 1});
        }
    }
    return Ngba(alphabet, 2, Bitset::singleton(2, 0), trans, {acc});
}

// Same language, but the committed copy survives non-a letters without
// accepting them; its Rabin product exhibits a rejecting and an accepting
// end component side by side.
inline Ngba inf_often_a_ngba(const Alphabet& alphabet) {
    std::vector<Transition> trans;
    std::vector<Transition> acc;
    for (Symbol s = 0; s < alphabet.symbol_count(); ++s) {
        trans.push_back({0, s, 0});
        trans.push_back({1, s, 1});
        if (s & 1u) {
            trans.push_back({0, s, 1});
            acc.push_back({1, s, 1});
        }
    }
    return Ngba(alphabet, 2, Bitset::singleton(2, 0), trans, {acc});
}

// The MDP from the multi-breakpoint example: c -> a -> {a | b}, b -> c,
// labelled by state names. State order c, b, a fixes the candidate
// enumeration of the decision procedure.
inline Mdp multibreakpoint_mdp() {
    Mdp mdp;
    mdp.alphabet = abc_alphabet();
    mdp.state_count = 3;
    const int c = 0, b = 1, a = 2;
    mdp.label = {sym_c, sym_b, sym_a};
    mdp.initial = {1.0, 0.0, 0.0};
    mdp.action_names = {"step", "loop", "reset"};
    mdp.rows.resize(3);
    mdp.rows[c] = {{0, {{a, 1.0}}}};
    mdp.rows[b] = {{0, {{c, 1.0}}}};
    mdp.rows[a] = {{1, {{a, 1.0}}}, {2, {{b, 1.0}}}};
    return mdp;
}

// Two-state MDP: m0 (labelled a) -> m1 (labelled b); m1 either loops or
// returns to m0.
inline Mdp loop_or_return_mdp() {
    Mdp mdp;
    mdp.alphabet = Alphabet({"a", "b"});
    mdp.state_count = 2;
    mdp.label = {1, 2};
    mdp.initial = {1.0, 0.0};
    mdp.action_names = {"go", "loop", "back"};
    mdp.rows.resize(2);
    mdp.rows[0] = {{0, {{1, 1.0}}}};
    mdp.rows[1] = {{1, {{1, 1.0}}}, {2, {{0, 1.0}}}};
    return mdp;
}

// Gives absorbing states a self-loop: all maximal paths become infinite, so
// a property and its complement split the full measure between them.
inline MarkovChain make_stochastic(MarkovChain mc) {
    for (int m = 0; m < mc.state_count; ++m)
        if (mc.rows[m].empty())
            mc.rows[m] = {{m, 1.0}};
    return mc;
}

inline std::uint64_t fuzz_seed() {
    if (const char* env = std::getenv("PMC_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0x5eed0cafe;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_) < p;
    }

    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    std::mt19937_64& raw() { return gen_; }

private:
    std::mt19937_64 gen_;
};

Ngba random_ngba(Rng& rng, int max_states, int max_acc, int max_props);
LassoWord random_lasso(Rng& rng, const Alphabet& alphabet, int max_len);
MarkovChain random_mc(Rng& rng, const Alphabet& alphabet, int max_states);
Mdp random_mdp(Rng& rng, const Alphabet& alphabet, int max_states, int max_actions);
LtlFormula random_ltl(Rng& rng, int size, int props);

}  // namespace pmc::testing

#endif

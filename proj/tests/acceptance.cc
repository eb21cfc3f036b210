// Acceptance suite: one pass/fail line per criterion. Exits non-zero when
// any criterion fails. Usage: pmc_acceptance <path-to-pmc-binary> <data-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pmc/engine.hh"
#include "pmc/error.hh"
#include "pmc/history_tree.hh"
#include "pmc/semidet.hh"
#include "support.hh"

using namespace pmc;
using namespace pmc::testing;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

struct CorpusEntry {
    Ngba ngba;
    std::vector<LassoWord> lassos;
};

// ---------------------------------------------------------------------------

void criterion_1_and_2(const std::vector<CorpusEntry>& corpus) {
    auto start = std::chrono::steady_clock::now();
    long violations = 0;
    for (const CorpusEntry& entry : corpus) {
        const Ngba& b = entry.ngba;
        SubsetAutomaton s = build_subset(b);
        BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
        DetAutomaton s_under = s.as_deterministic(false);
        DetAutomaton s_over = s.as_deterministic(true);
        DetAutomaton bp_under = bp.as_deterministic(false);
        DetAutomaton bp_over = bp.as_deterministic(true);
        for (const LassoWord& w : entry.lassos) {
            bool in_su = lasso_run_deterministic(s_under, w);
            bool in_bpu = lasso_run_deterministic(bp_under, w);
            bool in_b = lasso_member_ngba(b, w);
            bool in_bpo = lasso_run_deterministic(bp_over, w);
            bool in_so = lasso_run_deterministic(s_over, w);
            if (in_su && !in_bpu)
                ++violations;
            if (in_bpu && !in_b)
                ++violations;
            if (in_b && !(in_bpo && in_so))
                ++violations;
        }
    }
    double elapsed = seconds_since(start);
    report(1, "language sandwich S^u => BP^u => B => BP^o, S^o",
           violations == 0 && elapsed < 60.0,
           std::to_string(corpus.size()) + " automata x " +
               std::to_string(corpus.front().lassos.size()) + " lassos, " +
               std::to_string(violations) + " violations, " +
               std::to_string(elapsed) + " s");
}

void criterion_2(const std::vector<CorpusEntry>& corpus) {
    auto start = std::chrono::steady_clock::now();
    long violations = 0;
    for (const CorpusEntry& entry : corpus) {
        const Ngba& b = entry.ngba;
        DetAutomaton rabin = determinize_rabin(b);
        SemiDetAutomaton sd(b);
        for (const LassoWord& w : entry.lassos) {
            bool in_b = lasso_member_ngba(b, w);
            if (lasso_run_deterministic(rabin, w) != in_b)
                ++violations;
            if (lasso_member_semidet(sd, w) != in_b)
                ++violations;
            if (lasso_member_parity_of_semidet(sd, w) != in_b)
                ++violations;
        }
        // Restarting the determinization anywhere preserves the language of
        // the reached set (spot checks on a few states).
        std::vector<HistoryTree> trees =
            reachable_history_trees(b, initial_history_tree(b));
        for (std::size_t at = 0; at < trees.size() && at < 3; ++at) {
            DetAutomaton from_tree = determinize_rabin(b, trees[at]);
            std::vector<std::vector<Transition>> acc;
            for (int j = 0; j < b.acc_count(); ++j)
                acc.push_back(b.accepting_set(j));
            Ngba restarted(b.alphabet(), b.state_count(), trees[at].reached(),
                           b.transitions(), acc);
            for (std::size_t i = 0; i < entry.lassos.size(); i += 10) {
                if (lasso_run_deterministic(from_tree, entry.lassos[i]) !=
                    lasso_member_ngba(restarted, entry.lassos[i]))
                    ++violations;
            }
        }
    }
    report(2, "determinization equivalence det(B) = B = SD(B) = D(SD(B))",
           violations == 0,
           std::to_string(violations) + " violations, " +
               std::to_string(seconds_since(start)) + " s");
}

void criterion_3() {
    MarkovChain mc = example_mc();
    Engine engine(mc, example_ngba());
    bool ok = engine.components().size() == 1;
    ok = ok && engine.classify_subset(0) == ComponentClass::unknown;
    ok = ok && engine.classify_breakpoint(0) == ComponentClass::accepting;
    CheckResult result = engine.model_check();
    ok = ok && result.probability == 1.0;
    ok = ok && result.layers.breakpoint == 1;
    report(3, "worked example chain: subset unknown, breakpoint accepting, P = 1",
           ok, "P = " + std::to_string(result.probability));
}

void criterion_4() {
    SemiDetAutomaton sd(example_ngba());
    auto of = [](std::initializer_list<int> bits) {
        Bitset b(3);
        for (int i : bits)
            b.set(i);
        return b;
    };
    int x = sd.initial_part().find_state(of({0}));
    int yz = sd.initial_part().find_state(of({1, 2}));
    std::vector<int> f1 = {
        sd.bp_id({of({1, 2}), 0, of({1})}), sd.bp_id({of({1, 2}), 1, of({})}),
        sd.bp_id({of({1, 2}), 1, of({1})}), sd.bp_id({of({1, 2}), 0, of({})}),
        sd.bp_id({of({1, 2}), 0, of({2})}), sd.bp_id({of({1, 2}), 1, of({2})}),
        sd.bp_id({of({1}), 0, of({})}),     sd.bp_id({of({1}), 1, of({})}),
        sd.bp_id({of({2}), 0, of({})}),     sd.bp_id({of({2}), 1, of({})}),
    };
    std::vector<int> f2 = {sd.bp_id({of({0}), 0, of({})}),
                           sd.bp_id({of({0}), 1, of({})})};
    ParityStep to_x = parity_step(sd, {yz, f1}, sym_b);
    ParityStep to_yz = parity_step(sd, {x, f2}, sym_a);
    bool ok = to_x.priority == 3 && to_x.state.subset == x && to_x.state.slots == f2;
    ok = ok && to_yz.priority == 77 && to_yz.state.subset == yz;
    report(4, "parity construction reproduces the worked priorities 3 and 77", ok,
           "got " + std::to_string(to_x.priority) + " and " +
               std::to_string(to_yz.priority));
}

void criterion_5() {
    Mdp mdp = multibreakpoint_mdp();
    Ngba b = commit_inf_a_ngba(mdp.alphabet);
    Engine engine(mdp, b);
    bool ok = engine.components().size() == 1;
    MultiBreakpointOutcome out = engine.decide_multibreakpoint(0);
    ok = ok && out.accepting && out.attempts.size() == 3;
    auto model_of = [&](int product_state) {
        return engine.subset_product().states[product_state].first;
    };
    // States carry labels c, b, a at indices 0, 1, 2.
    ok = ok && out.attempts[0].status == MultiBreakpointAttempt::Status::failed &&
         model_of(out.attempts[0].product_state) == 0;
    ok = ok && out.attempts[1].status == MultiBreakpointAttempt::Status::eliminated &&
         model_of(out.attempts[1].product_state) == 1;
    ok = ok && out.attempts[2].status == MultiBreakpointAttempt::Status::succeeded &&
         model_of(out.attempts[2].product_state) == 2;
    ok = ok && out.witness && out.witness->first == 2 &&
         out.witness->second.reached == Bitset::singleton(2, 1);
    CheckResult result = engine.model_check();
    ok = ok && result.probability == 1.0;
    report(5,
           "MDP multi-breakpoint: (c,{x}) and (b,{x}) fail, (a,{x,y}) with {y} "
           "succeeds, max P = 1",
           ok, "P = " + std::to_string(result.probability));
}

void criterion_6() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(fuzz_seed() + 100);
    EngineOptions oracle;
    oracle.method = EngineOptions::Method::rabin_oracle;
    long violations = 0;
    double worst_mc = 0.0, worst_mdp = 0.0;
    for (int round = 0; round < 200; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        MarkovChain mc = random_mc(rng, b.alphabet(), 20);
        double lazy = model_check(mc, b).probability;
        double rabin = model_check(mc, b, oracle).probability;
        worst_mc = std::max(worst_mc, std::abs(lazy - rabin));
        if (std::abs(lazy - rabin) >= 1e-9)
            ++violations;
    }
    for (int round = 0; round < 100; ++round) {
        Ngba b = random_ngba(rng, 4, 2, 2);
        Mdp mdp = random_mdp(rng, b.alphabet(), 12, 3);
        double lazy = model_check(mdp, b).probability;
        double rabin = model_check(mdp, b, oracle).probability;
        worst_mdp = std::max(worst_mdp, std::abs(lazy - rabin));
        if (std::abs(lazy - rabin) >= 1e-6)
            ++violations;
    }
    double elapsed = seconds_since(start);
    report(6, "oracle equality of the lazy pipeline and the full Rabin product",
           violations == 0 && elapsed < 300.0,
           "max |diff| mc " + std::to_string(worst_mc) + ", mdp " +
               std::to_string(worst_mdp) + ", " + std::to_string(elapsed) + " s");
}

void criterion_7() {
    Rng rng(fuzz_seed() + 200);
    Alphabet ab({"a", "b"});
    long violations = 0;
    double worst = 0.0;
    for (int round = 0; round < 100; ++round) {
        LtlFormula f = random_ltl(rng, 6, 2);
        MarkovChain mc = make_stochastic(random_mc(rng, ab, 10));
        double pos = model_check_ltl(mc, f).probability;
        double neg = model_check_ltl(mc, ltl_not(f)).probability;
        worst = std::max(worst, std::abs(pos + neg - 1.0));
        if (std::abs(pos + neg - 1.0) > 1e-6)
            ++violations;
    }
    report(7, "complement sum P(f) + P(!f) = 1 on random LTL", violations == 0,
           "max deviation " + std::to_string(worst));
}

void criterion_8() {
    Rng rng(fuzz_seed() + 300);
    bool ok = true;
    for (int round = 0; round < 300; ++round) {
        Ngba b = random_ngba(rng, 6, 2, 2);
        SubsetAutomaton s = build_subset(b);
        long long subset_bound = (1ll << b.state_count()) - 1;
        if (s.state_count() > subset_bound)
            ok = false;
        BreakpointAutomaton bp = build_breakpoint(b, initial_breakpoint(b));
        long long bp_bound = b.acc_count();
        for (int i = 0; i < b.state_count(); ++i)
            bp_bound *= 3;
        if (bp.state_count() > bp_bound)
            ok = false;
    }
    report(8, "reachable counts within 2^n - 1 (subset) and k*3^n (breakpoint)", ok);
}

// --- CLI-level checks ------------------------------------------------------

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& command) {
    std::string out_file = "/tmp/pmc_acceptance_out";
    std::string err_file = "/tmp/pmc_acceptance_err";
    std::string full = command + " > " + out_file + " 2> " + err_file;
    int status = std::system(full.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream out(out_file), err(err_file);
    std::ostringstream o, e;
    o << out.rdbuf();
    e << err.rdbuf();
    r.out = o.str();
    r.err = e.str();
    return r;
}

void criterion_9(const std::string& pmc, const std::string& data) {
    std::string base = pmc + " --model " + data + "/me.tra --labels " + data +
                       "/me.lab --kind mc --hoa " + data + "/be.hoa --format json";
    RunResult first = run_cli(base);
    RunResult second = run_cli(base);
    std::string mdp_cmd = pmc + " --model " + data + "/mbp.tra --labels " + data +
                          "/mbp.lab --kind mdp --hoa " + data +
                          "/mbp.hoa --format json --stats";
    RunResult third = run_cli(mdp_cmd);
    RunResult fourth = run_cli(mdp_cmd);
    bool ok = first.exit_code == 0 && first.out == second.out && !first.out.empty();
    ok = ok && third.exit_code == 0 && third.out == fourth.out && !third.out.empty();
    report(9, "repeated runs emit byte-identical JSON", ok,
           first.out.substr(0, first.out.find('\n')));
}

void cli_conformance(const std::string& pmc, const std::string& data) {
    bool ok = true;
    std::string detail;

    // Probability of the worked example automaton on its chain: exactly 1.
    RunResult me = run_cli(pmc + " --model " + data + "/me.tra --labels " + data +
                           "/me.lab --kind mc --hoa " + data + "/be.hoa");
    if (me.exit_code != 0 || me.out != "1\n") {
        ok = false;
        detail += "[me/be gave '" + me.out + "' exit " +
                  std::to_string(me.exit_code) + "]";
    }

    // Missing --labels: exit 2 with a usage hint on stderr.
    RunResult missing = run_cli(pmc + " --model " + data + "/me.tra --kind mc --ltl a");
    if (missing.exit_code != 2 || missing.err.empty()) {
        ok = false;
        detail += "[missing --labels gave exit " +
                  std::to_string(missing.exit_code) + "]";
    }

    // Maximal probability of repeatedly seeing a on the two-action MDP.
    RunResult gfa = run_cli(pmc + " --model " + data + "/loop.tra --labels " + data +
                            "/loop.lab --kind mdp --mode max --ltl \"G F a\"");
    if (gfa.exit_code != 0 || gfa.out != "1\n") {
        ok = false;
        detail += "[G F a gave '" + gfa.out + "']";
    }

    std::printf("%s cli: probability output and exit codes%s%s\n",
                ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ", detail.c_str());
    if (!ok)
        ++failures;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: pmc_acceptance <pmc-binary> <data-dir>\n");
        return 2;
    }
    std::string pmc_bin = argv[1];
    std::string data = argv[2];

    // Shared fuzz corpus for the language criteria.
    Rng rng(fuzz_seed());
    std::vector<CorpusEntry> corpus;
    corpus.reserve(500);
    for (int i = 0; i < 500; ++i) {
        CorpusEntry entry{random_ngba(rng, 4, 2, 2), {}};
        entry.lassos.reserve(200);
        for (int j = 0; j < 200; ++j)
            entry.lassos.push_back(random_lasso(rng, entry.ngba.alphabet(), 6));
        corpus.push_back(std::move(entry));
    }

    criterion_1_and_2(corpus);
    criterion_2(corpus);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(pmc_bin, data);
    cli_conformance(pmc_bin, data);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

#include "support.hh"

namespace pmc::testing {

Ngba random_ngba(Rng& rng, int max_states, int max_acc, int max_props) {
    const int n = rng.uniform(1, max_states);
    const int k = rng.uniform(1, max_acc);
    const int props = rng.uniform(1, max_props);
    std::vector<std::string> names;
    for (int i = 0; i < props; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    Alphabet alphabet(std::move(names));

    std::vector<Transition> transitions;
    for (int src = 0; src < n; ++src)
        for (Symbol s = 0; s < alphabet.symbol_count(); ++s)
            for (int dst = 0; dst < n; ++dst)
                if (rng.chance(0.4))
                    transitions.push_back({src, s, dst});

    std::vector<std::vector<Transition>> acc(k);
    for (const Transition& t : transitions)
        for (int j = 0; j < k; ++j)
            if (rng.chance(0.35))
                acc[j].push_back(t);

    Bitset initial(n);
    for (int q = 0; q < n; ++q)
        if (rng.chance(0.4))
            initial.set(q);
    if (initial.none())
        initial.set(rng.uniform(0, n - 1));

    return Ngba(alphabet, n, initial, std::move(transitions), std::move(acc));
}

LassoWord random_lasso(Rng& rng, const Alphabet& alphabet, int max_len) {
    LassoWord w;
    const int prefix_len = rng.uniform(0, max_len);
    const int period_len = rng.uniform(1, max_len);
    const int symbols = static_cast<int>(alphabet.symbol_count());
    for (int i = 0; i < prefix_len; ++i)
        w.prefix.push_back(static_cast<Symbol>(rng.uniform(0, symbols - 1)));
    for (int i = 0; i < period_len; ++i)
        w.period.push_back(static_cast<Symbol>(rng.uniform(0, symbols - 1)));
    return w;
}

MarkovChain random_mc(Rng& rng, const Alphabet& alphabet, int max_states) {
    MarkovChain mc;
    mc.alphabet = alphabet;
    mc.state_count = rng.uniform(1, max_states);
    mc.initial.assign(mc.state_count, 0.0);
    mc.initial[0] = 1.0;
    const int symbols = static_cast<int>(alphabet.symbol_count());
    mc.rows.resize(mc.state_count);
    for (int m = 0; m < mc.state_count; ++m) {
        mc.label.push_back(static_cast<Symbol>(rng.uniform(0, symbols - 1)));
        if (mc.state_count > 1 && rng.chance(0.08))
            continue;  // absorbing state
        std::vector<int> succs;
        for (int m2 = 0; m2 < mc.state_count; ++m2)
            if (rng.chance(0.3))
                succs.push_back(m2);
        if (succs.empty())
            succs.push_back(rng.uniform(0, mc.state_count - 1));
        std::vector<double> weights;
        double total = 0.0;
        for (std::size_t i = 0; i < succs.size(); ++i) {
            weights.push_back(rng.uniform(1, 8));
            total += weights.back();
        }
        double used = 0.0;
        for (std::size_t i = 0; i < succs.size(); ++i) {
            double p = i + 1 == succs.size() ? 1.0 - used : weights[i] / total;
            used += p;
            mc.rows[m].push_back({succs[i], p});
        }
    }
    mc.validate();
    return mc;
}

Mdp random_mdp(Rng& rng, const Alphabet& alphabet, int max_states, int max_actions) {
    Mdp mdp;
    mdp.alphabet = alphabet;
    mdp.state_count = rng.uniform(1, max_states);
    mdp.initial.assign(mdp.state_count, 0.0);
    mdp.initial[0] = 1.0;
    for (int a = 0; a < max_actions; ++a)
        mdp.action_names.push_back("act" + std::to_string(a));
    const int symbols = static_cast<int>(alphabet.symbol_count());
    mdp.rows.resize(mdp.state_count);
    for (int m = 0; m < mdp.state_count; ++m) {
        mdp.label.push_back(static_cast<Symbol>(rng.uniform(0, symbols - 1)));
        const int actions = rng.uniform(1, max_actions);
        for (int a = 0; a < actions; ++a) {
            Mdp::Choice choice{a, {}};
            std::vector<int> succs;
            for (int m2 = 0; m2 < mdp.state_count; ++m2)
                if (rng.chance(0.3))
                    succs.push_back(m2);
            if (succs.empty())
                succs.push_back(rng.uniform(0, mdp.state_count - 1));
            std::vector<double> weights;
            double total = 0.0;
            for (std::size_t i = 0; i < succs.size(); ++i) {
                weights.push_back(rng.uniform(1, 8));
                total += weights.back();
            }
            double used = 0.0;
            for (std::size_t i = 0; i < succs.size(); ++i) {
                double p = i + 1 == succs.size() ? 1.0 - used : weights[i] / total;
                used += p;
                choice.dist.push_back({succs[i], p});
            }
            mdp.rows[m].push_back(std::move(choice));
        }
    }
    mdp.validate();
    return mdp;
}

}  // namespace pmc::testing

namespace pmc::testing {

LtlFormula random_ltl(Rng& rng, int size, int props) {
    if (size <= 1) {
        switch (rng.uniform(0, 3)) {
        case 0: return ltl_true();
        case 1: return ltl_false();
        default:
            return ltl_ap(std::string(1, static_cast<char>('a' + rng.uniform(0, props - 1))));
        }
    }
    switch (rng.uniform(0, 8)) {
    case 0: return ltl_not(random_ltl(rng, size - 1, props));
    case 1: return ltl_next(random_ltl(rng, size - 1, props));
    case 2: return ltl_eventually(random_ltl(rng, size - 1, props));
    case 3: return ltl_globally(random_ltl(rng, size - 1, props));
    case 4: {
        int ls = rng.uniform(1, size - 1);
        return ltl_and(random_ltl(rng, ls, props), random_ltl(rng, size - ls, props));
    }
    case 5: {
        int ls = rng.uniform(1, size - 1);
        return ltl_or(random_ltl(rng, ls, props), random_ltl(rng, size - ls, props));
    }
    case 6: {
        int ls = rng.uniform(1, size - 1);
        return ltl_until(random_ltl(rng, ls, props), random_ltl(rng, size - ls, props));
    }
    default: {
        int ls = rng.uniform(1, size - 1);
        return ltl_release(random_ltl(rng, ls, props), random_ltl(rng, size - ls, props));
    }
    }
}

}  // namespace pmc::testing

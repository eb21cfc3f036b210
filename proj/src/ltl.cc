#include "pmc/ltl.hh"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <unordered_map>

#include "pmc/error.hh"

namespace pmc {

namespace {

LtlFormula make(LtlOp op, std::string name, LtlFormula left, LtlFormula right) {
    return std::make_shared<const LtlNode>(
        LtlNode{op, std::move(name), std::move(left), std::move(right)});
}

}  // namespace

LtlFormula ltl_true() { return make(LtlOp::tt, "", nullptr, nullptr); }
LtlFormula ltl_false() { return make(LtlOp::ff, "", nullptr, nullptr); }
LtlFormula ltl_ap(const std::string& name) { return make(LtlOp::ap, name, nullptr, nullptr); }
LtlFormula ltl_not(LtlFormula f) { return make(LtlOp::not_, "", std::move(f), nullptr); }
LtlFormula ltl_and(LtlFormula a, LtlFormula b) {
    return make(LtlOp::and_, "", std::move(a), std::move(b));
}
LtlFormula ltl_or(LtlFormula a, LtlFormula b) {
    return make(LtlOp::or_, "", std::move(a), std::move(b));
}
LtlFormula ltl_next(LtlFormula f) { return make(LtlOp::next, "", std::move(f), nullptr); }
LtlFormula ltl_until(LtlFormula a, LtlFormula b) {
    return make(LtlOp::until, "", std::move(a), std::move(b));
}
LtlFormula ltl_release(LtlFormula a, LtlFormula b) {
    return make(LtlOp::release, "", std::move(a), std::move(b));
}
LtlFormula ltl_eventually(LtlFormula f) {
    return make(LtlOp::eventually, "", std::move(f), nullptr);
}
LtlFormula ltl_globally(LtlFormula f) {
    return make(LtlOp::globally, "", std::move(f), nullptr);
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t at = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw InputError("LTL syntax error at position " + std::to_string(at) +
                         ": " + message);
    }

    void skip_space() {
        while (at < text.size() && (text[at] == ' ' || text[at] == '\t'))
            ++at;
    }

    bool eat(char c) {
        skip_space();
        if (at < text.size() && text[at] == c) {
            ++at;
            return true;
        }
        return false;
    }

    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_';
    }

    std::string peek_word() {
        skip_space();
        std::size_t end = at;
        while (end < text.size() && ident_char(text[end]))
            ++end;
        return text.substr(at, end - at);
    }

    LtlFormula parse() {
        LtlFormula f = parse_or();
        skip_space();
        if (at != text.size())
            fail("trailing input");
        return f;
    }

    LtlFormula parse_or() {
        LtlFormula f = parse_and();
        while (eat('|'))
            f = ltl_or(f, parse_and());
        return f;
    }

    LtlFormula parse_and() {
        LtlFormula f = parse_binary_temporal();
        while (eat('&'))
            f = ltl_and(f, parse_binary_temporal());
        return f;
    }

    // U and R are right associative: a U b U c = a U (b U c).
    LtlFormula parse_binary_temporal() {
        LtlFormula f = parse_unary();
        skip_space();
        std::string word = peek_word();
        if (word == "U" || word == "R") {
            at += word.size();
            LtlFormula rhs = parse_binary_temporal();
            return word == "U" ? ltl_until(f, rhs) : ltl_release(f, rhs);
        }
        return f;
    }

    LtlFormula parse_unary() {
        skip_space();
        if (at >= text.size())
            fail("unexpected end of formula");
        if (eat('!'))
            return ltl_not(parse_unary());
        if (eat('(')) {
            LtlFormula f = parse_or();
            if (!eat(')'))
                fail("expected ')'");
            return f;
        }
        std::string word = peek_word();
        if (word.empty())
            fail(std::string("unexpected character '") + text[at] + "'");
        if (word == "X" || word == "F" || word == "G") {
            at += word.size();
            LtlFormula sub = parse_unary();
            if (word == "X")
                return ltl_next(sub);
            return word == "F" ? ltl_eventually(sub) : ltl_globally(sub);
        }
        if (word == "U" || word == "R")
            fail("'" + word + "' needs a left operand");
        at += word.size();
        if (word == "true" || word == "tt")
            return ltl_true();
        if (word == "false" || word == "ff")
            return ltl_false();
        return ltl_ap(word);
    }
};

int precedence(LtlOp op) {
    switch (op) {
    case LtlOp::or_: return 1;
    case LtlOp::and_: return 2;
    case LtlOp::until:
    case LtlOp::release: return 3;
    default: return 4;  // atoms and unary operators
    }
}

void print(const LtlFormula& f, std::string& out, int parent_prec) {
    int prec = precedence(f->op);
    bool parens = prec < parent_prec;
    if (parens)
        out += '(';
    switch (f->op) {
    case LtlOp::tt: out += "true"; break;
    case LtlOp::ff: out += "false"; break;
    case LtlOp::ap: out += f->name; break;
    case LtlOp::not_:
        out += '!';
        print(f->left, out, 4);
        break;
    case LtlOp::next:
        out += "X ";
        print(f->left, out, 4);
        break;
    case LtlOp::eventually:
        out += "F ";
        print(f->left, out, 4);
        break;
    case LtlOp::globally:
        out += "G ";
        print(f->left, out, 4);
        break;
    case LtlOp::and_:
        print(f->left, out, 2);
        out += " & ";
        print(f->right, out, 3);
        break;
    case LtlOp::or_:
        print(f->left, out, 1);
        out += " | ";
        print(f->right, out, 2);
        break;
    case LtlOp::until:
    case LtlOp::release:
        print(f->left, out, 4);
        out += f->op == LtlOp::until ? " U " : " R ";
        print(f->right, out, 3);
        break;
    }
    if (parens)
        out += ')';
}

}  // namespace

LtlFormula parse_ltl(const std::string& text) {
    Parser p{text};
    return p.parse();
}

std::string to_string(const LtlFormula& f) {
    std::string out;
    print(f, out, 0);
    return out;
}

namespace {

LtlFormula nnf_of(const LtlFormula& f, bool negated) {
    switch (f->op) {
    case LtlOp::tt:
        return negated ? ltl_false() : ltl_true();
    case LtlOp::ff:
        return negated ? ltl_true() : ltl_false();
    case LtlOp::ap:
        return negated ? ltl_not(f) : f;
    case LtlOp::not_:
        return nnf_of(f->left, !negated);
    case LtlOp::and_: {
        LtlFormula a = nnf_of(f->left, negated);
        LtlFormula b = nnf_of(f->right, negated);
        return negated ? ltl_or(a, b) : ltl_and(a, b);
    }
    case LtlOp::or_: {
        LtlFormula a = nnf_of(f->left, negated);
        LtlFormula b = nnf_of(f->right, negated);
        return negated ? ltl_and(a, b) : ltl_or(a, b);
    }
    case LtlOp::next:
        return ltl_next(nnf_of(f->left, negated));
    case LtlOp::until: {
        LtlFormula a = nnf_of(f->left, negated);
        LtlFormula b = nnf_of(f->right, negated);
        return negated ? ltl_release(a, b) : ltl_until(a, b);
    }
    case LtlOp::release: {
        LtlFormula a = nnf_of(f->left, negated);
        LtlFormula b = nnf_of(f->right, negated);
        return negated ? ltl_until(a, b) : ltl_release(a, b);
    }
    case LtlOp::eventually:
        // F a = true U a; ¬F a = false R ¬a.
        if (negated)
            return ltl_release(ltl_false(), nnf_of(f->left, true));
        return ltl_until(ltl_true(), nnf_of(f->left, false));
    case LtlOp::globally:
        if (negated)
            return ltl_until(ltl_true(), nnf_of(f->left, true));
        return ltl_release(ltl_false(), nnf_of(f->left, false));
    }
    return nullptr;
}

void collect_props(const LtlFormula& f, std::set<std::string>& out) {
    if (!f)
        return;
    if (f->op == LtlOp::ap)
        out.insert(f->name);
    collect_props(f->left, out);
    collect_props(f->right, out);
}

}  // namespace

LtlFormula nnf(const LtlFormula& f) { return nnf_of(f, false); }
LtlFormula nnf_negated(const LtlFormula& f) { return nnf_of(f, true); }

std::vector<std::string> collect_propositions(const LtlFormula& f) {
    std::set<std::string> props;
    collect_props(f, props);
    return std::vector<std::string>(props.begin(), props.end());
}

namespace {

// Structural interning of NNF subformulas for the tableau.
struct FormulaPool {
    std::vector<LtlFormula> nodes;
    std::map<std::string, int> by_key;

    int intern(const LtlFormula& f) {
        std::string key = to_string(f);
        auto it = by_key.find(key);
        if (it != by_key.end())
            return it->second;
        int id = static_cast<int>(nodes.size());
        by_key.emplace(std::move(key), id);
        nodes.push_back(f);
        return id;
    }
};

using ObligationSet = std::vector<int>;  // sorted formula ids

struct TableauBranch {
    Symbol positive = 0;     // literals required true
    Symbol negative = 0;     // literals required false
    ObligationSet next;      // obligations shipped to the successor
    std::uint32_t fulfilled = 0;  // until ids satisfied on this branch
    std::uint32_t pending = 0;    // until ids postponed on this branch
    bool alive = true;
};

void insert_sorted(ObligationSet& set, int id) {
    auto it = std::lower_bound(set.begin(), set.end(), id);
    if (it == set.end() || *it != id)
        set.insert(it, id);
}

}  // namespace

Ngba translate_ltl_to_ngba(const LtlFormula& f, const Alphabet& alphabet) {
    LtlFormula normal = nnf(f);
    FormulaPool pool;
    int root = pool.intern(normal);

    // Until subformulas get stable indices as they are discovered during
    // expansion; they determine the accepting sets.
    std::map<int, int> until_index;
    auto until_id = [&](int formula_id) {
        auto it = until_index.find(formula_id);
        if (it != until_index.end())
            return it->second;
        int idx = static_cast<int>(until_index.size());
        if (idx >= 32)
            throw InputError("too many until subformulas");
        until_index.emplace(formula_id, idx);
        return idx;
    };

    // Expands one obligation set into saturated branches of literals and
    // next-step obligations.
    auto expand = [&](const ObligationSet& state) {
        std::vector<std::pair<ObligationSet, TableauBranch>> work;
        work.push_back({state, {}});
        std::vector<TableauBranch> done;
        while (!work.empty()) {
            auto [todo, branch] = std::move(work.back());
            work.pop_back();
            if (todo.empty()) {
                if ((branch.positive & branch.negative) == 0)
                    done.push_back(std::move(branch));
                continue;
            }
            int id = todo.back();
            todo.pop_back();
            // Copy: interning below may reallocate the pool.
            LtlFormula g = pool.nodes[id];
            switch (g->op) {
            case LtlOp::tt:
                work.push_back({std::move(todo), std::move(branch)});
                break;
            case LtlOp::ff:
                break;  // branch dies
            case LtlOp::ap: {
                int ap = alphabet.index_of(g->name);
                assert(ap >= 0);
                branch.positive |= Symbol(1) << ap;
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            case LtlOp::not_: {
                int ap = alphabet.index_of(g->left->name);
                assert(ap >= 0);
                branch.negative |= Symbol(1) << ap;
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            case LtlOp::and_: {
                ObligationSet t = std::move(todo);
                t.push_back(pool.intern(g->left));
                t.push_back(pool.intern(g->right));
                work.push_back({std::move(t), std::move(branch)});
                break;
            }
            case LtlOp::or_: {
                ObligationSet t1 = todo;
                t1.push_back(pool.intern(g->left));
                work.push_back({std::move(t1), branch});
                todo.push_back(pool.intern(g->right));
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            case LtlOp::next: {
                insert_sorted(branch.next, pool.intern(g->left));
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            case LtlOp::until: {
                int uidx = until_id(id);
                // Either the right side holds now (fulfilled) ...
                ObligationSet t1 = todo;
                TableauBranch b1 = branch;
                b1.fulfilled |= std::uint32_t(1) << uidx;
                t1.push_back(pool.intern(g->right));
                work.push_back({std::move(t1), std::move(b1)});
                // ... or the left side holds and the until is postponed.
                branch.pending |= std::uint32_t(1) << uidx;
                insert_sorted(branch.next, id);
                todo.push_back(pool.intern(g->left));
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            case LtlOp::release: {
                // a R b = b & (a | X(a R b)).
                ObligationSet t1 = todo;
                TableauBranch b1 = branch;
                t1.push_back(pool.intern(g->right));
                t1.push_back(pool.intern(g->left));
                work.push_back({std::move(t1), std::move(b1)});
                todo.push_back(pool.intern(g->right));
                insert_sorted(branch.next, id);
                work.push_back({std::move(todo), std::move(branch)});
                break;
            }
            default:
                assert(false && "non-NNF operator in tableau");
            }
        }
        return done;
    };

    // States are obligation sets; state 0 is {f}. Trivially true obligations
    // are dropped so the empty set doubles as the universal state.
    std::map<ObligationSet, int> state_ids;
    std::vector<ObligationSet> states;
    auto intern_state = [&](ObligationSet s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [&](int id) { return pool.nodes[id]->op == LtlOp::tt; }),
                s.end());
        auto it = state_ids.find(s);
        if (it != state_ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        states.push_back(s);
        state_ids.emplace(std::move(s), id);
        return id;
    };
    intern_state({root});

    struct RawTransition {
        int src;
        Symbol symbol;
        int dst;
        std::uint32_t fulfilled;
        std::uint32_t pending;
    };
    std::vector<RawTransition> raw;
    for (int id = 0; id < static_cast<int>(states.size()); ++id) {
        std::vector<TableauBranch> branches = expand(states[id]);
        for (const TableauBranch& b : branches) {
            int dst = intern_state(b.next);
            for (Symbol s = 0; s < alphabet.symbol_count(); ++s) {
                if ((s & b.positive) == b.positive && (s & b.negative) == 0)
                    raw.push_back({id, s, dst, b.fulfilled, b.pending});
            }
        }
    }

    const int k = std::max<std::size_t>(1, until_index.size());
    std::vector<Transition> transitions;
    std::vector<std::vector<Transition>> acc(k);
    std::set<std::tuple<int, Symbol, int>> seen;
    for (const RawTransition& t : raw) {
        // Merged parallel branches: a transition counts for accepting set j
        // when some generating branch did not postpone until j.
        std::tuple<int, Symbol, int> key{t.src, t.symbol, t.dst};
        if (seen.insert(key).second)
            transitions.push_back({t.src, t.symbol, t.dst});
    }
    if (until_index.empty()) {
        acc[0] = transitions;
    } else {
        std::map<std::tuple<int, Symbol, int>, std::uint32_t> not_pending;
        for (const RawTransition& t : raw) {
            std::tuple<int, Symbol, int> key{t.src, t.symbol, t.dst};
            auto [it, fresh] = not_pending.emplace(key, 0);
            it->second |= ~t.pending;
        }
        for (const Transition& t : transitions) {
            std::uint32_t mask = not_pending.at({t.src, t.symbol, t.dst});
            for (auto& [fid, uidx] : until_index)
                if ((mask >> uidx) & 1u)
                    acc[uidx].push_back(t);
        }
    }

    return Ngba(alphabet, static_cast<int>(states.size()),
                Bitset::singleton(states.size(), 0), std::move(transitions),
                std::move(acc));
}

Ngba translate_ltl_to_ngba(const LtlFormula& f) {
    return translate_ltl_to_ngba(f, Alphabet(collect_propositions(f)));
}

bool eval_ltl_on_lasso(const LtlFormula& f, const LassoWord& word,
                       const Alphabet& alphabet) {
    if (word.period.empty())
        throw InputError("lasso word needs a non-empty period");
    const std::size_t slots = word.length();

    // sat[position] per subformula, computed bottom-up; untils as least and
    // releases as greatest fixpoints over the folded positions.
    std::unordered_map<const LtlNode*, std::vector<char>> memo;

    auto eval = [&](auto&& self, const LtlFormula& g) -> const std::vector<char>& {
        auto it = memo.find(g.get());
        if (it != memo.end())
            return it->second;
        std::vector<char> sat(slots, 0);
        switch (g->op) {
        case LtlOp::tt:
            sat.assign(slots, 1);
            break;
        case LtlOp::ff:
            break;
        case LtlOp::ap: {
            int ap = alphabet.index_of(g->name);
            if (ap < 0)
                throw InputError("proposition '" + g->name + "' not in the alphabet");
            for (std::size_t p = 0; p < slots; ++p)
                sat[p] = (word.at(p) >> ap) & 1u;
            break;
        }
        case LtlOp::not_: {
            const std::vector<char>& sub = self(self, g->left);
            for (std::size_t p = 0; p < slots; ++p)
                sat[p] = !sub[p];
            break;
        }
        case LtlOp::and_: {
            const std::vector<char>& a = self(self, g->left);
            const std::vector<char>& b = self(self, g->right);
            for (std::size_t p = 0; p < slots; ++p)
                sat[p] = a[p] && b[p];
            break;
        }
        case LtlOp::or_: {
            const std::vector<char>& a = self(self, g->left);
            const std::vector<char>& b = self(self, g->right);
            for (std::size_t p = 0; p < slots; ++p)
                sat[p] = a[p] || b[p];
            break;
        }
        case LtlOp::next: {
            const std::vector<char>& sub = self(self, g->left);
            for (std::size_t p = 0; p < slots; ++p)
                sat[p] = sub[word.next(p)];
            break;
        }
        case LtlOp::until:
        case LtlOp::eventually: {
            const std::vector<char>* a = nullptr;
            if (g->op == LtlOp::until)
                a = &self(self, g->left);
            const std::vector<char>& b =
                self(self, g->op == LtlOp::until ? g->right : g->left);
            // Least fixpoint.
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t p = slots; p-- > 0;) {
                    char v = b[p] || ((!a || (*a)[p]) && sat[word.next(p)]);
                    if (v != sat[p]) {
                        sat[p] = v;
                        changed = true;
                    }
                }
            }
            break;
        }
        case LtlOp::release:
        case LtlOp::globally: {
            const std::vector<char>* a = nullptr;
            if (g->op == LtlOp::release)
                a = &self(self, g->left);
            const std::vector<char>& b =
                self(self, g->op == LtlOp::release ? g->right : g->left);
            // Greatest fixpoint.
            sat.assign(slots, 1);
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t p = 0; p < slots; ++p) {
                    char v = b[p] && ((a && (*a)[p]) || sat[word.next(p)]);
                    if (v != sat[p]) {
                        sat[p] = v;
                        changed = true;
                    }
                }
            }
            break;
        }
        }
        return memo.emplace(g.get(), std::move(sat)).first->second;
    };

    return eval(eval, f)[0];
}

}  // namespace pmc

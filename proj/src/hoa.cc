#include "pmc/hoa.hh"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "pmc/error.hh"

namespace pmc {

namespace {

struct Token {
    enum Kind { word, string, integer, punct, end } kind;
    std::string text;
    long value = 0;
    int line = 1, column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw InputError("HOA syntax error at " + std::to_string(current_.line) +
                         ":" + std::to_string(current_.column) + ": " + message);
    }

private:
    void advance() {
        while (at_ < text_.size()) {
            char c = text_[at_];
            if (c == '\n') {
                ++line_;
                column_ = 1;
                ++at_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++column_;
                ++at_;
            } else if (c == '/' && at_ + 1 < text_.size() && text_[at_ + 1] == '*') {
                skip_comment();
            } else {
                break;
            }
        }
        current_.line = line_;
        current_.column = column_;
        if (at_ >= text_.size()) {
            current_ = {Token::end, "", 0, line_, column_};
            return;
        }
        char c = text_[at_];
        if (c == '"') {
            std::size_t end = at_ + 1;
            std::string out;
            while (end < text_.size() && text_[end] != '"') {
                out += text_[end];
                ++end;
            }
            if (end >= text_.size())
                fail("unterminated string");
            current_ = {Token::string, out, 0, line_, column_};
            bump(end + 1 - at_);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = at_;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
                ++end;
            std::string digits = text_.substr(at_, end - at_);
            current_ = {Token::integer, digits, std::stol(digits), line_, column_};
            bump(end - at_);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            std::size_t end = at_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                    text_[end] == '_' || text_[end] == '-'))
                ++end;
            std::string w = text_.substr(at_, end - at_);
            // Header names carry a trailing colon.
            if (end < text_.size() && text_[end] == ':') {
                w += ':';
                ++end;
            }
            current_ = {Token::word, w, 0, line_, column_};
            bump(end - at_);
            return;
        }
        current_ = {Token::punct, std::string(1, c), 0, line_, column_};
        bump(1);
    }

    void skip_comment() {
        bump(2);
        while (at_ + 1 < text_.size() &&
               !(text_[at_] == '*' && text_[at_ + 1] == '/')) {
            if (text_[at_] == '\n') {
                ++line_;
                column_ = 1;
                ++at_;
            } else {
                bump(1);
            }
        }
        if (at_ + 1 >= text_.size())
            throw InputError("HOA syntax error: unterminated comment");
        bump(2);
    }

    void bump(std::size_t n) {
        at_ += n;
        column_ += static_cast<int>(n);
    }

    const std::string& text_;
    std::size_t at_ = 0;
    int line_ = 1, column_ = 1;
    Token current_;
};

// Label expressions over AP indices: t, f, !, &, |, parentheses.
struct LabelExpr {
    enum Kind { tt, ff, ap, neg, conj, disj } kind;
    int ap_index = 0;
    std::unique_ptr<LabelExpr> left, right;

    bool eval(Symbol s) const {
        switch (kind) {
        case tt: return true;
        case ff: return false;
        case ap: return (s >> ap_index) & 1u;
        case neg: return !left->eval(s);
        case conj: return left->eval(s) && right->eval(s);
        case disj: return left->eval(s) || right->eval(s);
        }
        return false;
    }
};

std::unique_ptr<LabelExpr> parse_label_or(Lexer& lex, int ap_count);

std::unique_ptr<LabelExpr> parse_label_atom(Lexer& lex, int ap_count) {
    Token t = lex.take();
    auto node = std::make_unique<LabelExpr>();
    if (t.kind == Token::word && t.text == "t") {
        node->kind = LabelExpr::tt;
        return node;
    }
    if (t.kind == Token::word && t.text == "f") {
        node->kind = LabelExpr::ff;
        return node;
    }
    if (t.kind == Token::integer) {
        if (t.value < 0 || t.value >= ap_count)
            lex.fail("AP index " + t.text + " out of range");
        node->kind = LabelExpr::ap;
        node->ap_index = static_cast<int>(t.value);
        return node;
    }
    if (t.kind == Token::punct && t.text == "!") {
        node->kind = LabelExpr::neg;
        node->left = parse_label_atom(lex, ap_count);
        return node;
    }
    if (t.kind == Token::punct && t.text == "(") {
        node = parse_label_or(lex, ap_count);
        Token close = lex.take();
        if (close.kind != Token::punct || close.text != ")")
            lex.fail("expected ')' in label");
        return node;
    }
    lex.fail("bad label expression near '" + t.text + "'");
}

std::unique_ptr<LabelExpr> parse_label_and(Lexer& lex, int ap_count) {
    auto node = parse_label_atom(lex, ap_count);
    while (lex.peek().kind == Token::punct && lex.peek().text == "&") {
        lex.take();
        auto both = std::make_unique<LabelExpr>();
        both->kind = LabelExpr::conj;
        both->left = std::move(node);
        both->right = parse_label_and(lex, ap_count);
        node = std::move(both);
    }
    return node;
}

std::unique_ptr<LabelExpr> parse_label_or(Lexer& lex, int ap_count) {
    auto node = parse_label_and(lex, ap_count);
    while (lex.peek().kind == Token::punct && lex.peek().text == "|") {
        lex.take();
        auto both = std::make_unique<LabelExpr>();
        both->kind = LabelExpr::disj;
        both->left = std::move(node);
        both->right = parse_label_or(lex, ap_count);
        node = std::move(both);
    }
    return node;
}

enum class AccName { buchi, generalized_buchi, rabin, parity_min_even };

struct HoaEdge {
    int src;
    Symbol symbol;
    int dst;
    std::vector<int> acc_sets;
};

}  // namespace

std::variant<Ngba, DetAutomaton> hoa_parse(const std::string& text) {
    Lexer lex(text);

    auto expect_word = [&](const std::string& w) {
        Token t = lex.take();
        if (t.kind != Token::word || t.text != w)
            lex.fail("expected '" + w + "'");
    };
    auto take_int = [&]() {
        Token t = lex.take();
        if (t.kind != Token::integer)
            lex.fail("expected an integer");
        return static_cast<int>(t.value);
    };

    expect_word("HOA:");
    {
        Token t = lex.take();
        if (t.kind != Token::word || t.text != "v1")
            lex.fail("unsupported HOA version");
    }

    int state_count = -1;
    std::vector<int> start_states;
    std::vector<std::string> aps;
    bool have_aps = false;
    std::optional<AccName> acc_name;
    int acc_name_count = 1;
    int acc_set_count = -1;

    while (true) {
        Token t = lex.peek();
        if (t.kind == Token::word && t.text == "--BODY--") {
            lex.take();
            break;
        }
        if (t.kind == Token::end)
            lex.fail("missing --BODY--");
        t = lex.take();
        if (t.kind != Token::word || t.text.empty() || t.text.back() != ':')
            lex.fail("expected a header item, got '" + t.text + "'");
        std::string header = t.text;
        if (header == "States:") {
            state_count = take_int();
        } else if (header == "Start:") {
            start_states.push_back(take_int());
            if (lex.peek().kind == Token::punct && lex.peek().text == "&")
                lex.fail("unsupported: conjunctive (alternating) start");
        } else if (header == "AP:") {
            int n = take_int();
            if (n > static_cast<int>(Alphabet::max_propositions))
                lex.fail("too many atomic propositions (at most 16)");
            for (int i = 0; i < n; ++i) {
                Token ap = lex.take();
                if (ap.kind != Token::string)
                    lex.fail("expected a quoted AP name");
                aps.push_back(ap.text);
            }
            have_aps = true;
        } else if (header == "acc-name:") {
            Token name = lex.take();
            if (name.kind != Token::word)
                lex.fail("expected an acceptance name");
            if (name.text == "Buchi") {
                acc_name = AccName::buchi;
                acc_name_count = 1;
            } else if (name.text == "generalized-Buchi") {
                acc_name = AccName::generalized_buchi;
                acc_name_count = take_int();
            } else if (name.text == "Rabin") {
                acc_name = AccName::rabin;
                acc_name_count = take_int();
            } else if (name.text == "parity") {
                Token order = lex.take();
                Token kind = lex.take();
                if (order.kind != Token::word || kind.kind != Token::word ||
                    order.text != "min" || kind.text != "even")
                    lex.fail("unsupported acceptance kind: parity " + order.text +
                             " " + kind.text);
                acc_name = AccName::parity_min_even;
                acc_name_count = take_int();
            } else {
                lex.fail("unsupported acceptance kind: " + name.text);
            }
        } else if (header == "Acceptance:") {
            acc_set_count = take_int();
            // The formula itself is implied by acc-name; skip to the next
            // header line.
            while (lex.peek().kind != Token::end) {
                Token p = lex.peek();
                if (p.kind == Token::word &&
                    (p.text == "--BODY--" || p.text.back() == ':'))
                    break;
                lex.take();
            }
        } else {
            // name:, tool:, properties:, ... skip the rest of the item.
            while (lex.peek().kind != Token::end) {
                Token p = lex.peek();
                if (p.kind == Token::word &&
                    (p.text == "--BODY--" || p.text.back() == ':'))
                    break;
                lex.take();
            }
        }
    }

    if (state_count < 0)
        lex.fail("missing States: header");
    if (!have_aps)
        lex.fail("missing AP: header");
    if (start_states.empty())
        lex.fail("missing Start: header");
    if (!acc_name) {
        // Infer Büchi-style names from the set count alone.
        if (acc_set_count == 1)
            acc_name = AccName::buchi;
        else if (acc_set_count > 1)
            acc_name = AccName::generalized_buchi, acc_name_count = acc_set_count;
        else
            lex.fail("unsupported acceptance kind: missing acc-name");
    }
    if (acc_set_count < 0)
        lex.fail("missing Acceptance: header");

    int expected_sets = acc_name_count;
    if (*acc_name == AccName::rabin)
        expected_sets = 2 * acc_name_count;
    if (expected_sets != acc_set_count)
        lex.fail("Acceptance: set count does not match acc-name");

    Alphabet alphabet(aps);

    std::vector<HoaEdge> edges;
    int current_state = -1;
    std::vector<char> state_seen(state_count, 0);
    while (true) {
        Token t = lex.peek();
        if (t.kind == Token::word && t.text == "--END--") {
            lex.take();
            break;
        }
        if (t.kind == Token::end)
            lex.fail("missing --END--");
        if (t.kind == Token::word && t.text == "State:") {
            lex.take();
            if (lex.peek().kind == Token::punct && lex.peek().text == "[")
                lex.fail("unsupported: state labels (implicit edges)");
            current_state = take_int();
            if (current_state < 0 || current_state >= state_count)
                lex.fail("state index out of range");
            if (state_seen[current_state])
                lex.fail("duplicate State: section");
            state_seen[current_state] = 1;
            if (lex.peek().kind == Token::string)
                lex.take();  // state name
            if (lex.peek().kind == Token::punct && lex.peek().text == "{")
                lex.fail("unsupported: state-based acceptance");
            continue;
        }
        if (t.kind == Token::punct && t.text == "[") {
            if (current_state < 0)
                lex.fail("edge before any State:");
            lex.take();
            auto label = parse_label_or(lex, static_cast<int>(aps.size()));
            Token close = lex.take();
            if (close.kind != Token::punct || close.text != "]")
                lex.fail("expected ']' after label");
            int dst = take_int();
            if (dst < 0 || dst >= state_count)
                lex.fail("destination state out of range");
            if (lex.peek().kind == Token::punct && lex.peek().text == "&")
                lex.fail("unsupported: conjunctive (alternating) destination");
            std::vector<int> sets;
            if (lex.peek().kind == Token::punct && lex.peek().text == "{") {
                lex.take();
                while (!(lex.peek().kind == Token::punct && lex.peek().text == "}")) {
                    int set = take_int();
                    if (set < 0 || set >= acc_set_count)
                        lex.fail("acceptance set out of range");
                    sets.push_back(set);
                }
                lex.take();
            }
            for (Symbol s = 0; s < alphabet.symbol_count(); ++s)
                if (label->eval(s))
                    edges.push_back({current_state, s, dst, sets});
            continue;
        }
        if (t.kind == Token::integer)
            lex.fail("unsupported: implicit edge labels");
        lex.fail("unexpected token '" + t.text + "' in body");
    }

    if (*acc_name == AccName::buchi || *acc_name == AccName::generalized_buchi) {
        Bitset initial(state_count);
        for (int s : start_states) {
            if (s < 0 || s >= state_count)
                throw InputError("start state out of range");
            initial.set(s);
        }
        std::vector<Transition> transitions;
        std::vector<std::vector<Transition>> acc(acc_name_count);
        for (const HoaEdge& e : edges) {
            Transition t{e.src, e.symbol, e.dst};
            transitions.push_back(t);
            for (int set : e.acc_sets)
                acc[set].push_back(t);
        }
        return Ngba(alphabet, state_count, initial, std::move(transitions),
                    std::move(acc));
    }

    // Rabin / parity: must be deterministic.
    if (start_states.size() != 1)
        throw InputError("Rabin/parity automata must have a single start state");
    Acceptance kind = *acc_name == AccName::rabin ? Acceptance::rabin
                                                  : Acceptance::parity;
    DetAutomaton det(alphabet, state_count, start_states[0], kind, acc_name_count);
    for (const HoaEdge& e : edges) {
        std::uint64_t acc_bits = 0, rej_bits = 0;
        int priority = 0;
        if (kind == Acceptance::rabin) {
            // Pair i uses sets {2i: Fin (R_i), 2i+1: Inf (A_i)}.
            for (int set : e.acc_sets) {
                if (set % 2 == 0)
                    rej_bits |= std::uint64_t(1) << (set / 2);
                else
                    acc_bits |= std::uint64_t(1) << (set / 2);
            }
        } else {
            if (e.acc_sets.size() != 1)
                throw InputError("parity edge needs exactly one priority");
            priority = e.acc_sets[0];
        }
        det.add_edge(e.src, {e.symbol, e.dst, acc_bits, rej_bits, priority});
    }
    return det;
}

namespace {

void emit_header(std::ostringstream& out, int states,
                 const std::vector<int>& starts, const Alphabet& alphabet) {
    out << "HOA: v1\n";
    out << "States: " << states << "\n";
    for (int s : starts)
        out << "Start: " << s << "\n";
    out << "AP: " << alphabet.proposition_count();
    for (const std::string& ap : alphabet.propositions())
        out << " \"" << ap << "\"";
    out << "\n";
}

std::string label_of(const Alphabet& alphabet, Symbol s) {
    if (alphabet.proposition_count() == 0)
        return "t";
    std::string out;
    for (std::size_t i = 0; i < alphabet.proposition_count(); ++i) {
        if (i > 0)
            out += '&';
        if (!((s >> i) & 1u))
            out += '!';
        out += std::to_string(i);
    }
    return out;
}

}  // namespace

std::string hoa_emit(const Ngba& automaton) {
    std::ostringstream out;
    std::vector<int> starts = automaton.initial().to_vector();
    emit_header(out, automaton.state_count(), starts, automaton.alphabet());
    const int k = automaton.acc_count();
    if (k == 1)
        out << "acc-name: Buchi\n";
    else
        out << "acc-name: generalized-Buchi " << k << "\n";
    out << "Acceptance: " << k << " ";
    for (int j = 0; j < k; ++j) {
        if (j > 0)
            out << "&";
        out << "Inf(" << j << ")";
    }
    out << "\n";
    out << "properties: trans-labels explicit-labels trans-acc\n";
    out << "--BODY--\n";
    for (int s = 0; s < automaton.state_count(); ++s) {
        out << "State: " << s << "\n";
        for (const Transition& t : automaton.transitions()) {
            if (t.src != s)
                continue;
            out << "[" << label_of(automaton.alphabet(), t.symbol) << "] " << t.dst;
            std::uint32_t mask = automaton.acc_mask(t.src, t.symbol, t.dst);
            if (mask) {
                out << " {";
                bool sep = false;
                for (int j = 0; j < k; ++j) {
                    if ((mask >> j) & 1u) {
                        if (sep)
                            out << " ";
                        out << j;
                        sep = true;
                    }
                }
                out << "}";
            }
            out << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

std::string hoa_emit(const DetAutomaton& automaton) {
    std::ostringstream out;
    emit_header(out, automaton.state_count(), {automaton.initial()},
                automaton.alphabet());
    const int n = automaton.acc_size();
    switch (automaton.kind()) {
    case Acceptance::generalized_buchi:
        if (n == 1)
            out << "acc-name: Buchi\n";
        else
            out << "acc-name: generalized-Buchi " << n << "\n";
        out << "Acceptance: " << n << " ";
        for (int j = 0; j < n; ++j) {
            if (j > 0)
                out << "&";
            out << "Inf(" << j << ")";
        }
        out << "\n";
        break;
    case Acceptance::rabin:
        out << "acc-name: Rabin " << n << "\n";
        out << "Acceptance: " << 2 * n << " ";
        if (n == 0)
            out << "f";
        for (int i = 0; i < n; ++i) {
            if (i > 0)
                out << "|";
            out << "(Fin(" << 2 * i << ")&Inf(" << 2 * i + 1 << "))";
        }
        out << "\n";
        break;
    case Acceptance::parity: {
        out << "acc-name: parity min even " << n << "\n";
        out << "Acceptance: " << n << " ";
        // Inf(0) | (Fin(1) & (Inf(2) | ...))
        for (int p = 0; p < n; ++p) {
            if (p > 0)
                out << (p % 2 == 0 ? "|" : "&") << "(";
            out << (p % 2 == 0 ? "Inf(" : "Fin(") << p << ")";
        }
        for (int p = 1; p < n; ++p)
            out << ")";
        if (n == 0)
            out << "f";
        out << "\n";
        break;
    }
    }
    out << "properties: trans-labels explicit-labels trans-acc deterministic\n";
    out << "--BODY--\n";
    for (int s = 0; s < automaton.state_count(); ++s) {
        out << "State: " << s << "\n";
        for (const DetEdge& e : automaton.edges(s)) {
            out << "[" << label_of(automaton.alphabet(), e.symbol) << "] " << e.dst;
            std::vector<int> sets;
            switch (automaton.kind()) {
            case Acceptance::generalized_buchi:
                for (int j = 0; j < n; ++j)
                    if ((e.acc_bits >> j) & 1u)
                        sets.push_back(j);
                break;
            case Acceptance::rabin:
                for (int i = 0; i < n; ++i) {
                    if ((e.rej_bits >> i) & 1u)
                        sets.push_back(2 * i);
                    if ((e.acc_bits >> i) & 1u)
                        sets.push_back(2 * i + 1);
                }
                break;
            case Acceptance::parity:
                sets.push_back(e.priority);
                break;
            }
            if (!sets.empty()) {
                out << " {";
                for (std::size_t i = 0; i < sets.size(); ++i)
                    out << (i ? " " : "") << sets[i];
                out << "}";
            }
            out << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

}  // namespace pmc

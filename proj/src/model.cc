#include "pmc/model.hh"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmc/error.hh"

namespace pmc {

namespace {

constexpr double row_tolerance = 1e-12;

void check_distribution(const std::vector<std::pair<int, double>>& dist,
                        int state_count, const std::string& where) {
    double sum = 0.0;
    int prev = -1;
    for (const auto& [dst, p] : dist) {
        if (dst < 0 || dst >= state_count)
            throw InputError(where + ": dangling state index " + std::to_string(dst));
        if (dst <= prev)
            throw InputError(where + ": duplicate or unsorted target " + std::to_string(dst));
        prev = dst;
        if (p < 0.0 || p > 1.0 + row_tolerance)
            throw InputError(where + ": probability outside [0,1]");
        sum += p;
    }
    if (!dist.empty() && std::abs(sum - 1.0) > row_tolerance)
        throw InputError(where + ": row sums to " + std::to_string(sum) +
                         ", expected 1");
}

void check_common(const Alphabet& alphabet, int state_count,
                  const std::vector<Symbol>& label,
                  const std::vector<double>& initial) {
    if (state_count <= 0)
        throw InputError("model needs at least one state");
    if (label.size() != static_cast<std::size_t>(state_count))
        throw InputError("label table size mismatch");
    for (Symbol s : label)
        if (s >= alphabet.symbol_count())
            throw InputError("state label outside the declared alphabet");
    if (initial.size() != static_cast<std::size_t>(state_count))
        throw InputError("initial distribution size mismatch");
    double sum = 0.0;
    for (double p : initial)
        sum += p;
    if (std::abs(sum - 1.0) > row_tolerance)
        throw InputError("initial distribution does not sum to 1");
}

}  // namespace

void MarkovChain::validate() const {
    check_common(alphabet, state_count, label, initial);
    if (rows.size() != static_cast<std::size_t>(state_count))
        throw InputError("transition table size mismatch");
    for (int m = 0; m < state_count; ++m)
        check_distribution(rows[m], state_count, "state " + std::to_string(m));
}

void Mdp::validate() const {
    check_common(alphabet, state_count, label, initial);
    if (rows.size() != static_cast<std::size_t>(state_count))
        throw InputError("transition table size mismatch");
    for (int m = 0; m < state_count; ++m) {
        for (const Choice& c : rows[m]) {
            if (c.action < 0 || c.action >= static_cast<int>(action_names.size()))
                throw InputError("state " + std::to_string(m) + ": unknown action index");
            if (c.dist.empty())
                throw InputError("state " + std::to_string(m) + ": empty distribution");
            check_distribution(c.dist, state_count,
                               "state " + std::to_string(m) + " action " +
                                   action_names[c.action]);
        }
    }
}

namespace {

struct Line {
    std::string text;
    int number;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string body = line.substr(begin, end - begin + 1);
        if (body.empty() || body[0] == '%')
            continue;
        out.push_back({body, number});
    }
    return out;
}

double parse_probability(const std::string& token, int line) {
    std::size_t slash = token.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(token.substr(0, slash));
            double den = std::stod(token.substr(slash + 1));
            if (den == 0.0)
                throw InputError("line " + std::to_string(line) + ": zero denominator");
            return num / den;
        }
        return std::stod(token);
    } catch (const std::invalid_argument&) {
        throw InputError("line " + std::to_string(line) + ": bad probability '" +
                         token + "'");
    }
}

int parse_state(const std::string& token, int line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used != token.size() || v < 0)
            throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line) + ": bad state index '" +
                         token + "'");
    }
}

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

struct LabelData {
    Alphabet alphabet;
    std::vector<Symbol> labels;
};

LabelData parse_labels(const std::string& text, int state_count) {
    std::vector<Line> lines = significant_lines(text);
    if (lines.empty())
        throw InputError("labels file is empty");
    std::vector<std::string> header = split_tokens(lines[0].text);
    if (header.empty() || header[0] != "#aps")
        throw InputError("labels file must start with '#aps ap1 ap2 ...'");
    Alphabet alphabet(std::vector<std::string>(header.begin() + 1, header.end()));

    std::vector<Symbol> labels(state_count, 0);
    std::vector<char> seen(state_count, 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& body = lines[i].text;
        std::size_t colon = body.find(':');
        if (colon == std::string::npos)
            throw InputError("line " + std::to_string(lines[i].number) +
                             ": expected 'state: ap ...'");
        int state = parse_state(body.substr(0, body.find_first_of(": \t")),
                                lines[i].number);
        if (state >= state_count)
            throw InputError("line " + std::to_string(lines[i].number) +
                             ": dangling state index " + std::to_string(state));
        if (seen[state])
            throw InputError("line " + std::to_string(lines[i].number) +
                             ": duplicate label line for state " + std::to_string(state));
        seen[state] = 1;
        Symbol sym = 0;
        for (const std::string& ap : split_tokens(body.substr(colon + 1))) {
            int idx = alphabet.index_of(ap);
            if (idx < 0)
                throw InputError("line " + std::to_string(lines[i].number) +
                                 ": undeclared atomic proposition '" + ap + "'");
            sym |= Symbol(1) << idx;
        }
        labels[state] = sym;
    }
    return {std::move(alphabet), std::move(labels)};
}

int parse_transition_header(const std::vector<Line>& lines) {
    if (lines.empty())
        throw InputError("transitions file is empty");
    std::vector<std::string> header = split_tokens(lines[0].text);
    if (header.size() != 2 || header[0] != "#states")
        throw InputError("transitions file must start with '#states N'");
    int n = parse_state(header[1], lines[0].number);
    if (n == 0)
        throw InputError("model needs at least one state");
    return n;
}

std::variant<MarkovChain, Mdp> parse_model(const std::string& transitions_text,
                                           const std::string& labels_text,
                                           ModelKind kind) {
    std::vector<Line> lines = significant_lines(transitions_text);
    int state_count = parse_transition_header(lines);
    LabelData labels = parse_labels(labels_text, state_count);

    std::vector<double> initial(state_count, 0.0);
    initial[0] = 1.0;

    if (kind == ModelKind::mc) {
        MarkovChain mc;
        mc.alphabet = std::move(labels.alphabet);
        mc.state_count = state_count;
        mc.label = std::move(labels.labels);
        mc.initial = std::move(initial);
        mc.rows.resize(state_count);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            std::vector<std::string> toks = split_tokens(lines[i].text);
            if (toks.size() != 3)
                throw InputError("line " + std::to_string(lines[i].number) +
                                 ": expected 'src dst prob'");
            int src = parse_state(toks[0], lines[i].number);
            int dst = parse_state(toks[1], lines[i].number);
            if (src >= state_count || dst >= state_count)
                throw InputError("line " + std::to_string(lines[i].number) +
                                 ": dangling state index");
            mc.rows[src].push_back({dst, parse_probability(toks[2], lines[i].number)});
        }
        for (auto& row : mc.rows)
            std::sort(row.begin(), row.end());
        mc.validate();
        return mc;
    }

    Mdp mdp;
    mdp.alphabet = std::move(labels.alphabet);
    mdp.state_count = state_count;
    mdp.label = std::move(labels.labels);
    mdp.initial = std::move(initial);
    mdp.rows.resize(state_count);
    std::vector<std::vector<int>> choice_of(state_count);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> toks = split_tokens(lines[i].text);
        if (toks.size() != 4)
            throw InputError("line " + std::to_string(lines[i].number) +
                             ": expected 'src action dst prob'");
        int src = parse_state(toks[0], lines[i].number);
        int dst = parse_state(toks[2], lines[i].number);
        if (src >= state_count || dst >= state_count)
            throw InputError("line " + std::to_string(lines[i].number) +
                             ": dangling state index");
        int action = -1;
        for (std::size_t a = 0; a < mdp.action_names.size(); ++a)
            if (mdp.action_names[a] == toks[1])
                action = static_cast<int>(a);
        if (action < 0) {
            action = static_cast<int>(mdp.action_names.size());
            mdp.action_names.push_back(toks[1]);
        }
        int choice = -1;
        for (std::size_t c = 0; c < mdp.rows[src].size(); ++c)
            if (mdp.rows[src][c].action == action)
                choice = static_cast<int>(c);
        if (choice < 0) {
            choice = static_cast<int>(mdp.rows[src].size());
            mdp.rows[src].push_back({action, {}});
        }
        mdp.rows[src][choice].dist.push_back(
            {dst, parse_probability(toks[3], lines[i].number)});
    }
    for (auto& row : mdp.rows)
        for (auto& choice : row)
            std::sort(choice.dist.begin(), choice.dist.end());
    mdp.validate();
    return mdp;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

std::variant<MarkovChain, Mdp> load_model(const std::string& transitions_path,
                                          const std::string& labels_path,
                                          ModelKind kind) {
    return parse_model(read_file(transitions_path), read_file(labels_path), kind);
}

std::variant<MarkovChain, Mdp> load_model_text(const std::string& transitions_text,
                                               const std::string& labels_text,
                                               ModelKind kind) {
    return parse_model(transitions_text, labels_text, kind);
}

}  // namespace pmc

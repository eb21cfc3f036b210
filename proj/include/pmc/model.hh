#ifndef PMC_MODEL_HH
#define PMC_MODEL_HH

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmc/alphabet.hh"

namespace pmc {

// Sparse discrete-time Markov chain. Rows sum to 1 (within 1e-12) or are
// empty (absorbing state). Labels are valuations over the model's alphabet.
struct MarkovChain {
    Alphabet alphabet;
    int state_count = 0;
    std::vector<Symbol> label;
    std::vector<double> initial;
    std::vector<std::vector<std::pair<int, double>>> rows;  // sorted by target

    void validate() const;  // throws InputError
};

// Markov decision process; every non-absorbing state has at least one action.
struct Mdp {
    struct Choice {
        int action;  // index into action_names
        std::vector<std::pair<int, double>> dist;  // sorted by target
    };

    Alphabet alphabet;
    int state_count = 0;
    std::vector<Symbol> label;
    std::vector<double> initial;
    std::vector<std::string> action_names;
    std::vector<std::vector<Choice>> rows;

    void validate() const;
};

enum class ModelKind { mc, mdp };

// Loads a model from the explicit format:
//   transitions file:  "#states N" header, then "src dst prob" lines
//                      (MC) or "src action dst prob" lines (MDP);
//                      probabilities are decimals or p/q rationals;
//   labels file:       "#aps a b c" header, then "state: ap1 ap2 ..." lines.
// State 0 carries the initial distribution.
std::variant<MarkovChain, Mdp> load_model(const std::string& transitions_path,
                                          const std::string& labels_path,
                                          ModelKind kind);

// Same, but from in-memory text (used by tests).
std::variant<MarkovChain, Mdp> load_model_text(const std::string& transitions_text,
                                               const std::string& labels_text,
                                               ModelKind kind);

}  // namespace pmc

#endif

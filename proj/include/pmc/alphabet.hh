#ifndef PMC_ALPHABET_HH
#define PMC_ALPHABET_HH

#include <cstdint>
#include <string>
#include <vector>

namespace pmc {

// A letter is a valuation of the atomic propositions, encoded as a bitmask:
// bit i is the truth value of proposition i.
using Symbol = std::uint32_t;

class Alphabet {
public:
    static constexpr std::size_t max_propositions = 16;

    Alphabet() = default;

    // Throws InputError on duplicates or more than max_propositions names.
    explicit Alphabet(std::vector<std::string> propositions);

    std::size_t proposition_count() const { return propositions_.size(); }
    std::size_t symbol_count() const { return std::size_t(1) << propositions_.size(); }

    const std::vector<std::string>& propositions() const { return propositions_; }
    const std::string& proposition(std::size_t i) const { return propositions_[i]; }

    // Index of a proposition name, or -1 when absent.
    int index_of(const std::string& name) const;

    // Renders a symbol as a conjunction of literals, e.g. "a&!b".
    std::string symbol_to_string(Symbol s) const;

    bool operator==(const Alphabet& other) const {
        return propositions_ == other.propositions_;
    }

private:
    std::vector<std::string> propositions_;
};

}  // namespace pmc

#endif

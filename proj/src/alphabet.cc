#include "pmc/alphabet.hh"

#include <algorithm>

#include "pmc/error.hh"

namespace pmc {

Alphabet::Alphabet(std::vector<std::string> propositions)
    : propositions_(std::move(propositions)) {
    if (propositions_.size() > max_propositions)
        throw InputError("too many atomic propositions: " +
                         std::to_string(propositions_.size()) + " > " +
                         std::to_string(max_propositions));
    for (std::size_t i = 0; i < propositions_.size(); ++i)
        for (std::size_t j = i + 1; j < propositions_.size(); ++j)
            if (propositions_[i] == propositions_[j])
                throw InputError("duplicate atomic proposition: " + propositions_[i]);
}

int Alphabet::index_of(const std::string& name) const {
    auto it = std::find(propositions_.begin(), propositions_.end(), name);
    if (it == propositions_.end())
        return -1;
    return static_cast<int>(it - propositions_.begin());
}

std::string Alphabet::symbol_to_string(Symbol s) const {
    if (propositions_.empty())
        return "t";
    std::string out;
    for (std::size_t i = 0; i < propositions_.size(); ++i) {
        if (i > 0)
            out += '&';
        if (!((s >> i) & 1))
            out += '!';
        out += propositions_[i];
    }
    return out;
}

}  // namespace pmc

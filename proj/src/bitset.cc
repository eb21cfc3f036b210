#include "pmc/bitset.hh"

#include <cassert>

namespace pmc {

std::size_t Bitset::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_)
        n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

int Bitset::first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return static_cast<int>(w * 64 + __builtin_ctzll(words_[w]));
    return -1;
}

bool Bitset::is_subset_of(const Bitset& other) const {
    assert(size_ == other.size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w])
            return false;
    return true;
}

bool Bitset::intersects(const Bitset& other) const {
    assert(size_ == other.size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & other.words_[w])
            return true;
    return false;
}

Bitset& Bitset::operator|=(const Bitset& other) {
    assert(size_ == other.size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& other) {
    assert(size_ == other.size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= other.words_[w];
    return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) {
    assert(size_ == other.size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= ~other.words_[w];
    return *this;
}

int Bitset::compare(const Bitset& other) const {
    assert(size_ == other.size_);
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != other.words_[w])
            return words_[w] < other.words_[w] ? -1 : 1;
    }
    return 0;
}

std::size_t Bitset::hash() const {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : words_)
        h = (h ^ w) * 0x100000001b3ull;
    return h;
}

std::vector<int> Bitset::to_vector() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
}

std::string Bitset::to_string() const {
    std::string s = "{";
    bool sep = false;
    for_each([&](std::size_t i) {
        if (sep)
            s += ',';
        s += std::to_string(i);
        sep = true;
    });
    s += '}';
    return s;
}

}  // namespace pmc

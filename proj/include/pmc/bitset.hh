#ifndef PMC_BITSET_HH
#define PMC_BITSET_HH

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pmc {

// Fixed-universe bit set used for automaton state sets. The universe size is
// chosen at construction; all binary operations require equal sizes.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    static Bitset singleton(std::size_t size, std::size_t bit) {
        Bitset b(size);
        b.set(bit);
        return b;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w)
                return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const;

    // First set bit, or -1 when empty.
    int first() const;

    bool is_subset_of(const Bitset& other) const;
    bool intersects(const Bitset& other) const;

    Bitset& operator|=(const Bitset& other);
    Bitset& operator&=(const Bitset& other);
    // Set difference.
    Bitset& operator-=(const Bitset& other);

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    bool operator==(const Bitset& other) const = default;

    // Three-way comparison of the underlying integer value.
    int compare(const Bitset& other) const;

    std::size_t hash() const;

    // Calls f(i) for every set bit in ascending order.
    template <typename F>
    void for_each(F f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                f(w * 64 + bit);
                word &= word - 1;
            }
        }
    }

    std::vector<int> to_vector() const;
    std::string to_string() const;  // e.g. "{0,2,5}"

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace pmc

#endif

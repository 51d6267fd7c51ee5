#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <vector>

namespace horizonlab {

/// Dense bit-vector over the cells of a grid.
///
/// Used for pasts, futures, tips and classification masks alike. All binary
/// operations require both operands to have the same size.
class CellSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    CellSet() = default;
    explicit CellSet(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
    void clear() { std::fill(words_.begin(), words_.end(), Word{0}); }

    std::size_t count() const {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool none() const {
        for (Word w : words_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    CellSet& operator|=(const CellSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    CellSet& operator&=(const CellSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    /// Set difference: removes every member of `o`.
    CellSet& subtract(const CellSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    /// Moves every member i to i + k; members pushed past the end are dropped.
    CellSet shifted_up(std::size_t k) const {
        CellSet out(size_);
        const std::size_t ws = k / kWordBits, bs = k % kWordBits;
        for (std::size_t d = words_.size(); d-- > ws;) {
            Word w = words_[d - ws] << bs;
            if (bs && d - ws > 0) w |= words_[d - ws - 1] >> (kWordBits - bs);
            out.words_[d] = w;
        }
        out.trim();
        return out;
    }
    /// Moves every member i to i - k; members below zero are dropped.
    CellSet shifted_down(std::size_t k) const {
        CellSet out(size_);
        const std::size_t ws = k / kWordBits, bs = k % kWordBits;
        for (std::size_t d = 0; d + ws < words_.size(); ++d) {
            Word w = words_[d + ws] >> bs;
            if (bs && d + ws + 1 < words_.size()) w |= words_[d + ws + 1] << (kWordBits - bs);
            out.words_[d] = w;
        }
        return out;
    }
    CellSet complement() const {
        CellSet out(size_);
        for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = ~words_[k];
        out.trim();
        return out;
    }

    friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
    friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
    friend CellSet operator-(CellSet a, const CellSet& b) { return a.subtract(b); }
    friend bool operator==(const CellSet& a, const CellSet& b) = default;

    bool is_subset_of(const CellSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }
    bool is_strict_subset_of(const CellSet& o) const { return is_subset_of(o) && *this != o; }
    bool intersects(const CellSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w) {
                const int b = std::countr_zero(w);
                f(k * kWordBits + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    const std::vector<Word>& words() const { return words_; }

private:
    void trim() {
        if (size_ % kWordBits) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

}  // namespace horizonlab

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ucb {

// Fixed-size dynamic bitset for vertex sets in the clique search.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t capacity() const noexcept { return n_; }

    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

    bool any() const noexcept {
        for (auto w : words_) {
            if (w != 0) {
                return true;
            }
        }
        return false;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Smallest member, or npos when empty.
    std::size_t first() const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) {
                return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
            }
        }
        return npos;
    }

    VertexSet& subtract(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= ~o.words_[i];
        }
        return *this;
    }

    VertexSet operator&(const VertexSet& o) const {
        VertexSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = words_[i] & o.words_[i];
        }
        return r;
    }

    bool intersects(const VertexSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & o.words_[i]) {
                return true;
            }
        }
        return false;
    }

    // Calls f(i) for every member in increasing order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const auto b = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace ucb

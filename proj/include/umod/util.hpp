#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace umod {

// Fixed-universe dynamic bitset. The universe size is set at construction and
// both operands of any binary operation must agree on it.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {}

    static Bitset from(const std::vector<int>& elems, int n) {
        Bitset b(n);
        for (int e : elems) b.set(e);
        return b;
    }

    int universe() const { return n_; }

    bool test(int i) const {
        assert(0 <= i && i < n_);
        return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int i) {
        assert(0 <= i && i < n_);
        w_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(int i) {
        assert(0 <= i && i < n_);
        w_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    Bitset& operator^=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

    bool operator==(const Bitset& o) const = default;

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // Complement within the universe.
    Bitset complemented() const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    int find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(w_[i]);
        return -1;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                out.push_back(static_cast<int>(i * 64) + __builtin_ctzll(w));
                w &= w - 1;
            }
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
        for (auto w : w_) h = (h ^ w) * 0x100000001b3ull;
        return h;
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

// Unsigned big integer, base 2^32, little-endian limbs. Only the handful of
// operations needed for counting set families; values are never negative.
class BigUint {
public:
    BigUint() = default;

    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    static BigUint pow2(int k) {
        BigUint r;
        r.limbs_.assign(static_cast<std::size_t>(k / 32) + 1, 0);
        r.limbs_.back() = std::uint32_t{1} << (k % 32);
        return r;
    }

    void add(const BigUint& o) {
        if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    void add_u64(std::uint64_t v) { add(BigUint(v)); }

    // Requires *this >= v.
    void sub_u64(std::uint64_t v) {
        std::uint64_t borrow = v;
        for (std::size_t i = 0; i < limbs_.size() && borrow; ++i) {
            std::uint64_t cur = limbs_[i];
            std::uint64_t take = borrow & 0xffffffffull;
            if (cur >= take) {
                limbs_[i] = static_cast<std::uint32_t>(cur - take);
                borrow >>= 32;
            } else {
                limbs_[i] = static_cast<std::uint32_t>(cur + 0x100000000ull - take);
                borrow = (borrow >> 32) + 1;
            }
        }
        assert(borrow == 0);
        normalize();
    }

    void mul_u32(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t p = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(p);
            carry = p >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        normalize();
    }

    bool is_zero() const { return limbs_.empty(); }

    bool operator==(const BigUint&) const = default;

    bool fits_u64() const { return limbs_.size() <= 2; }

    std::uint64_t to_u64() const {
        assert(fits_u64());
        std::uint64_t v = 0;
        if (limbs_.size() > 0) v |= limbs_[0];
        if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
        return v;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<std::uint32_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            // Divide by 10^9, collecting the remainder as the next 9 digits.
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (work.empty()) {
                out.insert(0, chunk);
            } else {
                out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
            }
        }
        return out;
    }

private:
    void normalize() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

}  // namespace umod

#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace poslog {

// Dynamic fixed-length bitset; just enough set algebra for type spaces.
class Bitvec {
public:
    Bitvec() = default;
    explicit Bitvec(std::size_t n, bool value = false)
        : n_(n), w_((n + 63) / 64, value ? ~0ull : 0ull) {
        trim();
    }

    std::size_t size() const { return n_; }

    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= 1ull << (i & 63);
        else   w_[i >> 6] &= ~(1ull << (i & 63));
    }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool none() const {
        for (auto w : w_) if (w) return false;
        return true;
    }
    bool any() const { return !none(); }
    bool all() const { return count() == n_; }

    bool subset_of(const Bitvec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bitvec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bitvec& operator&=(const Bitvec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitvec& operator|=(const Bitvec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitvec operator~() const {
        Bitvec r(*this);
        for (auto& w : r.w_) w = ~w;
        r.trim();
        return r;
    }
    friend Bitvec operator&(Bitvec a, const Bitvec& b) { a &= b; return a; }
    friend Bitvec operator|(Bitvec a, const Bitvec& b) { a |= b; return a; }

    bool operator==(const Bitvec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitvec& o) const { return !(*this == o); }
    bool operator<(const Bitvec& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < n_; ++i) if (test(i)) r.push_back(i);
        return r;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (1ull << (n_ & 63)) - 1;
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace poslog

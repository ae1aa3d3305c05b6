#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cremona/error.hpp"

namespace cremona {

inline constexpr int kMaxVariables = 16;

// Support set of a square-free monomial: variable i (1-based) is bit i-1.
using Mask = std::uint32_t;

inline constexpr Mask bit_of(int variable) { return Mask{1} << (variable - 1); }
inline constexpr Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline constexpr int popcount(Mask m) { return std::popcount(m); }

class Monomial {
public:
    Monomial() = default;

    static Monomial from_mask(int n, Mask mask) {
        check_ambient(n);
        if ((mask & ~full_mask(n)) != 0)
            throw ContractViolation("monomial support uses a variable beyond x" + std::to_string(n));
        Monomial m;
        m.n_ = n;
        for (int i = 0; i < n; ++i)
            m.exponents_[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
        m.degree_ = popcount(mask);
        return m;
    }

    static Monomial from_exponents(std::span<const int> exponents) {
        const int n = static_cast<int>(exponents.size());
        check_ambient(n);
        Monomial m;
        m.n_ = n;
        for (int i = 0; i < n; ++i) {
            const int e = exponents[static_cast<std::size_t>(i)];
            if (e < 0 || e > 255)
                throw ContractViolation("exponent out of range");
            m.exponents_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
            m.degree_ += e;
        }
        return m;
    }

    int n() const noexcept { return n_; }
    int degree() const noexcept { return degree_; }

    // 1-based variable index.
    int exponent(int variable) const { return exponents_.at(static_cast<std::size_t>(variable - 1)); }

    bool is_square_free() const noexcept {
        return std::all_of(exponents_.begin(), exponents_.begin() + n_,
                           [](std::uint8_t e) { return e <= 1; });
    }

    Mask support() const noexcept {
        Mask m = 0;
        for (int i = 0; i < n_; ++i)
            if (exponents_[static_cast<std::size_t>(i)] != 0) m |= Mask{1} << i;
        return m;
    }

    Mask mask() const {
        if (!is_square_free())
            throw ContractViolation("monomial is not square-free");
        return support();
    }

    bool divisible_by(int variable) const { return exponent(variable) > 0; }

    // Canonical internal order: support mask first, then exponent vector.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.support() <=> b.support(); c != 0) return c;
        return a.exponents_ <=> b.exponents_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.n_ == b.n_ && a.exponents_ == b.exponents_;
    }

private:
    static void check_ambient(int n) {
        if (n < 1 || n > kMaxVariables)
            throw ContractViolation("number of variables must lie in [1, " +
                                    std::to_string(kMaxVariables) + "]");
    }

    std::array<std::uint8_t, kMaxVariables> exponents_{};
    int n_ = 0;
    int degree_ = 0;
};

// n distinct monomials of a common degree d in n variables. Members are kept in
// the canonical internal order so equality is order-insensitive.
class MonomialSet {
public:
    MonomialSet(int n, std::vector<Monomial> monomials) : n_(n), monomials_(std::move(monomials)) {
        if (n_ < 2 || n_ > kMaxVariables)
            throw ContractViolation("a monomial set needs 2 <= n <= " + std::to_string(kMaxVariables));
        if (static_cast<int>(monomials_.size()) != n_)
            throw ContractViolation("a monomial set in " + std::to_string(n_) +
                                    " variables needs exactly " + std::to_string(n_) + " members, got " +
                                    std::to_string(monomials_.size()));
        d_ = monomials_.front().degree();
        if (d_ < 1)
            throw ContractViolation("monomial degree must be at least 1");
        for (const auto& m : monomials_) {
            if (m.n() != n_)
                throw ContractViolation("monomial lives in a different number of variables");
            if (m.degree() != d_)
                throw ContractViolation("monomials of mixed degree");
        }
        std::sort(monomials_.begin(), monomials_.end());
        if (std::adjacent_find(monomials_.begin(), monomials_.end()) != monomials_.end())
            throw ContractViolation("duplicate monomial in set");
    }

    static MonomialSet from_masks(int n, std::span<const Mask> masks) {
        std::vector<Monomial> ms;
        ms.reserve(masks.size());
        for (Mask m : masks) ms.push_back(Monomial::from_mask(n, m));
        return MonomialSet(n, std::move(ms));
    }
    static MonomialSet from_masks(int n, std::initializer_list<Mask> masks) {
        return from_masks(n, std::span<const Mask>(masks.begin(), masks.size()));
    }

    int n() const noexcept { return n_; }
    int degree() const noexcept { return d_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const Monomial& operator[](std::size_t j) const { return monomials_[j]; }
    auto begin() const noexcept { return monomials_.begin(); }
    auto end() const noexcept { return monomials_.end(); }
    std::span<const Monomial> monomials() const noexcept { return monomials_; }

    bool is_square_free() const noexcept {
        return std::all_of(monomials_.begin(), monomials_.end(),
                           [](const Monomial& m) { return m.is_square_free(); });
    }

    // Ascending support masks; requires a square-free set.
    std::vector<Mask> masks() const {
        std::vector<Mask> out;
        out.reserve(monomials_.size());
        for (const auto& m : monomials_) out.push_back(m.mask());
        return out;
    }

    friend bool operator==(const MonomialSet& a, const MonomialSet& b) {
        return a.n_ == b.n_ && a.monomials_ == b.monomials_;
    }
    friend auto operator<=>(const MonomialSet& a, const MonomialSet& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.monomials_.begin(), a.monomials_.end(),
                                                      b.monomials_.begin(), b.monomials_.end());
    }

private:
    int n_;
    int d_ = 0;
    std::vector<Monomial> monomials_;
};

// A square-free k-subset of M_{n,d} for any k, used for partial sets during
// enumeration. Masks are ascending and distinct.
struct MaskSet {
    int n = 0;
    int d = 0;
    std::vector<Mask> masks;

    MaskSet() = default;
    MaskSet(int n_, int d_, std::vector<Mask> masks_) : n(n_), d(d_), masks(std::move(masks_)) {
        std::sort(masks.begin(), masks.end());
        validate();
    }
    explicit MaskSet(const MonomialSet& f) : n(f.n()), d(f.degree()), masks(f.masks()) {}

    std::size_t size() const noexcept { return masks.size(); }
    bool contains(Mask m) const { return std::binary_search(masks.begin(), masks.end(), m); }

    MaskSet with(Mask m) const {
        MaskSet out = *this;
        out.masks.insert(std::lower_bound(out.masks.begin(), out.masks.end(), m), m);
        out.validate();
        return out;
    }

    MonomialSet to_monomial_set() const { return MonomialSet::from_masks(n, masks); }

    friend bool operator==(const MaskSet&, const MaskSet&) = default;
    friend auto operator<=>(const MaskSet& a, const MaskSet& b) {
        if (auto c = a.n <=> b.n; c != 0) return c;
        if (auto c = a.d <=> b.d; c != 0) return c;
        return a.masks <=> b.masks;
    }

private:
    void validate() const {
        if (n < 1 || n > kMaxVariables) throw ContractViolation("mask set: bad number of variables");
        for (Mask m : masks) {
            if ((m & ~full_mask(n)) != 0) throw ContractViolation("mask set: support out of range");
            if (popcount(m) != d) throw ContractViolation("mask set: member of wrong degree");
        }
        if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
            throw ContractViolation("mask set: duplicate member");
    }
};

// Incidence degree of each variable, indexed 0..n-1.
inline std::vector<int> variable_degrees(int n, std::span<const Mask> masks) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (Mask m : masks)
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1U) ++deg[static_cast<std::size_t>(i)];
    return deg;
}

} // namespace cremona

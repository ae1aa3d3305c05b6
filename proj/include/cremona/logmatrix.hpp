#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/monomial.hpp"

namespace cremona {

using IncidenceSequence = std::vector<int>;

// Square integer matrix; for a monomial set, column j is the log vector of
// its j-th member.
class LogMatrix {
public:
    LogMatrix(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
        if (n_ < 1 || n_ > kMaxVariables)
            throw ContractViolation("log matrix dimension must lie in [1, " + std::to_string(kMaxVariables) + "]");
        if (entries_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
            throw ContractViolation("log matrix entry count does not match n*n");
    }

    // Row-major nested initializer, mainly for tests.
    static LogMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        const int n = static_cast<int>(rows.size());
        std::vector<int> e;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != n) throw ContractViolation("log matrix is not square");
            e.insert(e.end(), r.begin(), r.end());
        }
        return LogMatrix(n, std::move(e));
    }

    int n() const noexcept { return n_; }
    int operator()(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(col)];
    }
    std::span<const int> entries() const noexcept { return entries_; }

    int row_sum(int row) const {
        int s = 0;
        for (int j = 0; j < n_; ++j) s += (*this)(row, j);
        return s;
    }
    int column_sum(int col) const {
        int s = 0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, col);
        return s;
    }

    friend bool operator==(const LogMatrix&, const LogMatrix&) = default;

private:
    int n_;
    std::vector<int> entries_;
};

namespace detail {

// Fraction-free Bareiss elimination in place on an n x n row-major buffer.
// Every intermediate entry is a minor of the input, so it fits in 64 bits for
// n <= 16 with entries <= 2; the cross products are formed in 128 bits.
inline std::int64_t bareiss(std::int64_t* a, int n) {
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k * n + k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i * n + k] != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
            sign = -sign;
        }
        const std::int64_t pivot = a[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            const std::int64_t lead = a[i * n + k];
            for (int j = k + 1; j < n; ++j) {
                const __int128 num = static_cast<__int128>(pivot) * a[i * n + j] -
                                     static_cast<__int128>(lead) * a[k * n + j];
                a[i * n + j] = static_cast<std::int64_t>(num / prev);
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    return sign * a[(n - 1) * n + (n - 1)];
}

// Determinant of the 0/1 matrix whose columns are the given supports.
inline std::int64_t mask_determinant(int n, std::span<const Mask> columns) {
    std::array<std::int64_t, kMaxVariables * kMaxVariables> buf{};
    for (int j = 0; j < n; ++j) {
        const Mask m = columns[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) buf[static_cast<std::size_t>(i * n + j)] = (m >> i) & 1U;
    }
    return bareiss(buf.data(), n);
}

inline bool masks_satisfy_canonical_restrictions(int n, std::span<const Mask> masks) {
    Mask any = 0;
    Mask all = full_mask(n);
    for (Mask m : masks) {
        any |= m;
        all &= m;
    }
    return any == full_mask(n) && all == 0;
}

inline bool masks_are_cremona(int n, int d, std::span<const Mask> masks) {
    const std::int64_t det = mask_determinant(n, masks);
    return det == d || det == -d;
}

} // namespace detail

inline LogMatrix log_matrix(const MonomialSet& f) {
    const int n = f.n();
    std::vector<int> e(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            e[static_cast<std::size_t>(i * n + j)] = f[static_cast<std::size_t>(j)].exponent(i + 1);
    return LogMatrix(n, std::move(e));
}

inline std::int64_t determinant(const LogMatrix& m) {
    const int n = m.n();
    if (n > kMaxVariables) throw ContractViolation("determinant: dimension exceeds 16");
    std::array<std::int64_t, kMaxVariables * kMaxVariables> buf{};
    for (int i = 0; i < n * n; ++i) {
        const int v = m.entries()[static_cast<std::size_t>(i)];
        if (v < 0 || v > 2) throw ContractViolation("determinant: entries must lie in {0,1,2}");
        buf[static_cast<std::size_t>(i)] = v;
    }
    return detail::bareiss(buf.data(), n);
}

inline bool canonical_restrictions(const MonomialSet& f) {
    for (int var = 1; var <= f.n(); ++var) {
        bool divides_some = false;
        bool misses_some = false;
        for (const auto& m : f) {
            if (m.divisible_by(var)) divides_some = true;
            else misses_some = true;
        }
        if (!divides_some || !misses_some) return false;
    }
    return true;
}

inline bool is_cremona(const MonomialSet& f) {
    const std::int64_t det = determinant(log_matrix(f));
    return det == f.degree() || det == -f.degree();
}

inline IncidenceSequence incidence_sequence(const MonomialSet& f) {
    IncidenceSequence seq(static_cast<std::size_t>(f.n()), 0);
    for (int var = 1; var <= f.n(); ++var)
        for (const auto& m : f)
            if (m.divisible_by(var)) ++seq[static_cast<std::size_t>(var - 1)];
    std::sort(seq.begin(), seq.end(), std::greater<>());
    return seq;
}

inline IncidenceSequence incidence_sequence(int n, std::span<const Mask> masks) {
    IncidenceSequence seq = variable_degrees(n, masks);
    std::sort(seq.begin(), seq.end(), std::greater<>());
    return seq;
}

// Prune signal: a doubly stochastic log matrix cannot be Cremona when n and d
// share a factor.
inline bool doubly_stochastic_excluded(int n, int d, const LogMatrix& m) {
    if (m.n() != n) throw ContractViolation("doubly_stochastic_excluded: dimension mismatch");
    if (std::gcd(n, d) <= 1) return false;
    for (int i = 0; i < n; ++i)
        if (m.row_sum(i) != d) return false;
    return true;
}

namespace detail {

inline bool masks_doubly_stochastic_excluded(int n, int d, std::span<const Mask> masks) {
    if (std::gcd(n, d) <= 1) return false;
    for (int i = 0; i < n; ++i) {
        int s = 0;
        for (Mask m : masks) s += (m >> i) & 1U;
        if (s != d) return false;
    }
    return true;
}

} // namespace detail

} // namespace cremona

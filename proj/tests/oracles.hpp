#pragma once

// Slow reference implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cremona/monomial.hpp"

namespace oracle {

using cremona::Mask;

// Laplace expansion along the first row.
inline std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    std::int64_t det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        const std::int64_t term = a[0][c] * cofactor_det(minor);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

inline std::int64_t mask_det(int n, const std::vector<Mask>& columns) {
    std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (columns[static_cast<std::size_t>(j)] >> i) & 1U;
    return cofactor_det(a);
}

inline Mask relabel(const std::vector<int>& perm, Mask m) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if ((m >> i) & 1U) out |= Mask{1} << perm[i];
    return out;
}

inline std::vector<Mask> relabel_set(const std::vector<int>& perm, const std::vector<Mask>& f) {
    std::vector<Mask> out;
    for (Mask m : f) out.push_back(relabel(perm, m));
    std::sort(out.begin(), out.end());
    return out;
}

// Lexicographically least relabeling over all n! permutations.
inline std::vector<Mask> canonical(int n, std::vector<Mask> f) {
    std::sort(f.begin(), f.end());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Mask> best = f;
    do {
        best = std::min(best, relabel_set(perm, f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::size_t stabilizer_order(int n, std::vector<Mask> f) {
    std::sort(f.begin(), f.end());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
        if (relabel_set(perm, f) == f) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

inline std::vector<Mask> masks_of_weight(int n, int d) {
    std::vector<Mask> out;
    for (Mask m = 1; m < (Mask{1} << n); ++m)
        if (cremona::popcount(m) == d) out.push_back(m);
    return out;
}

// Uniform random k-subset of the weight-d masks on n variables.
inline std::vector<Mask> random_subset(std::mt19937& rng, int n, int d, std::size_t k) {
    auto pool = masks_of_weight(n, d);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(k, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

// Cremona orbit representatives found by exhaustive search, canonicalized by brute force.
inline std::set<std::vector<Mask>> brute_census(int n, int d) {
    const auto pool = masks_of_weight(n, d);
    std::set<std::vector<Mask>> out;
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + n, true);
    do {
        std::vector<Mask> f;
        Mask any = 0, all = cremona::full_mask(n);
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pick[i]) {
                f.push_back(pool[i]);
                any |= pool[i];
                all &= pool[i];
            }
        if (any != cremona::full_mask(n) || all != 0) continue;
        const auto det = mask_det(n, f);
        if (det == d || det == -d) out.insert(canonical(n, f));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

} // namespace oracle

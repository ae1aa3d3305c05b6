#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cremona/classify.hpp"
#include "cremona/clutter.hpp"
#include "cremona/error.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/monomial.hpp"
#include "cremona/parallel.hpp"
#include "cremona/symmetry.hpp"

namespace cremona {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Deterministic class order: incidence sequence descending, then canonical
// form ascending.
inline bool class_order(const OrbitClass& a, const OrbitClass& b) {
    if (a.incidence != b.incidence) return a.incidence > b.incidence;
    return a.canonical.masks < b.canonical.masks;
}

// One representative per S_n-orbit of i-subsets of M_{n,d}, grouped by
// incidence sequence.
struct LevelTable {
    int n = 0;
    int d = 0;
    int level = 0;
    std::map<IncidenceSequence, std::vector<OrbitClass>, std::greater<>> classes;

    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& [seq, group] : classes) s += group.size();
        return s;
    }

    // Representatives in class order.
    std::vector<const OrbitClass*> ordered() const {
        std::vector<const OrbitClass*> out;
        for (const auto& [seq, group] : classes)
            for (const auto& c : group) out.push_back(&c);
        return out;
    }

    void insert(OrbitClass c) {
        auto& group = classes[c.incidence];
        group.insert(std::upper_bound(group.begin(), group.end(), c, class_order), std::move(c));
    }

    friend bool operator==(const LevelTable&, const LevelTable&) = default;
};

struct CensusResult {
    int n = 0;
    int d = 0;
    std::vector<OrbitClass> classes;

    std::size_t count() const noexcept { return classes.size(); }

    friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

struct Prunes {
    bool cohesive = false;           // drop non-cohesive completions before the determinant
    bool doubly_stochastic = false;  // drop doubly stochastic completions when gcd(n,d) > 1
    bool gcd_pair = false;           // at (6,3) only: drop completions violating the gcd-pair condition
};

struct Budget {
    std::size_t max_level_classes = std::numeric_limits<std::size_t>::max();
    std::optional<std::chrono::steady_clock::duration> max_wall_time;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, LevelTable last) : std::runtime_error(what), last_completed_(std::move(last)) {}
    const LevelTable& last_completed() const noexcept { return last_completed_; }

private:
    LevelTable last_completed_;
};

struct CensusOptions {
    Prunes prunes;
    unsigned jobs = 1;
    Budget budget;
    std::optional<LevelTable> resume;
    std::function<void(const LevelTable&)> on_level_complete;
};

namespace detail {

inline std::vector<Mask> all_masks(int n, int d) {
    if (n < 1 || n > kMaxVariables || d < 1 || d > n)
        throw ContractViolation("all_monomials: need 1 <= d <= n <= 16");
    std::vector<Mask> out;
    for (Mask m = 0; m <= full_mask(n); ++m)
        if (popcount(m) == d) out.push_back(m);
    return out;
}

inline bool masks_gcd_pair_condition(std::span<const Mask> f) {
    const std::size_t k = f.size();
    auto close = [&](std::size_t a, std::size_t b) { return popcount(f[a] & f[b]) >= 2; };
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                for (std::size_t e = c + 1; e < k; ++e)
                    if (!(close(a, b) || close(a, c) || close(a, e) || close(b, c) || close(b, e) || close(c, e)))
                        return false;
    return true;
}

inline void check_census_range(int n, int d) {
    if (n < 2 || n > kMaxSymmetricVariables)
        throw ContractViolation("census: n must lie in [2, " + std::to_string(kMaxSymmetricVariables) + "]");
    if (d < 1 || d > n - 1) throw ContractViolation("census: d must lie in [1, n-1]");
}

inline std::vector<OrbitClass> classes_from_keys(int n, int d, std::size_t members,
                                                 const std::vector<std::uint64_t>& keys, unsigned jobs) {
    std::vector<OrbitClass> out(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i, unsigned) {
        out[i] = orbit_class_of_canonical(MaskSet(n, d, unpack_key(keys[i], members)));
    });
    std::sort(out.begin(), out.end(), class_order);
    return out;
}

inline std::vector<std::uint64_t> merge_keys(std::vector<std::vector<std::uint64_t>>& per_worker) {
    std::vector<std::uint64_t> all;
    for (auto& w : per_worker) all.insert(all.end(), w.begin(), w.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Expands every representative by one monomial, one candidate per orbit of
// its stabilizer, and hands each completion to emit(worker, masks).
template <class Emit>
void expand_level(const LevelTable& t, unsigned jobs, Emit&& emit) {
    const std::vector<Mask> universe = all_masks(t.n, t.d);
    const auto reps = t.ordered();
    parallel_for(reps.size(), jobs, [&](std::size_t r, unsigned worker) {
        const MaskSet& f = reps[r]->canonical;
        std::vector<Mask> candidates;
        for (Mask m : universe)
            if (!f.contains(m)) candidates.push_back(m);
        for (Mask m : coset_filter(f, candidates)) {
            std::vector<Mask> next = f.masks;
            next.insert(std::lower_bound(next.begin(), next.end(), m), m);
            emit(worker, next);
        }
    });
}

} // namespace detail

inline std::vector<Monomial> all_monomials(int n, int d) {
    std::vector<Monomial> out;
    for (Mask m : detail::all_masks(n, d)) out.push_back(Monomial::from_mask(n, m));
    return out;
}

inline LevelTable first_level(int n, int d) {
    LevelTable t;
    t.n = n;
    t.d = d;
    t.level = 1;
    t.insert(orbit_of(MaskSet(n, d, {full_mask(d)})));
    return t;
}

inline LevelTable build_next_level(const LevelTable& t, unsigned jobs = 1) {
    if (t.level < 1 || static_cast<std::uint64_t>(t.level) >= binomial(static_cast<std::uint64_t>(t.n), static_cast<std::uint64_t>(t.d)))
        throw ContractViolation("build_next_level: no larger subsets exist");
    if (t.level + 1 > 8) throw ContractViolation("build_next_level: subsets beyond 8 members are not supported");
    std::vector<std::vector<std::uint64_t>> found(resolve_jobs(jobs));
    detail::expand_level(t, jobs, [&](unsigned worker, const std::vector<Mask>& next) {
        found[worker].push_back(detail::canonical_key(t.n, next));
    });
    const auto keys = detail::merge_keys(found);
    LevelTable out;
    out.n = t.n;
    out.d = t.d;
    out.level = t.level + 1;
    for (auto& c : detail::classes_from_keys(t.n, t.d, static_cast<std::size_t>(out.level), keys, jobs))
        out.insert(std::move(c));
    return out;
}

inline bool gcd_pair_condition(const MonomialSet& f) {
    if (f.n() != 6 || f.degree() != 3) throw ContractViolation("gcd_pair_condition: defined for n = 6, d = 3");
    if (!f.is_square_free()) throw ContractViolation("gcd_pair_condition: set is not square-free");
    const auto masks = f.masks();
    return detail::masks_gcd_pair_condition(masks);
}

// Level-by-level orbit generation up to n-1 members; completions to n members
// are filtered by the determinant before canonicalization and never stored.
inline CensusResult census(int n, int d, const CensusOptions& opts = {}) {
    detail::check_census_range(n, d);
    const auto start = std::chrono::steady_clock::now();

    LevelTable table;
    if (opts.resume) {
        table = *opts.resume;
        if (table.n != n || table.d != d) throw ContractViolation("census: resume table is for a different (n,d)");
        if (table.level < 1 || table.level > n - 1) throw ContractViolation("census: resume table has an unusable level");
    } else {
        table = first_level(n, d);
        if (opts.on_level_complete) opts.on_level_complete(table);
    }

    while (table.level < n - 1) {
        table = build_next_level(table, opts.jobs);
        if (opts.on_level_complete) opts.on_level_complete(table);
        if (table.level < n - 1) {
            if (table.size() > opts.budget.max_level_classes)
                throw BudgetExceeded("census: level " + std::to_string(table.level) + " holds " +
                                         std::to_string(table.size()) + " classes, over budget",
                                     table);
            if (opts.budget.max_wall_time && std::chrono::steady_clock::now() - start > *opts.budget.max_wall_time)
                throw BudgetExceeded("census: wall-time budget exhausted after level " + std::to_string(table.level), table);
        }
    }

    const bool gcd_pair = opts.prunes.gcd_pair && n == 6 && d == 3;
    std::vector<std::vector<std::uint64_t>> found(resolve_jobs(opts.jobs));
    detail::expand_level(table, opts.jobs, [&](unsigned worker, const std::vector<Mask>& f) {
        if (opts.prunes.cohesive && !detail::masks_cohesive(f)) return;
        if (opts.prunes.doubly_stochastic && detail::masks_doubly_stochastic_excluded(n, d, f)) return;
        if (gcd_pair && !detail::masks_gcd_pair_condition(f)) return;
        if (!detail::masks_satisfy_canonical_restrictions(n, f)) return;
        if (!detail::masks_are_cremona(n, d, f)) return;
        found[worker].push_back(detail::canonical_key(n, f));
    });
    const auto keys = detail::merge_keys(found);

    CensusResult result;
    result.n = n;
    result.d = d;
    result.classes = detail::classes_from_keys(n, d, static_cast<std::size_t>(n), keys, opts.jobs);
    return result;
}

struct OracleOptions {
    unsigned jobs = 1;
    std::uint64_t max_subsets = 50'000'000;
};

namespace detail {

// Colexicographic rank of an ascending index combination.
inline std::uint64_t colex_rank(std::span<const int> idx) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < idx.size(); ++j)
        r += binomial(static_cast<std::uint64_t>(idx[j]), j + 1);
    return r;
}

inline void colex_unrank(std::uint64_t r, std::span<int> idx) {
    for (std::size_t j = idx.size(); j-- > 0;) {
        int c = static_cast<int>(j);
        while (binomial(static_cast<std::uint64_t>(c + 1), j + 1) <= r) ++c;
        idx[j] = c;
        r -= binomial(static_cast<std::uint64_t>(c), j + 1);
    }
}

// Advances to the colex successor; the caller bounds the number of steps.
inline void colex_next(std::span<int> idx) {
    std::size_t j = 0;
    while (j + 1 < idx.size() && idx[j] + 1 == idx[j + 1]) ++j;
    ++idx[j];
    for (std::size_t i = 0; i < j; ++i) idx[i] = static_cast<int>(i);
}

} // namespace detail

// Exhaustive sweep over every n-subset of M_{n,d}. Classes are found by
// expanding each new Cremona set's full orbit with an independent relabeling
// loop, so this path shares no canonicalization code with census().
inline CensusResult oracle_census(int n, int d, const OracleOptions& opts = {}) {
    detail::check_census_range(n, d);
    const std::vector<Mask> universe = detail::all_masks(n, d);
    const auto width = static_cast<std::size_t>(n);
    const std::uint64_t total = binomial(universe.size(), width);
    if (total > opts.max_subsets)
        throw Refusal("oracle_census: " + std::to_string(total) + " subsets exceed the sweep limit of " +
                      std::to_string(opts.max_subsets));

    std::vector<std::uint8_t> cremona(total, 0);
    constexpr std::uint64_t kChunk = 1 << 16;
    const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
    parallel_for(chunks, opts.jobs, [&](std::size_t c, unsigned) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(total, lo + kChunk);
        std::vector<int> idx(width);
        std::vector<Mask> f(width);
        detail::colex_unrank(lo, idx);
        for (std::uint64_t r = lo; r < hi; ++r) {
            for (std::size_t j = 0; j < width; ++j) f[j] = universe[static_cast<std::size_t>(idx[j])];
            if (detail::masks_satisfy_canonical_restrictions(n, f) && detail::masks_are_cremona(n, d, f))
                cremona[r] = 1;
            if (r + 1 < hi) detail::colex_next(idx);
        }
    });

    std::vector<int> index_of(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < universe.size(); ++i) index_of[universe[i]] = static_cast<int>(i);

    std::vector<bool> visited(total, false);
    CensusResult result;
    result.n = n;
    result.d = d;
    std::vector<int> idx(width);
    std::vector<Mask> f(width);
    std::vector<Mask> image(width);
    std::vector<int> image_idx(width);
    std::vector<int> perm(width);
    for (std::uint64_t r = 0; r < total; ++r) {
        if (!cremona[r] || visited[r]) continue;
        detail::colex_unrank(r, idx);
        for (std::size_t j = 0; j < width; ++j) f[j] = universe[static_cast<std::size_t>(idx[j])];
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Mask> best;
        std::uint64_t orbit = 0;
        do {
            for (std::size_t j = 0; j < width; ++j) {
                Mask out = 0;
                for (int i = 0; i < n; ++i)
                    if ((f[j] >> i) & 1U) out |= Mask{1} << perm[static_cast<std::size_t>(i)];
                image[j] = out;
            }
            std::sort(image.begin(), image.end());
            for (std::size_t j = 0; j < width; ++j) image_idx[j] = index_of[image[j]];
            const std::uint64_t ir = detail::colex_rank(image_idx);
            if (!cremona[ir]) throw std::logic_error("oracle_census: Cremona property not invariant under relabeling");
            if (!visited[ir]) {
                visited[ir] = true;
                ++orbit;
            }
            if (best.empty() || image < best) best = image;
        } while (std::next_permutation(perm.begin(), perm.end()));

        OrbitClass c;
        c.canonical = MaskSet(n, d, best);
        c.orbit_size = orbit;
        c.stabilizer_order = factorial(n) / orbit;
        c.incidence = incidence_sequence(n, best);
        result.classes.push_back(std::move(c));
    }
    std::sort(result.classes.begin(), result.classes.end(), class_order);
    return result;
}

struct ReductionCensus {
    CensusResult result;
    std::vector<StructuralType> types;  // parallel to result.classes

    std::size_t count(StructuralType t) const {
        return static_cast<std::size_t>(std::count(types.begin(), types.end(), t));
    }
};

namespace detail {

template <class Fn>
void for_each_combination(int universe, int k, Fn&& fn) {
    if (k > universe || k < 0) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        fn(std::span<const int>(idx));
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == universe - k + j) --j;
        if (j < 0) return;
        ++idx[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

} // namespace detail

// Rebuilds the census from smaller ones: leaf attachment over census(n-1,d),
// root attachment over census(n-1,d-1), and a direct search for sets with
// neither a leaf nor a root anchored at a vertex of maximal degree. Only
// (n,d) with gcd(n,d) > 1 are accepted, where no doubly stochastic class exists.
inline ReductionCensus census_by_reduction(int n, int d, unsigned jobs = 1) {
    detail::check_census_range(n, d);
    if (std::gcd(n, d) == 1)
        throw Refusal("census_by_reduction: gcd(" + std::to_string(n) + "," + std::to_string(d) +
                      ") = 1 leaves the doubly stochastic case uncovered");

    const int new_vertex = n;  // 1-based label of the attached leaf or root
    const Mask new_bit = bit_of(new_vertex);
    std::unordered_map<std::uint64_t, StructuralType> found;
    auto record = [&](const std::vector<Mask>& f, StructuralType t) {
        std::vector<Mask> sorted = f;
        std::sort(sorted.begin(), sorted.end());
        found.emplace(detail::canonical_key(n, sorted), t);
    };

    CensusOptions sub;
    sub.jobs = jobs;

    // Leaf but no root: F = F' + {m x_n}.
    for (const auto& base : census(n - 1, d, sub).classes) {
        for (Mask m : detail::all_masks(n - 1, d - 1)) {
            std::vector<Mask> f = base.canonical.masks;
            f.push_back(m | new_bit);
            const auto deg = variable_degrees(n, f);
            if (std::find(deg.begin(), deg.end(), n - 1) != deg.end()) continue;
            record(f, StructuralType::Type1);
        }
    }

    // Root: F = {x_n g : g in F'} + {m}.
    if (d >= 2) {
        for (const auto& base : census(n - 1, d - 1, sub).classes) {
            std::vector<Mask> lifted;
            for (Mask g : base.canonical.masks) lifted.push_back(g | new_bit);
            for (Mask m : detail::all_masks(n - 1, d)) {
                std::vector<Mask> f = lifted;
                f.push_back(m);
                record(f, StructuralType::Type2);
            }
        }
    }

    // Neither: vertex 1 carries the maximal degree k with d < k <= n-2.
    const std::vector<Mask> base_pool = [&] {
        std::vector<Mask> out;
        for (Mask b : detail::all_masks(n - 1, d - 1)) out.push_back((b << 1) | 1U);
        return out;
    }();
    const std::vector<Mask> rest_pool = [&] {
        std::vector<Mask> out;
        for (Mask b : detail::all_masks(n - 1, d)) out.push_back(b << 1);
        return out;
    }();
    for (int k = d + 1; k <= n - 2; ++k) {
        if (static_cast<std::size_t>(k) > base_pool.size() || static_cast<std::size_t>(n - k) > rest_pool.size()) continue;
        detail::for_each_combination(static_cast<int>(base_pool.size()), k, [&](std::span<const int> bi) {
            detail::for_each_combination(static_cast<int>(rest_pool.size()), n - k, [&](std::span<const int> ri) {
                std::vector<Mask> f;
                for (int i : bi) f.push_back(base_pool[static_cast<std::size_t>(i)]);
                for (int i : ri) f.push_back(rest_pool[static_cast<std::size_t>(i)]);
                const auto deg = variable_degrees(n, f);
                for (int a : deg)
                    if (a > k || a <= 1 || a >= n - 1) return;
                std::sort(f.begin(), f.end());
                if (!detail::masks_are_cremona(n, d, f)) return;
                record(f, StructuralType::Type3);
            });
        });
    }

    std::vector<std::uint64_t> keys;
    for (const auto& [key, t] : found) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    ReductionCensus out;
    out.result.n = n;
    out.result.d = d;
    out.result.classes = detail::classes_from_keys(n, d, static_cast<std::size_t>(n), keys, jobs);
    for (const auto& c : out.result.classes) out.types.push_back(found.at(detail::canonical_key(n, c.canonical.masks)));
    return out;
}

} // namespace cremona

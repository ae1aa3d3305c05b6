#include <gtest/gtest.h>

#include <random>

#include "cremona/cremona.hpp"
#include "oracles.hpp"

using namespace cremona;

namespace {

std::set<std::vector<Mask>> canon_set(const CensusResult& r) {
    std::set<std::vector<Mask>> out;
    for (const auto& c : r.classes) out.insert(c.canonical.masks);
    return out;
}

// Number of S_n-orbits of k-subsets of weight-d masks, by brute force.
std::size_t brute_orbits(int n, int d, int k) {
    const auto pool = oracle::masks_of_weight(n, d);
    std::set<std::vector<Mask>> seen;
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<Mask> f;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pick[i]) f.push_back(pool[i]);
        seen.insert(oracle::canonical(n, f));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return seen.size();
}

struct LevelSizes {
    int n, d;
    std::vector<std::size_t> sizes;  // levels 1..n-1
};

// Frozen from the first verified run; levels up to 5 members are also
// checked against brute-force orbit counts below.
const std::vector<LevelSizes> kLevelSizes = {
    {4, 2, {1, 2, 3}},
    {5, 2, {1, 2, 4, 6}},
    {5, 3, {1, 2, 4, 6}},
    {6, 2, {1, 2, 5, 9, 15}},
    {6, 3, {1, 3, 7, 21, 43}},
    {6, 4, {1, 2, 5, 9, 15}},
    {7, 2, {1, 2, 5, 10, 21, 41}},
    {7, 3, {1, 3, 10, 38, 137, 509}},
    {7, 4, {1, 3, 10, 38, 137, 509}},
};

std::vector<std::size_t> level_sizes(int n, int d, unsigned jobs = 1) {
    std::vector<std::size_t> out;
    auto t = first_level(n, d);
    out.push_back(t.size());
    while (t.level < n - 1) {
        t = build_next_level(t, jobs);
        out.push_back(t.size());
    }
    return out;
}

} // namespace

TEST(AllMonomials, Sizes) {
    EXPECT_EQ(all_monomials(4, 2).size(), 6u);
    EXPECT_EQ(all_monomials(6, 3).size(), 20u);
    EXPECT_EQ(all_monomials(7, 3).size(), 35u);
    const auto m = all_monomials(5, 2);
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end(), [](const Monomial& a, const Monomial& b) { return a.mask() < b.mask(); }));
    EXPECT_THROW(all_monomials(4, 5), ContractViolation);
    EXPECT_THROW(all_monomials(4, 0), ContractViolation);
}

TEST(Levels, FirstLevelHasOneClass) {
    for (int n = 2; n <= 8; ++n)
        for (int d = 1; d < n; ++d) EXPECT_EQ(first_level(n, d).size(), 1u);
}

TEST(Levels, PairsAtFourTwo) {
    const auto t = build_next_level(first_level(4, 2));
    EXPECT_EQ(t.size(), 2u);
    EXPECT_EQ(t.size(), brute_orbits(4, 2, 2));
}

TEST(Levels, FrozenSizes) {
    for (const auto& l : kLevelSizes) EXPECT_EQ(level_sizes(l.n, l.d), l.sizes) << l.n << "," << l.d;
}

TEST(Levels, SizesMatchBruteForceOrbits) {
    for (const auto& l : kLevelSizes) {
        if (l.n > 6) continue;
        for (int k = 1; k <= l.n - 1; ++k)
            EXPECT_EQ(l.sizes[static_cast<std::size_t>(k - 1)], brute_orbits(l.n, l.d, k)) << l.n << "," << l.d << " k=" << k;
    }
}

TEST(Levels, IndependentOfJobs) {
    auto a = first_level(7, 3);
    auto b = a;
    while (a.level < 5) {
        a = build_next_level(a, 1);
        b = build_next_level(b, 4);
        EXPECT_EQ(a, b);
    }
}

TEST(Levels, GroupedByIncidenceSequence) {
    auto t = first_level(6, 3);
    while (t.level < 4) t = build_next_level(t);
    for (const auto& [seq, group] : t.classes)
        for (const auto& c : group) {
            EXPECT_EQ(c.incidence, seq);
            EXPECT_EQ(canonical_form(c.canonical), c.canonical);
        }
}

TEST(Census, TableValues) {
    EXPECT_EQ(census(4, 2).count(), 1u);
    EXPECT_EQ(census(5, 2).count(), 4u);
    EXPECT_EQ(census(6, 2).count(), 8u);
    EXPECT_EQ(census(6, 3).count(), 40u);
    EXPECT_EQ(census(7, 2).count(), 23u);
}

TEST(Census, DegreeOneIsIdentityClass) {
    for (int n = 2; n <= 7; ++n) {
        const auto r = census(n, 1);
        ASSERT_EQ(r.count(), 1u);
        EXPECT_EQ(r.classes[0].stabilizer_order, factorial(n));
    }
}

TEST(Census, FourTwoIsTrianglePlusPendant) {
    const auto r = census(4, 2);
    ASSERT_EQ(r.count(), 1u);
    EXPECT_EQ(r.classes[0].canonical, canonical_form(MaskSet(parse_monomials("x1*x2,x2*x3,x1*x3,x3*x4"))));
}

TEST(Census, MembersAreCremonaAndSorted) {
    for (int n = 3; n <= 6; ++n)
        for (int d = 1; d < n; ++d) {
            const auto r = census(n, d);
            for (const auto& c : r.classes) {
                const auto f = c.monomials();
                EXPECT_TRUE(is_cremona(f));
                EXPECT_TRUE(canonical_restrictions(f));
                EXPECT_EQ(canonical_form(f), f);
            }
            EXPECT_TRUE(std::is_sorted(r.classes.begin(), r.classes.end(), class_order));
        }
}

TEST(Census, MatchesIndependentBruteForce) {
    for (int n = 3; n <= 5; ++n)
        for (int d = 1; d < n; ++d) EXPECT_EQ(canon_set(census(n, d)), oracle::brute_census(n, d)) << n << "," << d;
}

TEST(Census, MatchesSweepOracle) {
    for (int n = 3; n <= 6; ++n)
        for (int d = 1; d < n; ++d) EXPECT_EQ(census(n, d), oracle_census(n, d)) << n << "," << d;
    EXPECT_EQ(census(7, 2), oracle_census(7, 2));
}

TEST(Census, PrunesDoNotChangeResult) {
    const std::vector<std::pair<int, int>> cells{{4, 2}, {5, 2}, {6, 2}, {6, 3}, {6, 4}, {7, 2}};
    for (auto [n, d] : cells) {
        const auto base = census(n, d);
        for (int mask = 1; mask < 8; ++mask) {
            CensusOptions o;
            o.prunes.cohesive = mask & 1;
            o.prunes.doubly_stochastic = mask & 2;
            o.prunes.gcd_pair = mask & 4;
            EXPECT_EQ(census(n, d, o), base) << n << "," << d << " prunes " << mask;
        }
    }
}

TEST(Census, Duality) {
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d < n; ++d) {
            const auto r = census(n, d);
            const auto dual = census(n, n - d);
            EXPECT_EQ(dual_census(r), dual);
        }
}

TEST(Census, TotalsPerDimension) {
    auto total = [](int n) {
        std::size_t s = 0;
        for (int d = 1; d < n; ++d) s += census(n, d).count();
        return s;
    };
    EXPECT_EQ(total(4), 3u);
    EXPECT_EQ(total(5), 10u);
    EXPECT_EQ(total(6), 58u);
}

TEST(Census, JobsDeterminism) {
    CensusOptions one, four;
    four.jobs = 4;
    EXPECT_EQ(census(7, 3, one), census(7, 3, four));
}

TEST(Census, RangeErrors) {
    EXPECT_THROW(census(1, 1), ContractViolation);
    EXPECT_THROW(census(4, 4), ContractViolation);
    EXPECT_THROW(census(9, 2), ContractViolation);
}

TEST(Census, BudgetCarriesLastLevelAndResumes) {
    CensusOptions o;
    o.budget.max_level_classes = 20;
    try {
        (void)census(7, 3, o);
        FAIL() << "expected BudgetExceeded";
    } catch (const BudgetExceeded& e) {
        const auto& t = e.last_completed();
        EXPECT_EQ(t.level, 4);
        EXPECT_EQ(t.size(), 38u);
        CensusOptions r;
        r.resume = t;
        EXPECT_EQ(census(7, 3, r).count(), 674u);
    }
}

TEST(Census, WallTimeBudget) {
    CensusOptions o;
    o.budget.max_wall_time = std::chrono::steady_clock::duration::zero();
    EXPECT_THROW((void)census(6, 3, o), BudgetExceeded);
}

TEST(Census, LevelCallbackSeesEveryLevel) {
    std::vector<int> levels;
    CensusOptions o;
    o.on_level_complete = [&](const LevelTable& t) { levels.push_back(t.level); };
    (void)census(6, 3, o);
    EXPECT_EQ(levels, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Oracle, DegreeOne) {
    for (int n = 2; n <= 7; ++n) EXPECT_EQ(oracle_census(n, 1).count(), 1u);
}

TEST(Oracle, RefusesHugeSweeps) {
    OracleOptions o;
    o.max_subsets = 1000;
    EXPECT_THROW((void)oracle_census(6, 3, o), Refusal);
}

TEST(Oracle, ColexRoundTrip) {
    std::vector<int> idx{0, 1, 2, 3};
    for (std::uint64_t r = 0; r < binomial(10, 4); ++r) {
        std::vector<int> u(4);
        detail::colex_unrank(r, u);
        ASSERT_EQ(u, idx);
        ASSERT_EQ(detail::colex_rank(idx), r);
        detail::colex_next(idx);
    }
}

TEST(GcdPair, BadQuadrupleFails) {
    const auto f = parse_monomials("x1*x2*x3,x1*x4*x5,x2*x4*x6,x3*x5*x6,x1*x2*x4,x1*x2*x5");
    EXPECT_FALSE(gcd_pair_condition(f));
}

TEST(GcdPair, HoldsOnEveryCremonaClass) {
    for (const auto& c : census(6, 3).classes) EXPECT_TRUE(gcd_pair_condition(c.monomials()));
}

TEST(GcdPair, TrivialTrue) {
    // Four members contain x1*x2, so any four members include two of them.
    EXPECT_TRUE(gcd_pair_condition(parse_monomials("x1*x2*x3,x1*x2*x4,x1*x2*x5,x1*x2*x6,x3*x4*x5,x3*x4*x6")));
    EXPECT_THROW(gcd_pair_condition(parse_monomials("x1*x2,x2*x3,x1*x3,x3*x4")), ContractViolation);
}

TEST(Reduction, TypeCountsAtSixThree) {
    const auto r = census_by_reduction(6, 3);
    EXPECT_EQ(r.result, census(6, 3));
    EXPECT_EQ(r.count(StructuralType::Type1), 10u);
    EXPECT_EQ(r.count(StructuralType::Type2), 20u);
    EXPECT_EQ(r.count(StructuralType::Type3), 10u);
    for (std::size_t i = 0; i < r.types.size(); ++i) EXPECT_EQ(r.types[i], type_of(r.result.classes[i].monomials()));
}

TEST(Reduction, OtherCells) {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 4}})
        EXPECT_EQ(census_by_reduction(n, d).result, census(n, d)) << n << "," << d;
}

TEST(Reduction, RefusesCoprimeCells) {
    EXPECT_THROW(census_by_reduction(5, 2), Refusal);
    EXPECT_THROW(census_by_reduction(7, 3), Refusal);
}

#include <gtest/gtest.h>

#include "cremona/cremona.hpp"
#include "oracles.hpp"

using namespace cremona;

namespace {

MonomialSet set_of(const char* text, bool squares = false) { return parse_monomials(text, squares); }

StructureKind kind_of(const char* text) {
    return classify_degree_two(DegreeTwoGraph::from_monomials(set_of(text, true))).kind;
}

// Every set of n distinct degree-2 monomials (loops allowed) in n variables.
template <class Fn>
void for_each_degree_two(int n, Fn&& fn) {
    std::vector<std::pair<int, int>> pool;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) pool.emplace_back(a, b);
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + n, true);
    do {
        DegreeTwoGraph g;
        g.n_vertices = n;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pick[i]) g.edges.push_back(pool[i]);
        fn(g);
    } while (std::prev_permutation(pick.begin(), pick.end()));
}

} // namespace

TEST(DegreeTwo, Examples) {
    EXPECT_EQ(kind_of("x1*x2,x2*x3,x1*x3,x3*x4"), StructureKind::OddCycleTree);
    EXPECT_EQ(kind_of("x1*x2,x2*x3,x3*x4,x1*x4"), StructureKind::NotCremona);
    EXPECT_EQ(kind_of("x1*x1,x1*x2,x2*x3,x3*x4"), StructureKind::TreeOneLoop);
    EXPECT_EQ(std::abs(determinant(log_matrix(set_of("x1*x1,x1*x2,x2*x3,x3*x4", true)))), 2);
}

TEST(DegreeTwo, WitnessIsCycleOrLoop) {
    const auto v = classify_degree_two(DegreeTwoGraph::from_monomials(set_of("x1*x2,x2*x3,x3*x4,x4*x5,x1*x5,x5*x6")));
    EXPECT_EQ(v.kind, StructureKind::OddCycleTree);
    EXPECT_EQ(v.witness, (std::vector<int>{1, 2, 3, 4, 5}));
    const auto w = classify_degree_two(DegreeTwoGraph::from_monomials(set_of("x1*x2,x2*x3,x3*x3", true)));
    EXPECT_EQ(w.kind, StructureKind::TreeOneLoop);
    EXPECT_EQ(w.witness, (std::vector<int>{3}));
}

TEST(DegreeTwo, Preconditions) {
    EXPECT_THROW(classify_degree_two(DegreeTwoGraph::from_monomials(set_of("x1*x2,x2*x3,x1*x3,x4*x5,x5*x6,x4*x6"))),
                 PreconditionError);
    EXPECT_THROW(classify_degree_two(DegreeTwoGraph::from_monomials(set_of("x1*x2,x1*x3,x1*x4,x2*x3,x2*x4"))),
                 PreconditionError);
    DegreeTwoGraph g{3, {{1, 2}, {2, 3}}};
    EXPECT_THROW(classify_degree_two(g), PreconditionError);
}

TEST(DegreeTwo, GraphRoundTrip) {
    const auto f = set_of("x1*x1,x1*x2,x2*x3", true);
    EXPECT_EQ(DegreeTwoGraph::from_monomials(f).to_monomials(), f);
    EXPECT_THROW(DegreeTwoGraph::from_monomials(set_of("x1,x2")), ContractViolation);
}

TEST(DegreeTwo, TheoremHoldsExhaustively) {
    std::size_t checked = 0, cremona = 0;
    for (int n = 2; n <= 6; ++n)
        for_each_degree_two(n, [&](const DegreeTwoGraph& g) {
            const auto f = g.to_monomials();
            if (!is_cohesive(f) || !canonical_restrictions(f)) return;
            const auto v = classify_degree_two(g);
            const std::int64_t det = determinant(log_matrix(f));
            ASSERT_TRUE(det == 0 || det == 2 || det == -2) << format_set(f);
            ASSERT_EQ(v.kind != StructureKind::NotCremona, std::abs(det) == 2) << format_set(f);
            ++checked;
            if (std::abs(det) == 2) ++cremona;
        });
    EXPECT_GT(checked, 1000u);
    EXPECT_GT(cremona, 0u);
}

TEST(DegreeTwo, TreesWithOneLoop) {
    for (int n = 2; n <= 6; ++n)
        for_each_degree_two(n, [&](const DegreeTwoGraph& g) {
            const auto loops = std::count_if(g.edges.begin(), g.edges.end(), [](auto e) { return e.first == e.second; });
            if (loops != 1) return;
            const auto f = g.to_monomials();
            if (!is_cohesive(f) || !canonical_restrictions(f)) return;
            EXPECT_EQ(classify_degree_two(g).kind, StructureKind::TreeOneLoop);
            EXPECT_EQ(std::abs(determinant(log_matrix(f))), 2);
        });
}

TEST(CycleLaw, ClosedFormAndElimination) {
    EXPECT_EQ(cycle_determinant(3), 2);
    EXPECT_EQ(cycle_determinant(4), 0);
    EXPECT_EQ(cycle_determinant(11), 2);
    for (int k = 3; k <= 12; ++k) {
        const std::int64_t expected = 1 - ((k % 2 == 0) ? 1 : -1);
        EXPECT_EQ(cycle_determinant(k), expected);
        const auto m = cycle_incidence_matrix(k);
        if (k <= 9) {
            std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k)));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
            EXPECT_EQ(oracle::cofactor_det(a), expected);
        }
    }
    EXPECT_THROW(cycle_determinant(2), ContractViolation);
}

TEST(Types, Examples) {
    // Type 1: a pentagon cone plus a leaf monomial through x6.
    const auto t1 = set_of("x3*x4*x5,x1*x4*x5,x1*x2*x5,x1*x2*x3,x2*x3*x4,x1*x2*x6");
    EXPECT_TRUE(is_cremona(t1));
    EXPECT_EQ(type_of(t1), StructuralType::Type1);
    // Type 2: x1 times a five-cycle plus one monomial without x1.
    const auto t2 = set_of("x1*x2*x3,x1*x3*x4,x1*x4*x5,x1*x5*x6,x1*x2*x6,x2*x3*x4");
    EXPECT_TRUE(is_cremona(t2));
    EXPECT_EQ(type_of(t2), StructuralType::Type2);
    const auto h1 = set_of("x1*x2*x3,x1*x2*x4,x1*x2*x5,x1*x3*x6,x2*x3*x6,x4*x5*x6");
    EXPECT_EQ(std::abs(determinant(log_matrix(h1))), 3);
    EXPECT_EQ(type_of(h1), StructuralType::Type3);
}

TEST(Types, RootTakesPrecedenceOverLeaf) {
    // x1 in five members, x6 in one.
    const auto f = set_of("x1*x2*x3,x1*x2*x4,x1*x3*x4,x1*x2*x5,x1*x3*x6,x2*x4*x5");
    const auto deg = incidence_sequence(f);
    ASSERT_EQ(deg.front(), 5);
    ASSERT_EQ(deg.back(), 1);
    EXPECT_EQ(type_of(f), StructuralType::Type2);
}

TEST(Types, Contracts) {
    const auto ds = MonomialSet::from_masks(6, {0b000111, 0b001110, 0b011100, 0b111000, 0b110001, 0b100011});
    EXPECT_THROW(type_of(ds), ContractViolation);
    EXPECT_THROW(type_of(set_of("x1*x2,x2*x3,x1*x3,x3*x4")), ContractViolation);
    EXPECT_THROW(type_of(set_of("x1*x2*x3,x1*x2*x4,x1*x2*x5,x1*x3*x4,x1*x3*x5,x1*x4*x5")), ContractViolation);
}

TEST(Types, CensusDecomposition) {
    std::array<int, 4> counts{};
    for (const auto& c : census(6, 3).classes) ++counts[static_cast<std::size_t>(type_of(c.monomials()))];
    EXPECT_EQ(counts[1], 10);
    EXPECT_EQ(counts[2], 20);
    EXPECT_EQ(counts[3], 10);
}

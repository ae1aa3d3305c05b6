#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/clutter.hpp"
#include "cremona/error.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/monomial.hpp"

namespace cremona {

// A degree-2 monomial set as a graph: edge {i,j} is x_i x_j, loop {i,i} is x_i^2.
struct DegreeTwoGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based endpoints

    static DegreeTwoGraph from_monomials(const MonomialSet& f) {
        if (f.degree() != 2) throw ContractViolation("DegreeTwoGraph: monomials must have degree 2");
        DegreeTwoGraph g;
        g.n_vertices = f.n();
        for (const auto& m : f) {
            std::vector<int> ends;
            for (int v = 1; v <= f.n(); ++v)
                for (int e = 0; e < m.exponent(v); ++e) ends.push_back(v);
            g.edges.emplace_back(ends[0], ends[1]);
        }
        return g;
    }

    MonomialSet to_monomials() const {
        std::vector<Monomial> ms;
        for (auto [a, b] : edges) {
            std::vector<int> e(static_cast<std::size_t>(n_vertices), 0);
            ++e.at(static_cast<std::size_t>(a - 1));
            ++e.at(static_cast<std::size_t>(b - 1));
            ms.push_back(Monomial::from_exponents(e));
        }
        return MonomialSet(n_vertices, std::move(ms));
    }
};

enum class StructureKind { OddCycleTree, TreeOneLoop, NotCremona };

inline const char* to_string(StructureKind k) {
    switch (k) {
    case StructureKind::OddCycleTree: return "odd-cycle-tree";
    case StructureKind::TreeOneLoop: return "tree-one-loop";
    case StructureKind::NotCremona: return "not-cremona";
    }
    return "?";
}

struct StructureVerdict {
    StructureKind kind = StructureKind::NotCremona;
    // The cycle's vertices in ascending order, or the looped vertex.
    std::vector<int> witness;
};

inline StructureVerdict classify_degree_two(const DegreeTwoGraph& g) {
    const int n = g.n_vertices;
    if (n < 2 || static_cast<int>(g.edges.size()) != n)
        throw PreconditionError("classify_degree_two: need n edges on n vertices");

    std::vector<int> degree(static_cast<std::size_t>(n), 0);  // incidence degree
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    int loops = 0;
    int loop_vertex = 0;
    for (auto [a, b] : g.edges) {
        if (a < 1 || a > n || b < 1 || b > n) throw ContractViolation("classify_degree_two: bad endpoint");
        ++degree[static_cast<std::size_t>(a - 1)];
        if (a != b) ++degree[static_cast<std::size_t>(b - 1)];
        else { ++loops; loop_vertex = a; }
        parent[static_cast<std::size_t>(find(a - 1))] = find(b - 1);
    }
    for (int v = 0; v < n; ++v) {
        if (find(v) != find(0)) throw PreconditionError("classify_degree_two: graph is not cohesive");
        if (degree[static_cast<std::size_t>(v)] == 0 || degree[static_cast<std::size_t>(v)] == n)
            throw PreconditionError("classify_degree_two: canonical restrictions fail");
    }

    // Connected with |E| = |V|: cyclomatic number is exactly one, so there is a
    // single cycle, which is either the loop or a cycle of simple edges.
    if (loops == 1) return {StructureKind::TreeOneLoop, {loop_vertex}};

    // Strip vertices of graph degree 1 until only the cycle remains.
    std::vector<int> gdeg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : g.edges) { ++gdeg[static_cast<std::size_t>(a - 1)]; ++gdeg[static_cast<std::size_t>(b - 1)]; }
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (gdeg[static_cast<std::size_t>(v)] == 1) stack.push_back(v);
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (removed[static_cast<std::size_t>(v)]) continue;
        removed[static_cast<std::size_t>(v)] = true;
        for (auto [a, b] : g.edges) {
            int other = -1;
            if (a - 1 == v) other = b - 1;
            else if (b - 1 == v) other = a - 1;
            if (other < 0 || removed[static_cast<std::size_t>(other)]) continue;
            if (--gdeg[static_cast<std::size_t>(other)] == 1) stack.push_back(other);
        }
    }
    std::vector<int> cycle;
    for (int v = 0; v < n; ++v)
        if (!removed[static_cast<std::size_t>(v)]) cycle.push_back(v + 1);
    if (cycle.size() % 2 == 1) return {StructureKind::OddCycleTree, cycle};
    return {StructureKind::NotCremona, cycle};
}

// Incidence matrix of the k-cycle with edges {1,2},{2,3},...,{k,1} in that order.
inline LogMatrix cycle_incidence_matrix(int k) {
    if (k < 3) throw ContractViolation("cycle_incidence_matrix: k must be at least 3");
    std::vector<int> e(static_cast<std::size_t>(k * k), 0);
    for (int j = 0; j < k; ++j) {
        e[static_cast<std::size_t>(j * k + j)] = 1;
        e[static_cast<std::size_t>(((j + 1) % k) * k + j)] = 1;
    }
    return LogMatrix(k, std::move(e));
}

inline std::int64_t cycle_determinant(int k) {
    if (k < 3) throw ContractViolation("cycle_determinant: k must be at least 3");
    const std::int64_t closed_form = (k % 2 == 0) ? 0 : 2;
    if (determinant(cycle_incidence_matrix(k)) != closed_form)
        throw std::logic_error("cycle_determinant: elimination disagrees with 1-(-1)^k");
    return closed_form;
}

// Shape of a square-free set by extremal rows of its log matrix: Type2 has a
// root, Type1 has a leaf but no root, Type3 has neither.
enum class StructuralType { Type1 = 1, Type2 = 2, Type3 = 3 };

inline const char* to_string(StructuralType t) {
    switch (t) {
    case StructuralType::Type1: return "1";
    case StructuralType::Type2: return "2";
    case StructuralType::Type3: return "3";
    }
    return "?";
}

namespace detail {

inline StructuralType masks_structural_type(int n, int d, std::span<const Mask> masks) {
    const std::vector<int> deg = variable_degrees(n, masks);
    const bool doubly = std::all_of(deg.begin(), deg.end(), [d](int a) { return a == d; });
    if (doubly) throw ContractViolation("structural type: doubly stochastic log matrix");
    const bool root = std::find(deg.begin(), deg.end(), n - 1) != deg.end();
    if (root) return StructuralType::Type2;
    const bool leaf = std::find(deg.begin(), deg.end(), 1) != deg.end();
    return leaf ? StructuralType::Type1 : StructuralType::Type3;
}

} // namespace detail

inline StructuralType structural_type(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("structural_type: set is not square-free");
    const auto masks = f.masks();
    return detail::masks_structural_type(f.n(), f.degree(), masks);
}

// The trichotomy for cubic square-free sets in six variables.
inline StructuralType type_of(const MonomialSet& f) {
    if (f.n() != 6 || f.degree() != 3) throw ContractViolation("type_of: defined for n = 6, d = 3");
    if (!canonical_restrictions(f)) throw ContractViolation("type_of: canonical restrictions fail");
    return structural_type(f);
}

} // namespace cremona

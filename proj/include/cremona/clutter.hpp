#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/monomial.hpp"
#include "cremona/symmetry.hpp"

namespace cremona {

// A d-uniform clutter on vertices {1..n}; edge j is the support of the j-th
// monomial of the originating set.
class Clutter {
public:
    Clutter(int n_vertices, std::vector<Mask> edges) : n_(n_vertices), edges_(std::move(edges)) {
        if (n_ < 1 || n_ > kMaxVariables) throw ContractViolation("clutter: bad vertex count");
        if (edges_.empty()) throw ContractViolation("clutter: no edges");
        const int d = popcount(edges_.front());
        for (Mask e : edges_) {
            if ((e & ~full_mask(n_)) != 0) throw ContractViolation("clutter: edge uses unknown vertex");
            if (popcount(e) != d) throw ContractViolation("clutter: edges of unequal cardinality");
        }
        for (std::size_t a = 0; a < edges_.size(); ++a)
            for (std::size_t b = 0; b < edges_.size(); ++b)
                if (a != b && (edges_[a] & edges_[b]) == edges_[a])
                    throw ContractViolation("clutter: an edge contains another");
    }

    int n_vertices() const noexcept { return n_; }
    int edge_cardinality() const noexcept { return popcount(edges_.front()); }
    const std::vector<Mask>& edges() const noexcept { return edges_; }

    // Number of edges through a 1-based vertex.
    int incidence_degree(int vertex) const {
        int deg = 0;
        for (Mask e : edges_)
            if (e & bit_of(vertex)) ++deg;
        return deg;
    }

    friend bool operator==(const Clutter&, const Clutter&) = default;

private:
    int n_;
    std::vector<Mask> edges_;
};

struct ConeDecomposition {
    int apex = 0;                  // 1-based vertex
    std::vector<Mask> base_edges;  // edges through the apex, apex bit cleared
    int cardinality = 0;

    friend bool operator==(const ConeDecomposition&, const ConeDecomposition&) = default;
};

inline Clutter from_monomials(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("from_monomials: set is not square-free");
    return Clutter(f.n(), f.masks());
}

inline MonomialSet dual_complement(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("dual_complement: set is not square-free");
    if (f.degree() >= f.n()) throw ContractViolation("dual_complement: degree n gives empty supports");
    std::vector<Mask> out;
    for (Mask m : f.masks()) out.push_back(full_mask(f.n()) & ~m);
    return MonomialSet::from_masks(f.n(), out);
}

inline Clutter dual_complement(const Clutter& s) {
    std::vector<Mask> out;
    for (Mask e : s.edges()) out.push_back(full_mask(s.n_vertices()) & ~e);
    return Clutter(s.n_vertices(), std::move(out));
}

// Leaves paired with their unique edge, by ascending vertex.
inline std::vector<std::pair<int, Mask>> find_leaves(const Clutter& s) {
    std::vector<std::pair<int, Mask>> out;
    for (int v = 1; v <= s.n_vertices(); ++v) {
        if (s.incidence_degree(v) != 1) continue;
        for (Mask e : s.edges())
            if (e & bit_of(v)) out.emplace_back(v, e);
    }
    return out;
}

inline std::vector<int> find_roots(const Clutter& s) {
    std::vector<int> out;
    const int target = static_cast<int>(s.edges().size()) - 1;
    for (int v = 1; v <= s.n_vertices(); ++v)
        if (s.incidence_degree(v) == target) out.push_back(v);
    return out;
}

namespace detail {

// Removes a 1-based vertex and renumbers the rest order-preservingly.
inline Mask drop_vertex(Mask m, int vertex) {
    const Mask low = m & (bit_of(vertex) - 1);
    const Mask high = (m >> vertex) << (vertex - 1);
    return low | high;
}

} // namespace detail

inline MonomialSet delete_leaf(const MonomialSet& f, int v) {
    const Clutter s = from_monomials(f);
    if (v < 1 || v > f.n() || s.incidence_degree(v) != 1)
        throw PreconditionError("delete_leaf: x" + std::to_string(v) + " is not a leaf");
    if (f.n() <= 2) throw PreconditionError("delete_leaf: cannot reduce below two variables");
    std::vector<Mask> out;
    for (Mask m : f.masks())
        if (!(m & bit_of(v))) out.push_back(detail::drop_vertex(m, v));
    return MonomialSet::from_masks(f.n() - 1, out);
}

inline MonomialSet pluck_root(const MonomialSet& f, int v) {
    const Clutter s = from_monomials(f);
    if (v < 1 || v > f.n() || s.incidence_degree(v) != f.n() - 1)
        throw PreconditionError("pluck_root: x" + std::to_string(v) + " is not a root");
    if (f.degree() < 2) throw PreconditionError("pluck_root: degree must be at least 2");
    if (f.n() <= 2) throw PreconditionError("pluck_root: cannot reduce below two variables");
    std::vector<Mask> out;
    for (Mask m : f.masks())
        if (m & bit_of(v)) out.push_back(detail::drop_vertex(m & ~bit_of(v), v));
    return MonomialSet::from_masks(f.n() - 1, out);
}

namespace detail {

inline bool masks_cohesive(std::span<const Mask> masks) {
    const std::size_t k = masks.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (masks[a] & masks[b]) parent[find(a)] = find(b);
    for (std::size_t a = 1; a < k; ++a)
        if (find(a) != find(0)) return false;
    return true;
}

} // namespace detail

// Connectivity of the variable/monomial incidence graph over variables that
// occur. Variables of degree zero do not break cohesion.
inline bool is_cohesive(const MonomialSet& f) {
    std::vector<Mask> supports;
    for (const auto& m : f) supports.push_back(m.support());
    return detail::masks_cohesive(supports);
}

inline std::vector<ConeDecomposition> maximal_cones(const Clutter& s) {
    int best = 0;
    for (int v = 1; v <= s.n_vertices(); ++v) best = std::max(best, s.incidence_degree(v));
    std::vector<ConeDecomposition> out;
    if (best == 0) return out;
    for (int v = 1; v <= s.n_vertices(); ++v) {
        if (s.incidence_degree(v) != best) continue;
        ConeDecomposition c;
        c.apex = v;
        c.cardinality = best;
        for (Mask e : s.edges())
            if (e & bit_of(v)) c.base_edges.push_back(e & ~bit_of(v));
        std::sort(c.base_edges.begin(), c.base_edges.end());
        out.push_back(std::move(c));
    }
    return out;
}

// Sorted multiset of canonical forms of maximal-cone bases, each base taken
// on the vertices other than its apex.
inline std::vector<std::vector<Mask>> cone_fingerprint(const Clutter& s) {
    std::vector<std::vector<Mask>> out;
    for (const auto& cone : maximal_cones(s)) {
        std::vector<Mask> base;
        for (Mask e : cone.base_edges) base.push_back(detail::drop_vertex(e, cone.apex));
        std::sort(base.begin(), base.end());
        out.push_back(detail::canonical_masks(s.n_vertices() - 1, base));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cremona

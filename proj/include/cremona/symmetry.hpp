#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/monomial.hpp"

namespace cremona {

// Largest ambient dimension for which orbit computations are attempted; the
// canonicalizer walks all n! relabelings.
inline constexpr int kMaxSymmetricVariables = 8;

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// A bijection of the variables {1..n}.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(int n) {
        Permutation p;
        p.images_.resize(static_cast<std::size_t>(n));
        std::iota(p.images_.begin(), p.images_.end(), 0);
        return p;
    }

    // images[i] is the image of variable i+1, given 1-based.
    static Permutation from_images(std::span<const int> one_based) {
        Permutation p;
        p.images_.reserve(one_based.size());
        for (int v : one_based) p.images_.push_back(v - 1);
        p.validate();
        return p;
    }
    static Permutation from_images(std::initializer_list<int> one_based) {
        return from_images(std::span<const int>(one_based.begin(), one_based.size()));
    }

    // Cycle notation such as "(1,2)(3,4)" or "(2,3,4,5,6)"; "()" is the identity.
    static Permutation from_cycles(int n, const std::string& text) {
        Permutation p = identity(n);
        std::vector<int> cycle;
        std::string number;
        auto flush_number = [&] {
            if (number.empty()) return;
            const int v = std::stoi(number);
            if (v < 1 || v > n) throw ContractViolation("cycle entry out of range: " + number);
            cycle.push_back(v - 1);
            number.clear();
        };
        bool open = false;
        for (char c : text) {
            if (c == '(') {
                if (open) throw ContractViolation("nested '(' in cycle notation");
                open = true;
                cycle.clear();
            } else if (c == ')') {
                if (!open) throw ContractViolation("unbalanced ')' in cycle notation");
                flush_number();
                for (std::size_t i = 0; i < cycle.size(); ++i)
                    p.images_[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
                open = false;
            } else if (c == ',' || c == ' ') {
                flush_number();
            } else if (c >= '0' && c <= '9') {
                number.push_back(c);
            } else {
                throw ContractViolation(std::string("unexpected character in cycle notation: ") + c);
            }
        }
        if (open) throw ContractViolation("unterminated cycle");
        p.validate();
        return p;
    }

    int size() const noexcept { return static_cast<int>(images_.size()); }

    // Image of a 1-based variable.
    int operator()(int variable) const { return images_.at(static_cast<std::size_t>(variable - 1)) + 1; }
    int image0(int i) const noexcept { return images_[static_cast<std::size_t>(i)]; }

    Mask apply(Mask m) const noexcept {
        Mask out = 0;
        for (int i = 0; m != 0; ++i, m >>= 1)
            if (m & 1U) out |= Mask{1} << images_[static_cast<std::size_t>(i)];
        return out;
    }

    // (a * b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw ContractViolation("composing permutations of different degree");
        Permutation p;
        p.images_.resize(a.images_.size());
        for (std::size_t i = 0; i < p.images_.size(); ++i)
            p.images_[i] = a.images_[static_cast<std::size_t>(b.images_[i])];
        return p;
    }

    Permutation inverse() const {
        Permutation p;
        p.images_.resize(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i)
            p.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
        return p;
    }

    std::string to_cycles() const {
        std::string out;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i] || images_[i] == static_cast<int>(i)) continue;
            out += '(';
            std::size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += ',';
                out += std::to_string(j + 1);
                first = false;
                j = static_cast<std::size_t>(images_[j]);
            }
            out += ')';
        }
        return out.empty() ? "()" : out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    void validate() const {
        std::vector<bool> hit(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || hit[static_cast<std::size_t>(v)])
                throw ContractViolation("not a permutation");
            hit[static_cast<std::size_t>(v)] = true;
        }
    }

    std::vector<int> images_;
};

// All n! permutations of {0..n-1} in lexicographic order, with the image of
// every mask under each of them precomputed.
class PermutationTable {
public:
    static const PermutationTable& get(int n) {
        if (n < 1 || n > kMaxSymmetricVariables)
            throw ContractViolation("orbit computations support 1 <= n <= " +
                                    std::to_string(kMaxSymmetricVariables));
        static std::array<std::once_flag, kMaxSymmetricVariables + 1> flags;
        static std::array<std::unique_ptr<PermutationTable>, kMaxSymmetricVariables + 1> tables;
        const auto idx = static_cast<std::size_t>(n);
        std::call_once(flags[idx], [&] { tables[idx].reset(new PermutationTable(n)); });
        return *tables[idx];
    }

    int n() const noexcept { return n_; }
    std::size_t count() const noexcept { return count_; }
    const std::uint8_t* images(std::size_t p) const noexcept { return &masks_[p << n_]; }
    const std::uint8_t* perm(std::size_t p) const noexcept { return &perms_[p * static_cast<std::size_t>(n_)]; }

    Permutation permutation(std::size_t p) const {
        std::vector<int> one_based;
        for (int i = 0; i < n_; ++i) one_based.push_back(perm(p)[i] + 1);
        return Permutation::from_images(one_based);
    }

private:
    explicit PermutationTable(int n) : n_(n), count_(factorial(n)) {
        perms_.resize(count_ * static_cast<std::size_t>(n));
        masks_.resize(count_ << n);
        std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), std::uint8_t{0});
        std::size_t idx = 0;
        do {
            std::copy(p.begin(), p.end(), perms_.begin() + static_cast<std::ptrdiff_t>(idx * static_cast<std::size_t>(n)));
            std::uint8_t* row = &masks_[idx << n];
            for (unsigned m = 0; m < (1U << n); ++m) {
                unsigned out = 0;
                for (int i = 0; i < n; ++i)
                    if ((m >> i) & 1U) out |= 1U << p[static_cast<std::size_t>(i)];
                row[m] = static_cast<std::uint8_t>(out);
            }
            ++idx;
        } while (std::next_permutation(p.begin(), p.end()));
    }

    int n_;
    std::size_t count_;
    std::vector<std::uint8_t> perms_;
    std::vector<std::uint8_t> masks_;
};

namespace detail {

inline void sort_small(std::uint8_t* v, std::size_t k) {
    for (std::size_t i = 1; i < k; ++i) {
        const std::uint8_t x = v[i];
        std::size_t j = i;
        for (; j > 0 && v[j - 1] > x; --j) v[j] = v[j - 1];
        v[j] = x;
    }
}

inline std::uint64_t pack_key(const std::uint8_t* v, std::size_t k) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < k; ++j) key = (key << 8) | v[j];
    return key;
}

inline std::vector<Mask> unpack_key(std::uint64_t key, std::size_t k) {
    std::vector<Mask> out(k);
    for (std::size_t j = k; j-- > 0;) {
        out[j] = static_cast<Mask>(key & 0xFF);
        key >>= 8;
    }
    return out;
}

// Minimum over all relabelings of the ascending mask list, packed big-endian so
// that integer order equals lexicographic order. Requires n <= 8, k <= 8.
inline std::uint64_t canonical_key(int n, std::span<const Mask> masks) {
    const std::size_t k = masks.size();
    if (k == 0) return 0;
    if (k > 8) throw ContractViolation("canonical_key: more than 8 members");
    const PermutationTable& table = PermutationTable::get(n);
    std::array<std::uint8_t, 8> src{};
    for (std::size_t j = 0; j < k; ++j) src[j] = static_cast<std::uint8_t>(masks[j]);
    std::uint64_t best = ~std::uint64_t{0};
    std::uint8_t best_lead = 0xFF;
    std::array<std::uint8_t, 8> v{};
    for (std::size_t p = 0, count = table.count(); p < count; ++p) {
        const std::uint8_t* img = table.images(p);
        std::uint8_t lead = 0xFF;
        for (std::size_t j = 0; j < k; ++j) {
            v[j] = img[src[j]];
            lead = std::min(lead, v[j]);
        }
        if (lead > best_lead) continue;
        sort_small(v.data(), k);
        const std::uint64_t key = pack_key(v.data(), k);
        if (key < best) {
            best = key;
            best_lead = v[0];
        }
    }
    return best;
}

// Same minimum for member counts beyond the packed-key range.
inline std::vector<Mask> canonical_masks_wide(int n, std::span<const Mask> masks) {
    const PermutationTable& table = PermutationTable::get(n);
    std::vector<Mask> best;
    std::vector<Mask> v(masks.size());
    for (std::size_t p = 0; p < table.count(); ++p) {
        const std::uint8_t* img = table.images(p);
        for (std::size_t j = 0; j < masks.size(); ++j) v[j] = img[masks[j]];
        std::sort(v.begin(), v.end());
        if (best.empty() || v < best) best = v;
    }
    return best;
}

inline std::vector<Mask> canonical_masks(int n, std::span<const Mask> masks) {
    if (masks.size() <= 8) return unpack_key(canonical_key(n, masks), masks.size());
    return canonical_masks_wide(n, masks);
}

// Indices into the permutation table of every relabeling fixing the set. Only
// relabelings that preserve each variable's incidence degree are tried.
inline std::vector<std::size_t> stabilizer_indices(int n, std::span<const Mask> sorted_masks) {
    const PermutationTable& table = PermutationTable::get(n);
    const std::vector<int> deg = variable_degrees(n, sorted_masks);
    std::vector<std::size_t> out;
    std::vector<Mask> v(sorted_masks.size());
    for (std::size_t p = 0; p < table.count(); ++p) {
        const std::uint8_t* perm = table.perm(p);
        bool compatible = true;
        for (int i = 0; i < n && compatible; ++i)
            compatible = deg[static_cast<std::size_t>(perm[i])] == deg[static_cast<std::size_t>(i)];
        if (!compatible) continue;
        const std::uint8_t* img = table.images(p);
        for (std::size_t j = 0; j < sorted_masks.size(); ++j) v[j] = img[sorted_masks[j]];
        std::sort(v.begin(), v.end());
        if (std::equal(v.begin(), v.end(), sorted_masks.begin())) out.push_back(p);
    }
    return out;
}

} // namespace detail

inline Mask act(const Permutation& sigma, Mask m) { return sigma.apply(m); }

inline MaskSet act(const Permutation& sigma, const MaskSet& f) {
    if (sigma.size() != f.n) throw ContractViolation("act: permutation degree does not match n");
    std::vector<Mask> out;
    out.reserve(f.size());
    for (Mask m : f.masks) out.push_back(sigma.apply(m));
    return MaskSet(f.n, f.d, std::move(out));
}

// sigma * x^a places exponent a_i on variable sigma(i).
inline Monomial act(const Permutation& sigma, const Monomial& m) {
    if (sigma.size() != m.n()) throw ContractViolation("act: permutation degree does not match n");
    std::vector<int> e(static_cast<std::size_t>(m.n()), 0);
    for (int i = 1; i <= m.n(); ++i) e[static_cast<std::size_t>(sigma(i) - 1)] = m.exponent(i);
    return Monomial::from_exponents(e);
}

inline MonomialSet act(const Permutation& sigma, const MonomialSet& f) {
    if (sigma.size() != f.n()) throw ContractViolation("act: permutation degree does not match n");
    std::vector<Monomial> out;
    out.reserve(f.size());
    for (const auto& m : f) out.push_back(act(sigma, m));
    return MonomialSet(f.n(), std::move(out));
}

inline MaskSet canonical_form(const MaskSet& f) {
    return MaskSet(f.n, f.d, detail::canonical_masks(f.n, f.masks));
}

inline MonomialSet canonical_form(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("canonical_form: set is not square-free");
    const auto masks = f.masks();
    const auto canon = detail::canonical_masks(f.n(), masks);
    return MonomialSet::from_masks(f.n(), canon);
}

inline std::vector<Permutation> stabilizer(const MaskSet& f) {
    const PermutationTable& table = PermutationTable::get(f.n);
    std::vector<Permutation> out;
    for (std::size_t p : detail::stabilizer_indices(f.n, f.masks)) out.push_back(table.permutation(p));
    return out;
}

inline std::vector<Permutation> stabilizer(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("stabilizer: set is not square-free");
    return stabilizer(MaskSet(f));
}

// Canonical representative of an S_n-orbit together with its fingerprints.
struct OrbitClass {
    MaskSet canonical;
    std::uint64_t stabilizer_order = 0;
    IncidenceSequence incidence;
    std::uint64_t orbit_size = 0;

    MonomialSet monomials() const { return canonical.to_monomial_set(); }

    friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

namespace detail {

// Builds the class record for a set that is already in canonical form.
inline OrbitClass orbit_class_of_canonical(MaskSet canonical) {
    OrbitClass c;
    c.stabilizer_order = detail::stabilizer_indices(canonical.n, canonical.masks).size();
    c.orbit_size = factorial(canonical.n) / c.stabilizer_order;
    c.incidence = incidence_sequence(canonical.n, canonical.masks);
    c.canonical = std::move(canonical);
    return c;
}

} // namespace detail

inline OrbitClass orbit_of(const MaskSet& f) { return detail::orbit_class_of_canonical(canonical_form(f)); }

inline OrbitClass orbit_of(const MonomialSet& f) {
    if (!f.is_square_free()) throw ContractViolation("orbit_of: set is not square-free");
    return orbit_of(MaskSet(f));
}

// One candidate per orbit of the stabilizer of f: two candidates are merged
// when a symmetry of f maps one to the other. The smallest mask of each
// merged group is kept; output is ascending.
inline std::vector<Mask> coset_filter(const MaskSet& f, std::span<const Mask> candidates) {
    const PermutationTable& table = PermutationTable::get(f.n);
    const auto symmetries = detail::stabilizer_indices(f.n, f.masks);
    std::vector<Mask> sorted(candidates.begin(), candidates.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<bool> covered(std::size_t{1} << f.n, false);
    std::vector<Mask> out;
    for (Mask c : sorted) {
        if (f.contains(c)) throw ContractViolation("coset_filter: candidate already belongs to the set");
        if (covered[c]) continue;
        out.push_back(c);
        for (std::size_t p : symmetries) covered[table.images(p)[c]] = true;
    }
    return out;
}

inline std::vector<Monomial> coset_filter(const MonomialSet& f, std::span<const Monomial> candidates) {
    std::vector<Mask> masks;
    masks.reserve(candidates.size());
    for (const auto& m : candidates) masks.push_back(m.mask());
    std::vector<Monomial> out;
    for (Mask m : coset_filter(MaskSet(f), masks)) out.push_back(Monomial::from_mask(f.n(), m));
    return out;
}

} // namespace cremona

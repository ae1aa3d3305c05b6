#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cremona/error.hpp"
#include "cremona/monomial.hpp"

namespace cremona {

// Grammar: monomials separated by ',', each a '*'-joined product of factors
// x<k>; whitespace is ignored. The number of variables is the number of
// monomials. A repeated factor is accepted only when squares are allowed.
inline MonomialSet parse_monomials(std::string_view text, bool allow_squares = false) {
    struct Parsed {
        std::vector<int> exponents;
        std::size_t position;
    };
    std::vector<Parsed> parsed;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_factor = [&]() -> std::pair<int, std::size_t> {
        skip_ws();
        const std::size_t at = i;
        if (i >= text.size() || (text[i] != 'x' && text[i] != 'X')) throw ParseError("expected 'x<k>'", at);
        ++i;
        skip_ws();
        const std::size_t digits = i;
        int value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + (text[i] - '0');
            if (value > kMaxVariables) throw ParseError("variable index too large", digits);
            ++i;
        }
        if (i == digits) throw ParseError("expected variable index", digits);
        if (value < 1) throw ParseError("variable indices start at 1", digits);
        return {value, at};
    };

    skip_ws();
    if (i >= text.size()) throw ParseError("empty monomial list", i);
    for (;;) {
        skip_ws();
        Parsed p{std::vector<int>(kMaxVariables, 0), i};
        for (;;) {
            auto [var, at] = parse_factor();
            if (++p.exponents[static_cast<std::size_t>(var - 1)] > 1 && !allow_squares)
                throw ParseError("repeated factor x" + std::to_string(var) + " (squares are not accepted here)", at);
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            break;
        }
        parsed.push_back(std::move(p));
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != ',') throw ParseError("expected ',' or '*'", i);
        ++i;
    }

    const int n = static_cast<int>(parsed.size());
    if (n < 2 || n > kMaxVariables) throw ParseError("need between 2 and 16 monomials", 0);
    std::vector<Monomial> ms;
    int degree = -1;
    for (const auto& p : parsed) {
        for (int v = n; v < kMaxVariables; ++v)
            if (p.exponents[static_cast<std::size_t>(v)] != 0)
                throw ParseError("x" + std::to_string(v + 1) + " exceeds the " + std::to_string(n) +
                                     " variables implied by " + std::to_string(n) + " monomials",
                                 p.position);
        const Monomial m = Monomial::from_exponents(
            std::span<const int>(p.exponents.data(), static_cast<std::size_t>(n)));
        if (degree < 0) degree = m.degree();
        else if (m.degree() != degree) throw ParseError("mixed degrees", p.position);
        if (!m.is_square_free() && m.degree() != 2)
            throw ParseError("squares are only accepted in degree 2", p.position);
        for (const auto& prev : ms)
            if (prev == m) throw ParseError("duplicate monomial", p.position);
        ms.push_back(m);
    }
    return MonomialSet(n, std::move(ms));
}

inline std::string format_monomial(const Monomial& m) {
    std::string out;
    for (int v = 1; v <= m.n(); ++v)
        for (int e = 0; e < m.exponent(v); ++e) {
            if (!out.empty()) out += '*';
            out += 'x' + std::to_string(v);
        }
    return out.empty() ? "1" : out;
}

inline std::string format_set(const MonomialSet& f) {
    std::string out;
    for (const auto& m : f) {
        if (!out.empty()) out += ',';
        out += format_monomial(m);
    }
    return out;
}

inline std::string format_sequence(const std::vector<int>& seq) {
    std::string out = "(";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(seq[i]);
    }
    return out + ")";
}

} // namespace cremona

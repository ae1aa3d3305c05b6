#pragma once

#include <string>

#include "cremona/monomial.hpp"
#include "cremona/parse.hpp"

namespace cremona {

// Bipartite incidence graph in Graphviz DOT: round variable nodes, square
// monomial nodes, one edge per dividing variable (labelled by the exponent
// when it exceeds one).
inline std::string to_dot(const MonomialSet& f, const std::string& name = "clutter") {
    std::string out = "graph " + name + " {\n";
    for (int v = 1; v <= f.n(); ++v)
        out += "  x" + std::to_string(v) + " [shape=circle, label=\"x" + std::to_string(v) + "\"];\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        out += "  m" + std::to_string(j + 1) + " [shape=box, label=\"" + format_monomial(f[j]) + "\"];\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        for (int v = 1; v <= f.n(); ++v) {
            const int e = f[j].exponent(v);
            if (e == 0) continue;
            out += "  x" + std::to_string(v) + " -- m" + std::to_string(j + 1);
            if (e > 1) out += " [label=\"" + std::to_string(e) + "\"]";
            out += ";\n";
        }
    out += "}\n";
    return out;
}

} // namespace cremona

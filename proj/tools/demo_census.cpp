#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cremona/cremona.hpp"

// Prints count(n,d) for 2 <= n <= max_n (default 6) with per-row totals.
int main(int argc, char** argv) {
    const int max_n = argc > 1 ? std::atoi(argv[1]) : 6;
    if (max_n < 2 || max_n > 7) {
        std::fprintf(stderr, "usage: demo_census [max_n in 2..7]\n");
        return 2;
    }
    for (int n = 2; n <= max_n; ++n) {
        std::size_t total = 0;
        std::printf("n=%d:", n);
        for (int d = 1; d <= n - 1; ++d) {
            const auto start = std::chrono::steady_clock::now();
            const auto r = cremona::census(n, d);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::printf("  d=%d -> %zu (%.2fs)", d, r.count(), s);
            total += r.count();
        }
        std::printf("  total %zu\n", total);
    }
    return 0;
}

// Prints the smallest feasible GC half-window alpha for a grid of strand
// lengths and iteration budgets, then the success arithmetic at the default
// operating point.

#include <cstdio>

#include <dnacodec/dnacodec.hpp>

using namespace dnacodec;

int main() {
    auto table = canonical_table48();
    Ratio eps(1, 10000);

    std::printf("smallest alpha with residual failure <= 1e-4\n\n");
    std::printf("  I \\ n |");
    const int lengths[] = {100, 150, 200, 250, 300};
    for (int n : lengths) std::printf(" %5d", n);
    std::printf("\n  ------+------------------------------\n");
    for (int iterations : {1, 2, 4, 8}) {
        std::printf("  %5d |", iterations);
        for (int n : lengths) {
            Ratio a = min_alpha(table, n, iterations, eps);
            std::printf(" %5.3f", a.value());
        }
        std::printf("\n");
    }

    std::printf("\ndefault operating point: n=198, alpha=0.05, 4 attempts\n");
    auto dist = payload_gc_distribution(table, 198);
    Ratio alpha(1, 20);
    auto [lo, hi] = gc_window(198, alpha);
    BigRat p = window_probability(dist, alpha);
    BigRat fail = (BigRat(1) - p) * (BigRat(1) - p);
    fail *= fail;
    std::printf("  GC window: [%lld, %lld] of 198 payload nt\n", lo, hi);
    std::printf("  one attempt lands inside: %.6f\n", static_cast<double>(p));
    std::printf("  all four attempts miss:   %.3e\n", static_cast<double>(fail));
    return 0;
}

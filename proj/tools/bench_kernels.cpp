// Timing comparison of the serial reference kernels against the OpenMP
// entry points, plus a cross-check that both produce identical entries.

#include <chrono>
#include <complex>
#include <cstdio>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "offdiag/kernels.hpp"

namespace {

using offdiag::kernels::cplx;

std::vector<cplx> random_matrix(std::size_t n, std::uint64_t seed) {
    std::vector<cplx> m(n * n);
    std::uint64_t state = seed;
    auto next = [&state] {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
    };
    for (auto& e : m) e = cplx(next(), next());
    return m;
}

template <typename F>
double best_seconds(F&& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel entry points fall back to serial\n");
#endif
    std::printf("%-10s %6s %12s %12s %9s %10s\n", "kernel", "n", "serial[ms]",
                "parallel[ms]", "speedup", "max|diff|");

    for (const std::size_t n : {64u, 128u, 256u, 384u}) {
        const auto a = random_matrix(n, 17);
        const auto b = random_matrix(n, 42);
        std::vector<cplx> c1(n * n), c2(n * n);
        const int reps = n <= 128 ? 7 : 3;

        const double ts = best_seconds(
            [&] { offdiag::kernels::serial::multiply(a.data(), b.data(), c1.data(), n); },
            reps);
        const double tp = best_seconds(
            [&] { offdiag::kernels::multiply(a.data(), b.data(), c2.data(), n); }, reps);
        const double diff = offdiag::kernels::max_abs_diff(c1.data(), c2.data(), n * n);
        std::printf("%-10s %6zu %12.3f %12.3f %9.2f %10.3e\n", "multiply", n,
                    ts * 1e3, tp * 1e3, ts / tp, diff);
    }

    for (const std::size_t n : {256u, 512u, 1024u}) {
        const auto a = random_matrix(n, 7);
        const auto x = random_matrix(1, 11);
        std::vector<cplx> xv(n), y1(n), y2(n);
        for (std::size_t i = 0; i < n; ++i) xv[i] = a[i];
        const int reps = 20;

        const double ts = best_seconds(
            [&] { offdiag::kernels::serial::matvec(a.data(), xv.data(), y1.data(), n); },
            reps);
        const double tp = best_seconds(
            [&] { offdiag::kernels::matvec(a.data(), xv.data(), y2.data(), n); }, reps);
        const double diff = offdiag::kernels::max_abs_diff(y1.data(), y2.data(), n);
        std::printf("%-10s %6zu %12.3f %12.3f %9.2f %10.3e\n", "matvec", n,
                    ts * 1e3, tp * 1e3, ts / tp, diff);
    }
    return 0;
}

#include "offdiag/kernels.hpp"

#include <algorithm>

namespace offdiag::kernels {

namespace {

// Explicit real/imaginary arithmetic; std::complex<double> is
// layout-compatible with double[2].
inline void multiply_row(const double* a, const double* b, double* c,
                         std::size_t n, std::size_t i) {
    double* crow = c + 2 * i * n;
    std::fill(crow, crow + 2 * n, 0.0);
    const double* arow = a + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = arow[2 * k];
        const double ai = arow[2 * k + 1];
        if (ar == 0.0 && ai == 0.0) continue;
        const double* brow = b + 2 * k * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double br = brow[2 * j];
            const double bi = brow[2 * j + 1];
            crow[2 * j] += ar * br - ai * bi;
            crow[2 * j + 1] += ar * bi + ai * br;
        }
    }
}

inline void matvec_row(const double* a, const double* x, double* y,
                       std::size_t n, std::size_t i) {
    const double* arow = a + 2 * i * n;
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = arow[2 * k];
        const double ai = arow[2 * k + 1];
        const double xr = x[2 * k];
        const double xi = x[2 * k + 1];
        re += ar * xr - ai * xi;
        im += ar * xi + ai * xr;
    }
    y[2 * i] = re;
    y[2 * i + 1] = im;
}

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

namespace serial {

void multiply(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) multiply_row(raw(a), raw(b), raw(c), n, i);
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) matvec_row(raw(a), raw(x), raw(y), n, i);
}

}  // namespace serial

void multiply(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
#if defined(_OPENMP)
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i)
        multiply_row(raw(a), raw(b), raw(c), n, static_cast<std::size_t>(i));
#else
    serial::multiply(a, b, c, n);
#endif
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
#if defined(_OPENMP)
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i)
        matvec_row(raw(a), raw(x), raw(y), n, static_cast<std::size_t>(i));
#else
    serial::matvec(a, x, y, n);
#endif
}

void adjoint(const cplx* a, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a[i * n + j]);
}

double max_abs(const cplx* a, std::size_t count) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double max_abs_diff(const cplx* a, const cplx* b, std::size_t count) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace offdiag::kernels

#ifndef OFFDIAG_KERNELS_HPP
#define OFFDIAG_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace offdiag::kernels {

using cplx = std::complex<double>;

// Serial reference implementations. The parallel entry points below are
// row-partitioned over the same per-row kernels, so their output is
// identical to the serial path for any thread count.
namespace serial {

// c = a * b, n x n row-major; c must not alias a or b.
void multiply(const cplx* a, const cplx* b, cplx* c, std::size_t n);
// y = a * x; y must not alias x.
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);

}  // namespace serial

// OpenMP-parallel when compiled with OpenMP, otherwise the serial path.
void multiply(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);

// out = conjugate transpose of a; out must not alias a.
void adjoint(const cplx* a, cplx* out, std::size_t n);

double max_abs(const cplx* a, std::size_t count);
double max_abs_diff(const cplx* a, const cplx* b, std::size_t count);

}  // namespace offdiag::kernels

#endif

#ifndef OFFDIAG_EIG_HPP
#define OFFDIAG_EIG_HPP

#include <complex>
#include <vector>

namespace offdiag {

// Eigenvalues of an n x n Hermitian matrix (row-major), ascending.
// Cyclic Jacobi with unitary 2x2 rotations; the input is taken by value and
// destroyed. Only the upper triangle and the real diagonal are trusted.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> h,
                                          std::size_t n,
                                          double tol = 1e-14,
                                          int max_sweeps = 64);

}  // namespace offdiag

#endif

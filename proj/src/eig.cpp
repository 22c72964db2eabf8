#include "offdiag/eig.hpp"

#include <algorithm>
#include <cmath>

#include "offdiag/errors.hpp"

namespace offdiag {

namespace {

using cplx = std::complex<double>;

double upper_offdiag_norm(const std::vector<cplx>& h, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += std::norm(h[p * n + q]);
    return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(std::vector<cplx> h, std::size_t n,
                                          double tol, int max_sweeps) {
    if (n == 0) return {};
    if (n == 1) return {h[0].real()};

    double scale = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(h[i]));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (upper_offdiag_norm(h, n) <= tol * scale * static_cast<double>(n)) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx hpq = h[p * n + q];
                const double rho = std::abs(hpq);
                if (rho <= tol * scale * 1e-2) continue;

                // diag(1, e^{-i phi}) turns the (p,q) block into a real
                // symmetric one with off-diagonal rho; then a classical
                // Jacobi rotation annihilates it.
                const cplx phase = hpq / rho;
                const double app = h[p * n + p].real();
                const double aqq = h[q * n + q].real();
                const double tau = (aqq - app) / (2.0 * rho);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;            // s e^{i phi}
                const cplx spc = s * std::conj(phase);  // s e^{-i phi}

                // H <- U^H H with U = [[c, s],[-s e^{-i phi}, c e^{-i phi}]]
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx hp = h[p * n + j];
                    const cplx hq = h[q * n + j];
                    h[p * n + j] = c * hp - sp * hq;
                    h[q * n + j] = s * hp + c * phase * hq;
                }
                // H <- H U
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx hp = h[j * n + p];
                    const cplx hq = h[j * n + q];
                    h[j * n + p] = c * hp - spc * hq;
                    h[j * n + q] = s * hp + c * std::conj(phase) * hq;
                }
                h[p * n + p] = cplx(h[p * n + p].real(), 0.0);
                h[q * n + q] = cplx(h[q * n + q].real(), 0.0);
                h[p * n + q] = cplx(0.0, 0.0);
                h[q * n + p] = cplx(0.0, 0.0);
            }
        }
    }
    if (!converged && upper_offdiag_norm(h, n) > tol * scale * static_cast<double>(n) * 100.0)
        throw ConvergenceError("hermitian_eigenvalues: Jacobi sweeps exhausted",
                               h[0].real());

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = h[i * n + i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace offdiag

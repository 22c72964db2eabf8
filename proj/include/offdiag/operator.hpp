#ifndef OFFDIAG_OPERATOR_HPP
#define OFFDIAG_OPERATOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "offdiag/lattice.hpp"

namespace offdiag {

using cplx = std::complex<double>;

// Dense square matrix over an index window; row-major, indexed consistently
// with the window ordering.
struct OperatorMatrix {
    IndexWindow window;
    std::vector<cplx> entries;

    std::size_t size() const { return window.size(); }
    cplx& at(std::size_t s, std::size_t t) { return entries[s * size() + t]; }
    const cplx& at(std::size_t s, std::size_t t) const { return entries[s * size() + t]; }

    static OperatorMatrix zeros(IndexWindow w);
    static OperatorMatrix identity(IndexWindow w);

    // Throws if any entry is NaN or infinite.
    void validate_finite() const;
};

OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b);

struct OperatorConfig {
    int exact_eig_cutoff = 256;     // below: full spectral decomposition
    int max_power_iterations = 20000;
    long max_neumann_terms = 50000;
    double pivot_floor_rel = 1e-13;
    std::uint64_t power_seed = 0x9e3779b97f4a7c15ull;
};

// l2 -> l2 operator norm (largest singular value). Below the cutoff the
// value comes from a full spectral decomposition of A A* and is cross-checked
// against power iteration; above it, seeded power iteration alone.
double op_norm(const OperatorMatrix& a, double tol = 1e-12,
               const OperatorConfig& cfg = {});

struct ContractionResult {
    double value = 0.0;
    // r >= 1 - tol: the truncation is numerically close to singular.
    bool near_singular = false;
};

// r = || Id - A A* / ||A||^2 ||; r < 1 exactly when A is invertible.
ContractionResult contraction_r(const OperatorMatrix& a, double tol = 1e-12,
                                const OperatorConfig& cfg = {});

struct NeumannInverse {
    OperatorMatrix approx_inverse;
    long terms_used = 0;
    // (r^{N+1} / (1-r)) * ||A*|| / ||A||^2; bounds every entry of the error.
    double tail_bound = 0.0;
    double r = 0.0;
    double op_norm = 0.0;
};

// Inverts A via the contraction series: with At = A A*/||A||^2 and
// R = Id - At, sums S_N = sum_{n<=N} R^n for the minimal N with
// r^{N+1}/(1-r) <= tol and returns A* S_N / ||A||^2.
NeumannInverse neumann_inverse(const OperatorMatrix& a, double tol = 1e-12,
                               const OperatorConfig& cfg = {});

// Dense LU solve of A X = Id with partial pivoting; deterministic.
OperatorMatrix direct_inverse(const OperatorMatrix& a, const OperatorConfig& cfg = {});

struct SpectralInterval {
    double a = 0.0;      // smallest eigenvalue of A A*
    double b = 0.0;      // largest eigenvalue of A A*
    double kappa = 0.0;  // b / a
};

SpectralInterval spectral_interval(const OperatorMatrix& a, double tol = 1e-12,
                                   const OperatorConfig& cfg = {});

}  // namespace offdiag

#endif

#ifndef OFFDIAG_ENVELOPE_HPP
#define OFFDIAG_ENVELOPE_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "offdiag/operator.hpp"
#include "offdiag/phi.hpp"

namespace offdiag {

// Family of off-diagonal decay bounds evaluated at a distance.
struct DecayEnvelope {
    enum class Family {
        banded,            // 1 for distance <= m, else 0
        polynomial,        // (1 + d)^{-k/2}
        sub_exponential,   // e^{-k d^beta}, beta in (0,1)
        exponential,       // c e^{-gamma d}, c >= 1
        super_exponential, // e^{-k d^beta}, beta > 1
        phi_family,        // C_p e^{-p d}, p on the stored grid
    };

    Family family = Family::exponential;
    double m = 0.0;
    double k = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double c = 1.0;
    PhiSpec phi;
    PhiConstants constants;

    static DecayEnvelope banded(double m);
    static DecayEnvelope polynomial(double k);
    static DecayEnvelope sub_exponential(double k, double beta);
    static DecayEnvelope exponential(double gamma, double c = 1.0);
    static DecayEnvelope super_exponential(double k, double beta);
    static DecayEnvelope phi_family(PhiSpec spec, PhiConstants constants);
};

double envelope_value(const DecayEnvelope& env, double dist,
                      std::optional<double> p = std::nullopt);

// Smallest C >= 1 with |A_{s,t}| <= C e^{-gamma d(s,t)} on the window.
// May overflow to +inf for extreme gamma * diameter; see the log variant.
double membership_constant(const OperatorMatrix& a, double gamma);
// ln of the above; always finite for finite matrices.
double log_membership_constant(const OperatorMatrix& a, double gamma);

struct EnvelopeFit {
    double rate = 0.0;          // decay per unit (transformed) distance
    double log_constant = 0.0;  // intercept of the log-linear fit
    double max_residual = 0.0;  // max |ln(bin max) - fitted line|
    std::vector<std::pair<double, double>> bins;  // (distance, max |entry|)
};

// Bins entries by exact distance, takes per-bin max magnitudes, and fits
// ln(max) against distance^abscissa_beta by least squares over bins with
// distance >= min_distance and max above zero_floor_rel * (global max).
EnvelopeFit fit_decay_rate(const OperatorMatrix& a, double min_distance,
                           double abscissa_beta, double zero_floor_rel = 1e-14);

EnvelopeFit fit_exponential_rate(const OperatorMatrix& a, double min_distance,
                                 double zero_floor_rel = 1e-14);

// C_p = membership_constant(A, p) per grid point and the clamped grid max
// k1 = max(1, max_p C_p e^{-p phi(p)}).
PhiConstants phi_constants_of(const OperatorMatrix& a, const PhiSpec& spec,
                              std::span<const double> p_grid);

// Weight data for the sub-exponential class: rho(xi) = xi^beta.
struct SubExpWeight {
    double rho_beta = 0.5;   // in (0,1)
    double s_exponent = 2.0; // > dimension
    int dimension = 1;
};

struct SubExpReport {
    std::vector<double> k_grid;
    std::vector<double> c_k;        // minimal C_k on the window
    std::vector<double> eps_grid;
    std::vector<double> c_tilde;    // max over [0, diam] of (1+xi)^{d+1} e^{-eps rho(xi)}
};

SubExpReport check_subexp_hypotheses(const SubExpWeight& w, const OperatorMatrix& a,
                                     std::span<const double> k_grid,
                                     std::span<const double> eps_grid);

}  // namespace offdiag

#endif

#ifndef OFFDIAG_BOUNDS_HPP
#define OFFDIAG_BOUNDS_HPP

#include <functional>
#include <map>

namespace offdiag {

// A closed-form inverse-decay bound |A^{-1}_{s,t}| <= constant * e^{-rate d}
// together with every intermediate that produced it.
struct BoundReport {
    enum class Kind { demko, jaffard, thm44 };

    Kind kind = Kind::jaffard;
    double rate = 0.0;
    double constant = 0.0;

    // Intermediates; only those relevant to the kind are populated.
    double gamma = 0.0;
    double gamma_prime = 0.0;
    double delta = 0.0;
    double r = 0.0;
    double c_tilde = 0.0;
    double c_gamma = 0.0;
    double k1 = 0.0;
    double a = 0.0;
    double c2 = 0.0;
    double op_norm = 0.0;
    double m = 0.0;
    double kappa = 0.0;
    double demko_c = 0.0;
    double d_factor = 0.0;  // thm44: 1 / (ln(C~ K1^2 m1^2 / r) + 2*4^a)
    std::map<double, double> m_values;  // epsilon -> m_epsilon
};

// Evaluates the bound at a distance; handles the degenerate kappa = 1 case
// where the rate is infinite.
double bound_value(const BoundReport& report, double dist);

// C * q^{d/m} with q = 1 - 2/(sqrt(kappa)+1), kappa = b_spec/a_spec.
double demko_bound(double m, double a_spec, double b_spec, double c, double dist);

using MEpsilonFn = std::function<double(double)>;

// gamma_1 = min{delta, (gamma'-delta) ln(1/r) / ln(C~ C_g^2 r^{-1} m^2)} and
// C = 2 C_g m_{gamma-gamma_1} / ((1-r) ||A||^2), with m = m_{(gamma-gamma')/2}
// supplied by m_of and C~ = 1 + ||A||^{-2}.
BoundReport jaffard_constants(double gamma, double c_gamma, double r,
                              double op_norm, const MEpsilonFn& m_of,
                              double delta, double gamma_prime);

// Grid argmax of gamma_1 over gamma' in gamma*{1..g}/(g+1) and
// delta in gamma'*{1..g}/(g+1); ties prefer smaller constant, then smaller
// delta.
BoundReport optimize_jaffard(double gamma, double c_gamma, double r,
                             double op_norm, const MEpsilonFn& m_of,
                             int grid_size);

// b = ln(1/r) / (ln(C~ K1^2 m1^2 r^{-1}) + 2*4^a) and
// C_A = 2 C2 m1 / ((1-r) ||A||^2).
BoundReport thm44_constants(double k1, double m1, double r, double op_norm,
                            double a, double c2);

}  // namespace offdiag

#endif

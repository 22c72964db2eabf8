#ifndef OFFDIAG_PHI_HPP
#define OFFDIAG_PHI_HPP

#include <string>
#include <vector>

namespace offdiag {

// Admissible rate function phi: [1,inf) -> [1,inf), strictly increasing with
// phi(1) = 1 and phi(xi p) <= xi^{a-1} phi(p) for the stored exponent a > 1.
// Shipped kinds: p^alpha, ln(p + e - 1), and products of those.
struct PhiSpec {
    enum class Kind { power, log, product };

    Kind kind = Kind::power;
    double alpha = 1.0;             // power only
    std::vector<PhiSpec> factors;   // product only
    double a = 2.0;

    static PhiSpec power(double alpha);
    static PhiSpec log_like();
    static PhiSpec product(std::vector<PhiSpec> factors);
};

double phi_eval(const PhiSpec& spec, double p);

// p * phi(p).
double phi1(const PhiSpec& spec, double p);

// Solves phi(p) = y by bracketing bisection (the bracket is grown
// geometrically from [1,2]). Stops when |phi(p) - y| <= tol or the bracket
// has collapsed to machine resolution.
double phi_inverse(const PhiSpec& spec, double y, double tol = 1e-12,
                   int max_doublings = 200, int max_bisections = 400);

struct ConditionBResult {
    bool pass = false;
    double max_ratio = 0.0;
};

// Samples phi(xi p) / (xi^{a-1} phi(p)) on an n x n grid over
// [1, xi_max] x [1, p_max]; passes iff the largest ratio is <= 1 + 1e-12.
ConditionBResult verify_condition_b(const PhiSpec& spec, double xi_max,
                                    double p_max, int n_samples);

// Measured membership constants C_p on a p-grid together with
// k1 = max_p C_p e^{-p phi(p)} (clamped to >= 1). The grid maximum stands in
// for the supremum over p in [1,inf).
struct PhiConstants {
    std::vector<double> grid;
    std::vector<double> cp_values;
    double k1 = 1.0;
};

// "power:2", "log", "product:power:0.5,log"
PhiSpec parse_phi_spec(const std::string& text);
std::string phi_spec_name(const PhiSpec& spec);

}  // namespace offdiag

#endif

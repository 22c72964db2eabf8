#include "offdiag/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace offdiag {

double bound_value(const BoundReport& report, double dist) {
    if (!std::isfinite(report.rate))
        return dist > 0.0 ? 0.0 : report.constant;
    return report.constant * std::exp(-report.rate * dist);
}

double demko_bound(double m, double a_spec, double b_spec, double c, double dist) {
    if (m <= 0.0) throw std::invalid_argument("demko_bound: m must be > 0");
    if (a_spec <= 0.0 || b_spec < a_spec)
        throw std::invalid_argument("demko_bound: need b >= a > 0");
    if (c <= 0.0) throw std::invalid_argument("demko_bound: C must be > 0");
    if (dist < 0.0) throw std::invalid_argument("demko_bound: distance must be >= 0");
    const double kappa = b_spec / a_spec;
    const double q = 1.0 - 2.0 / (std::sqrt(kappa) + 1.0);
    // q in [0,1); pow(0,0) = 1 covers the degenerate kappa = 1 case at d = 0.
    return c * std::pow(q, dist / m);
}

BoundReport jaffard_constants(double gamma, double c_gamma, double r,
                              double op_norm, const MEpsilonFn& m_of,
                              double delta, double gamma_prime) {
    if (!(gamma > 0.0)) throw std::invalid_argument("jaffard: gamma must be > 0");
    if (!(0.0 < delta && delta < gamma_prime && gamma_prime < gamma))
        throw std::invalid_argument("jaffard: need 0 < delta < gamma' < gamma");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("jaffard: r must be in (0,1)");
    if (c_gamma < 1.0) throw std::invalid_argument("jaffard: C_gamma must be >= 1");
    if (op_norm <= 0.0) throw std::invalid_argument("jaffard: op_norm must be > 0");

    BoundReport rep;
    rep.kind = BoundReport::Kind::jaffard;
    rep.gamma = gamma;
    rep.gamma_prime = gamma_prime;
    rep.delta = delta;
    rep.r = r;
    rep.c_gamma = c_gamma;
    rep.op_norm = op_norm;
    rep.c_tilde = 1.0 + 1.0 / (op_norm * op_norm);

    const double m_half = m_of((gamma - gamma_prime) / 2.0);
    rep.m_values[(gamma - gamma_prime) / 2.0] = m_half;
    const double log_arg =
        std::log(rep.c_tilde * c_gamma * c_gamma * m_half * m_half / r);
    rep.rate = std::min(delta, (gamma_prime - delta) * std::log(1.0 / r) / log_arg);

    const double m_tail = m_of(gamma - rep.rate);
    rep.m_values[gamma - rep.rate] = m_tail;
    rep.constant = 2.0 * c_gamma * m_tail / ((1.0 - r) * op_norm * op_norm);
    return rep;
}

BoundReport optimize_jaffard(double gamma, double c_gamma, double r,
                             double op_norm, const MEpsilonFn& m_of,
                             int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("optimize_jaffard: grid_size must be >= 2");
    BoundReport best;
    bool have = false;
    for (int i = 1; i <= grid_size; ++i) {
        const double gamma_prime = gamma * static_cast<double>(i) / (grid_size + 1);
        for (int j = 1; j <= grid_size; ++j) {
            const double delta = gamma_prime * static_cast<double>(j) / (grid_size + 1);
            const BoundReport rep =
                jaffard_constants(gamma, c_gamma, r, op_norm, m_of, delta, gamma_prime);
            const bool better =
                !have || rep.rate > best.rate ||
                (rep.rate == best.rate &&
                 (rep.constant < best.constant ||
                  (rep.constant == best.constant && rep.delta < best.delta)));
            if (better) {
                best = rep;
                have = true;
            }
        }
    }
    return best;
}

BoundReport thm44_constants(double k1, double m1, double r, double op_norm,
                            double a, double c2) {
    if (k1 < 1.0) throw std::invalid_argument("thm44: K1 must be >= 1");
    if (m1 < 1.0) throw std::invalid_argument("thm44: m1 must be >= 1");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("thm44: r must be in (0,1)");
    if (op_norm <= 0.0) throw std::invalid_argument("thm44: op_norm must be > 0");
    if (a <= 1.0) throw std::invalid_argument("thm44: a must be > 1");
    if (c2 < 1.0) throw std::invalid_argument("thm44: C2 must be >= 1");

    BoundReport rep;
    rep.kind = BoundReport::Kind::thm44;
    rep.k1 = k1;
    rep.r = r;
    rep.op_norm = op_norm;
    rep.a = a;
    rep.c2 = c2;
    rep.c_tilde = 1.0 + 1.0 / (op_norm * op_norm);
    rep.m_values[1.0] = m1;

    const double denom =
        std::log(rep.c_tilde * k1 * k1 * m1 * m1 / r) + 2.0 * std::pow(4.0, a);
    rep.d_factor = 1.0 / denom;
    rep.rate = std::log(1.0 / r) / denom;
    rep.constant = 2.0 * c2 * m1 / ((1.0 - r) * op_norm * op_norm);
    if (rep.d_factor * std::log(1.0 / r) > 1.0 + 1e-12)
        throw std::logic_error("thm44: D ln(1/r) exceeded 1");
    return rep;
}

}  // namespace offdiag

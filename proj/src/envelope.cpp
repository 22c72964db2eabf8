#include "offdiag/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "offdiag/errors.hpp"

namespace offdiag {

DecayEnvelope DecayEnvelope::banded(double m) {
    if (m <= 0.0) throw std::invalid_argument("banded envelope: m must be > 0");
    DecayEnvelope e;
    e.family = Family::banded;
    e.m = m;
    return e;
}

DecayEnvelope DecayEnvelope::polynomial(double k) {
    if (k <= 0.0) throw std::invalid_argument("polynomial envelope: k must be > 0");
    DecayEnvelope e;
    e.family = Family::polynomial;
    e.k = k;
    return e;
}

DecayEnvelope DecayEnvelope::sub_exponential(double k, double beta) {
    if (k <= 0.0) throw std::invalid_argument("sub-exponential envelope: k must be > 0");
    if (beta <= 0.0 || beta >= 1.0)
        throw std::invalid_argument("sub-exponential envelope: beta must be in (0,1)");
    DecayEnvelope e;
    e.family = Family::sub_exponential;
    e.k = k;
    e.beta = beta;
    return e;
}

DecayEnvelope DecayEnvelope::exponential(double gamma, double c) {
    if (gamma <= 0.0) throw std::invalid_argument("exponential envelope: gamma must be > 0");
    if (c < 1.0) throw std::invalid_argument("exponential envelope: c must be >= 1");
    DecayEnvelope e;
    e.family = Family::exponential;
    e.gamma = gamma;
    e.c = c;
    return e;
}

DecayEnvelope DecayEnvelope::super_exponential(double k, double beta) {
    if (k <= 0.0) throw std::invalid_argument("super-exponential envelope: k must be > 0");
    if (beta <= 1.0)
        throw std::invalid_argument("super-exponential envelope: beta must be > 1");
    DecayEnvelope e;
    e.family = Family::super_exponential;
    e.k = k;
    e.beta = beta;
    return e;
}

DecayEnvelope DecayEnvelope::phi_family(PhiSpec spec, PhiConstants constants) {
    if (constants.grid.empty())
        throw std::invalid_argument("phi envelope: empty constant grid");
    DecayEnvelope e;
    e.family = Family::phi_family;
    e.phi = std::move(spec);
    e.constants = std::move(constants);
    return e;
}

double envelope_value(const DecayEnvelope& env, double dist, std::optional<double> p) {
    if (dist < 0.0) throw std::invalid_argument("envelope_value: distance must be >= 0");
    switch (env.family) {
        case DecayEnvelope::Family::banded:
            return dist <= env.m ? 1.0 : 0.0;
        case DecayEnvelope::Family::polynomial:
            return std::pow(1.0 + dist, -env.k / 2.0);
        case DecayEnvelope::Family::sub_exponential:
        case DecayEnvelope::Family::super_exponential:
            return std::exp(-env.k * std::pow(dist, env.beta));
        case DecayEnvelope::Family::exponential:
            return env.c * std::exp(-env.gamma * dist);
        case DecayEnvelope::Family::phi_family: {
            if (!p)
                throw std::invalid_argument("envelope_value: phi family needs p");
            for (std::size_t i = 0; i < env.constants.grid.size(); ++i)
                if (std::abs(env.constants.grid[i] - *p) <= 1e-12)
                    return env.constants.cp_values[i] * std::exp(-*p * dist);
            throw std::invalid_argument("envelope_value: p is not on the constant grid");
        }
    }
    throw std::logic_error("envelope_value: unknown family");
}

double log_membership_constant(const OperatorMatrix& a, double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("membership_constant: gamma must be > 0");
    if (a.size() == 0) throw std::invalid_argument("membership_constant: empty matrix");
    const std::size_t n = a.size();
    double best = 0.0;  // ln 1; the constant is clamped to >= 1
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const double v = std::abs(a.at(s, t));
            if (v == 0.0) continue;
            best = std::max(best, std::log(v) + gamma * distance(a.window, s, t));
        }
    return best;
}

double membership_constant(const OperatorMatrix& a, double gamma) {
    return std::exp(log_membership_constant(a, gamma));
}

EnvelopeFit fit_decay_rate(const OperatorMatrix& a, double min_distance,
                           double abscissa_beta, double zero_floor_rel) {
    const std::size_t n = a.size();
    if (n == 0) throw DegenerateInputError("fit: empty matrix");

    double global_max = 0.0;
    std::map<double, double> bin_max;  // exact distance -> max |entry|
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const double v = std::abs(a.at(s, t));
            const double d = distance(a.window, s, t);
            auto [it, inserted] = bin_max.try_emplace(d, v);
            if (!inserted) it->second = std::max(it->second, v);
            global_max = std::max(global_max, v);
        }
    if (global_max == 0.0) throw DegenerateInputError("fit: all entries are zero");

    const double floor = zero_floor_rel * global_max;
    EnvelopeFit fit;
    std::vector<double> xs, ys;
    for (const auto& [d, v] : bin_max) {
        if (d < min_distance || v <= floor) continue;
        fit.bins.emplace_back(d, v);
        xs.push_back(std::pow(d, abscissa_beta));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 2) throw FitError("fit: fewer than two usable distance bins");

    const double nn = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = nn * sxx - sx * sx;
    if (denom <= 0.0) throw FitError("fit: degenerate abscissa spread");
    const double slope = (nn * sxy - sx * sy) / denom;
    fit.log_constant = (sy - slope * sx) / nn;
    fit.rate = -slope;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual = std::max(
            fit.max_residual, std::abs(ys[i] - (fit.log_constant + slope * xs[i])));
    return fit;
}

EnvelopeFit fit_exponential_rate(const OperatorMatrix& a, double min_distance,
                                 double zero_floor_rel) {
    return fit_decay_rate(a, min_distance, 1.0, zero_floor_rel);
}

PhiConstants phi_constants_of(const OperatorMatrix& a, const PhiSpec& spec,
                              std::span<const double> p_grid) {
    if (p_grid.empty()) throw std::invalid_argument("phi_constants_of: empty grid");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (p_grid[i] < 1.0)
            throw std::invalid_argument("phi_constants_of: grid values must be >= 1");
        if (i > 0 && p_grid[i] <= p_grid[i - 1])
            throw std::invalid_argument("phi_constants_of: grid must be ascending");
    }
    PhiConstants pc;
    pc.grid.assign(p_grid.begin(), p_grid.end());
    double log_k1 = 0.0;  // K1 >= 1
    for (const double p : p_grid) {
        const double log_cp = log_membership_constant(a, p);
        pc.cp_values.push_back(std::exp(log_cp));
        log_k1 = std::max(log_k1, log_cp - p * phi_eval(spec, p));
    }
    pc.k1 = std::exp(log_k1);
    return pc;
}

SubExpReport check_subexp_hypotheses(const SubExpWeight& w, const OperatorMatrix& a,
                                     std::span<const double> k_grid,
                                     std::span<const double> eps_grid) {
    if (w.rho_beta <= 0.0 || w.rho_beta >= 1.0)
        throw std::invalid_argument("check_subexp_hypotheses: rho beta must be in (0,1)");
    if (w.dimension != a.window.lattice.dimension)
        throw std::invalid_argument("check_subexp_hypotheses: dimension mismatch");
    if (w.s_exponent <= w.dimension)
        throw std::invalid_argument("check_subexp_hypotheses: s must exceed the dimension");

    SubExpReport rep;
    const std::size_t n = a.size();
    for (const double k : k_grid) {
        if (k <= 0.0) throw std::invalid_argument("check_subexp_hypotheses: k must be > 0");
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t) {
                const double v = std::abs(a.at(s, t));
                if (v == 0.0) continue;
                const double d = distance(a.window, s, t);
                best = std::max(best, std::log(v) + k * std::pow(d, w.rho_beta));
            }
        rep.k_grid.push_back(k);
        rep.c_k.push_back(std::exp(best));
    }

    const double diam = window_diameter(a.window);
    const int d1 = w.dimension + 1;
    for (const double eps : eps_grid) {
        auto g = [&](double xi) {
            return d1 * std::log1p(xi) - eps * std::pow(xi, w.rho_beta);
        };
        // Coarse scan plus golden-section refinement around the best point.
        const int steps = 4096;
        double best_x = 0.0, best_v = g(0.0);
        for (int i = 1; i <= steps; ++i) {
            const double xi = diam * static_cast<double>(i) / steps;
            const double v = g(xi);
            if (v > best_v) {
                best_v = v;
                best_x = xi;
            }
        }
        double lo = std::max(0.0, best_x - diam / steps);
        double hi = std::min(diam, best_x + diam / steps);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
            const double x1 = hi - gr * (hi - lo);
            const double x2 = lo + gr * (hi - lo);
            if (g(x1) < g(x2))
                lo = x1;
            else
                hi = x2;
        }
        best_v = std::max(best_v, g(0.5 * (lo + hi)));
        rep.eps_grid.push_back(eps);
        rep.c_tilde.push_back(std::exp(best_v));
    }
    return rep;
}

}  // namespace offdiag

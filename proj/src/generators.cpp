#include "offdiag/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "offdiag/envelope.hpp"
#include "offdiag/errors.hpp"

namespace offdiag {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// sigma in [-1,1], keyed by the ordered pair of integer coordinates so the
// draw is independent of the window radius.
double signed_uniform(std::uint64_t seed, std::span<const std::int64_t> zs,
                      std::span<const std::int64_t> zt) {
    std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ull);
    for (const auto v : zs) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    h = splitmix64(h ^ 0x13198a2e03707344ull);
    for (const auto v : zt) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

// Fixed grid backing the phi-family generation envelope
// w(d) = min_p e^{p phi(p)} e^{-p d}.
std::vector<double> phi_generation_grid() {
    std::vector<double> g;
    for (double p = 1.0; p <= 16.0 + 1e-9; p *= 1.25) g.push_back(p);
    return g;
}

double phi_envelope_weight(const PhiSpec& phi, double dist,
                           std::span<const double> grid) {
    double best = std::numeric_limits<double>::infinity();
    for (const double p : grid)
        best = std::min(best, std::exp(p * phi_eval(phi, p) - p * dist));
    return best;
}

}  // namespace

std::string generator_kind_name(GeneratorSpec::Kind kind) {
    switch (kind) {
        case GeneratorSpec::Kind::shift_example: return "shift_example";
        case GeneratorSpec::Kind::random_exponential: return "random_exponential";
        case GeneratorSpec::Kind::random_banded: return "random_banded";
        case GeneratorSpec::Kind::random_subexp: return "random_subexp";
        case GeneratorSpec::Kind::random_phi: return "random_phi";
        case GeneratorSpec::Kind::laplacian: return "laplacian";
    }
    return "?";
}

ShiftExample gen_shift_example(double k, const IndexWindow& window, double beta) {
    if (window.lattice.dimension != 1)
        throw std::invalid_argument("gen_shift_example: window must be one-dimensional");
    if (k <= 0.0) throw std::invalid_argument("gen_shift_example: k must be > 0");
    if (beta < 1.0) throw std::invalid_argument("gen_shift_example: beta must be >= 1");

    const std::size_t n = window.size();
    ShiftExample out;
    out.matrix = OperatorMatrix::identity(window);

    // Window points are in ascending z order, so "t = s + j" is index s + j.
    if (beta == 1.0) {
        const double off = std::exp(-1.0 / k);
        for (std::size_t s = 0; s + 1 < n; ++s) out.matrix.at(s, s + 1) = -off;

        out.inverse_oracle = OperatorMatrix::zeros(window);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = s; t < n; ++t)
                out.inverse_oracle.at(s, t) =
                    std::exp(-static_cast<double>(t - s) / k);
        return out;
    }

    std::vector<double> gamma_off(n, 0.0);  // Gamma entry at offset j
    for (std::size_t j = 1; j < n; ++j)
        gamma_off[j] = std::exp(-std::pow(static_cast<double>(j), beta) / k);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            out.matrix.at(s, t) = -gamma_off[t - s];

    // Gamma is strictly upper triangular and Toeplitz, so powers (and the
    // inverse) depend on the offset only: b_0 = 1,
    // b_j = sum_{i=1..j} gamma_off[i] * b_{j-i}.
    std::vector<double> b(n, 0.0);
    b[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i) acc += gamma_off[i] * b[j - i];
        b[j] = acc;
    }
    out.inverse_oracle = OperatorMatrix::zeros(window);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s; t < n; ++t) out.inverse_oracle.at(s, t) = b[t - s];
    return out;
}

OperatorMatrix gen_random_decay(const GeneratorSpec& spec) {
    if (spec.dominance <= 1.0)
        throw std::invalid_argument("gen_random_decay: dominance must be > 1");

    DecayEnvelope env;
    std::vector<double> phi_grid;
    switch (spec.kind) {
        case GeneratorSpec::Kind::random_exponential:
            env = DecayEnvelope::exponential(spec.gamma, 1.0);
            break;
        case GeneratorSpec::Kind::random_banded:
            env = DecayEnvelope::banded(spec.m);
            break;
        case GeneratorSpec::Kind::random_subexp:
            env = DecayEnvelope::sub_exponential(spec.k, spec.beta);
            break;
        case GeneratorSpec::Kind::random_phi:
            phi_grid = phi_generation_grid();
            break;
        default:
            throw std::invalid_argument("gen_random_decay: not a random kind");
    }

    auto weight = [&](double dist) {
        if (spec.kind == GeneratorSpec::Kind::random_phi)
            return phi_envelope_weight(spec.phi, dist, phi_grid);
        return envelope_value(env, dist);
    };

    const IndexWindow& w = spec.window;
    const std::size_t n = w.size();
    OperatorMatrix a = OperatorMatrix::zeros(w);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            const double wv = weight(distance(w, s, t));
            if (wv == 0.0) continue;
            a.at(s, t) = signed_uniform(spec.seed, w.coord(s), w.coord(t)) * wv;
        }

    // Radius-independent Schur row-sum bound: sum_{z != 0} weight(|G z|),
    // except for the banded family where the sum is a finite lattice count.
    double row_bound = 0.0;
    switch (spec.kind) {
        case GeneratorSpec::Kind::random_exponential:
            row_bound = m_epsilon(w.lattice, spec.gamma, 1e-9) - 1.0;
            break;
        default:
            row_bound = lattice_weight_sum(w.lattice, weight, 1e-14);
            break;
    }
    const double lambda = spec.dominance * std::max(row_bound, weight(0.0));
    for (std::size_t i = 0; i < n; ++i) a.at(i, i) = lambda;
    return a;
}

OperatorMatrix gen_laplacian_spd(double delta, const IndexWindow& window) {
    if (delta <= 0.0) throw std::invalid_argument("gen_laplacian_spd: delta must be > 0");
    const int d = window.lattice.dimension;
    const std::size_t n = window.size();
    OperatorMatrix a = OperatorMatrix::zeros(window);
    for (std::size_t s = 0; s < n; ++s) {
        a.at(s, s) = 2.0 * d + delta;
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            std::int64_t l1 = 0;
            for (int i = 0; i < d; ++i)
                l1 += std::abs(window.coord(s)[static_cast<std::size_t>(i)] -
                               window.coord(t)[static_cast<std::size_t>(i)]);
            if (l1 == 1) a.at(s, t) = -1.0;
        }
    }
    return a;
}

OperatorMatrix generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::shift_example:
            return gen_shift_example(spec.k, spec.window, spec.beta).matrix;
        case GeneratorSpec::Kind::laplacian:
            return gen_laplacian_spd(spec.delta, spec.window);
        default:
            return gen_random_decay(spec);
    }
}

}  // namespace offdiag

#include <doctest.h>

#include <cmath>
#include <vector>

#include "offdiag/envelope.hpp"
#include "offdiag/errors.hpp"

using namespace offdiag;

namespace {

IndexWindow z1_window(int radius) { return make_window(Lattice::integers(1), radius); }

// Matrix with |A_{s,t}| = profile(d(s,t)).
template <typename F>
OperatorMatrix profile_matrix(int radius, F&& profile) {
    OperatorMatrix a = OperatorMatrix::zeros(z1_window(radius));
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) a.at(s, t) = profile(distance(a.window, s, t));
    return a;
}

OperatorMatrix shift_matrix(double k, int radius) {
    OperatorMatrix a = OperatorMatrix::identity(z1_window(radius));
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) a.at(i, i + 1) = -std::exp(-1.0 / k);
    return a;
}

}  // namespace

TEST_CASE("envelope_value across families") {
    CHECK(envelope_value(DecayEnvelope::exponential(1.0, 1.0), 0.0) == doctest::Approx(1.0));
    CHECK(envelope_value(DecayEnvelope::banded(2.0), 3.0) == 0.0);
    CHECK(envelope_value(DecayEnvelope::banded(2.0), 2.0) == 1.0);
    CHECK(envelope_value(DecayEnvelope::polynomial(4.0), 3.0) ==
          doctest::Approx(std::pow(4.0, -2.0)));
    CHECK(envelope_value(DecayEnvelope::sub_exponential(2.0, 0.5), 4.0) ==
          doctest::Approx(std::exp(-4.0)));
    CHECK(envelope_value(DecayEnvelope::super_exponential(1.0, 2.0), 3.0) ==
          doctest::Approx(std::exp(-9.0)));

    // C_p = e^{p phi(p)} with phi(p) = p: at p = 2, distance 5 the value is
    // e^4 e^{-10} = e^{-6}.
    PhiConstants pc;
    pc.grid = {1.0, 2.0};
    pc.cp_values = {std::exp(1.0), std::exp(4.0)};
    pc.k1 = 1.0;
    const DecayEnvelope phi_env = DecayEnvelope::phi_family(PhiSpec::power(1.0), pc);
    CHECK(envelope_value(phi_env, 5.0, 2.0) == doctest::Approx(std::exp(-6.0)));
    CHECK_THROWS_AS(envelope_value(phi_env, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(envelope_value(phi_env, 5.0, 2.5), std::invalid_argument);
}

TEST_CASE("envelope parameter validation") {
    CHECK_THROWS_AS(DecayEnvelope::exponential(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DecayEnvelope::sub_exponential(1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(DecayEnvelope::super_exponential(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(DecayEnvelope::banded(0.0), std::invalid_argument);
}

TEST_CASE("membership_constant examples") {
    const OperatorMatrix eye = OperatorMatrix::identity(z1_window(3));
    CHECK(membership_constant(eye, 1.0) == doctest::Approx(1.0));

    // Shifted identity, k = 1: the only off-diagonal value e^{-1} sits at
    // distance 1, so the gamma = 1 constant stays at the clamp.
    CHECK(membership_constant(shift_matrix(1.0, 8), 1.0) == doctest::Approx(1.0));

    OperatorMatrix single = OperatorMatrix::zeros(z1_window(3));
    const std::size_t n = single.size();
    for (std::size_t i = 0; i < n; ++i) single.at(i, i) = 1.0;
    single.at(0, 3) = 2.0 * std::exp(-3.0);  // distance 3
    CHECK(membership_constant(single, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("membership_constant is monotone in gamma") {
    const OperatorMatrix a = shift_matrix(2.0, 6);
    double prev = membership_constant(a, 0.25);
    for (const double g : {0.5, 1.0, 2.0, 4.0}) {
        const double cur = membership_constant(a, g);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}

TEST_CASE("fit_exponential_rate recovers an exact rate") {
    const OperatorMatrix a =
        profile_matrix(16, [](double d) { return std::exp(-2.0 * d); });
    const EnvelopeFit fit = fit_exponential_rate(a, 0.0);
    CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.max_residual <= 1e-9);
    CHECK(fit.log_constant == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("fit_exponential_rate on the shifted-identity inverse gives 1/k") {
    for (const double k : {1.0, 2.0, 3.0, 4.0}) {
        const OperatorMatrix inv = direct_inverse(shift_matrix(k, 24));
        const EnvelopeFit fit = fit_exponential_rate(inv, 1.0);
        CHECK(std::abs(fit.rate - 1.0 / k) <= 1e-6);
    }
}

TEST_CASE("fit errors") {
    CHECK_THROWS_AS(fit_exponential_rate(OperatorMatrix::identity(z1_window(4)), 0.0),
                    FitError);
    CHECK_THROWS_AS(fit_exponential_rate(OperatorMatrix::zeros(z1_window(4)), 0.0),
                    DegenerateInputError);
}

TEST_CASE("super-exponential data prefers the matching abscissa") {
    const OperatorMatrix a =
        profile_matrix(12, [](double d) { return std::exp(-0.5 * d * d); });
    const EnvelopeFit quad = fit_decay_rate(a, 0.0, 2.0);
    CHECK(quad.rate == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(quad.max_residual <= 1e-9);
    const EnvelopeFit lin = fit_decay_rate(a, 0.0, 1.0);
    CHECK(lin.max_residual >= 10.0 * (quad.max_residual + 1e-12));
}

TEST_CASE("phi_constants_of on the identity clamps k1 at 1") {
    const std::vector<double> grid{1.0, 2.0, 3.0};
    const PhiConstants pc =
        phi_constants_of(OperatorMatrix::identity(z1_window(4)), PhiSpec::power(1.0), grid);
    for (const double c : pc.cp_values) CHECK(c == doctest::Approx(1.0));
    CHECK(pc.k1 == doctest::Approx(1.0));
}

TEST_CASE("phi_constants_of on a Gaussian profile matches brute force") {
    const OperatorMatrix a =
        profile_matrix(8, [](double d) { return std::exp(-d * d); });
    const std::vector<double> grid{1.0, 2.0, 3.0};
    const PhiConstants pc = phi_constants_of(a, PhiSpec::power(1.0), grid);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double brute = 1.0;
        for (int m = 0; m <= 16; ++m)
            brute = std::max(brute, std::exp(grid[gi] * m - static_cast<double>(m) * m));
        CHECK(pc.cp_values[gi] == doctest::Approx(brute).epsilon(1e-12));
    }
    // C_2 = e at offset 1.
    CHECK(pc.cp_values[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("phi_constants_of on the shifted identity") {
    const OperatorMatrix a = shift_matrix(1.0, 8);
    const std::vector<double> grid{1.0, 2.0};
    const PhiConstants pc = phi_constants_of(a, PhiSpec::power(1.0), grid);
    CHECK(pc.cp_values[0] == doctest::Approx(1.0));
    CHECK(pc.cp_values[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(pc.k1 == doctest::Approx(1.0));
    CHECK_THROWS_AS(phi_constants_of(a, PhiSpec::power(1.0), std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        phi_constants_of(a, PhiSpec::power(1.0), std::vector<double>{2.0, 1.0}),
        std::invalid_argument);
}

TEST_CASE("check_subexp_hypotheses: identity and exact-envelope matrices") {
    SubExpWeight w;
    w.rho_beta = 0.5;
    w.dimension = 1;
    w.s_exponent = 2.0;

    const std::vector<double> kg{1.0};
    const std::vector<double> eg{1.0};
    const SubExpReport id_rep =
        check_subexp_hypotheses(w, OperatorMatrix::identity(z1_window(4)), kg, eg);
    CHECK(id_rep.c_k[0] == doctest::Approx(1.0));

    // Entries equal to the k = 2 envelope with beta = 0.99 exactly.
    SubExpWeight w99;
    w99.rho_beta = 0.99;
    w99.dimension = 1;
    w99.s_exponent = 2.0;
    const OperatorMatrix a = profile_matrix(
        10, [](double d) { return std::exp(-2.0 * std::pow(d, 0.99)); });
    const SubExpReport rep =
        check_subexp_hypotheses(w99, a, std::vector<double>{1.0, 2.0}, eg);
    CHECK(rep.c_k[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.c_k[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check_subexp_hypotheses: scan matches the analytic maximum") {
    // max over xi of (1+xi)^2 e^{-sqrt(xi)} sits at xi = (2+sqrt(3))^2.
    SubExpWeight w;
    w.rho_beta = 0.5;
    w.dimension = 1;
    w.s_exponent = 2.0;
    const SubExpReport rep = check_subexp_hypotheses(
        w, OperatorMatrix::identity(z1_window(32)), std::vector<double>{1.0},
        std::vector<double>{1.0});
    const double xi_star = (2.0 + std::sqrt(3.0)) * (2.0 + std::sqrt(3.0));
    const double expected = (1.0 + xi_star) * (1.0 + xi_star) * std::exp(-std::sqrt(xi_star));
    CHECK(rep.c_tilde[0] == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("check_subexp_hypotheses: domain errors") {
    SubExpWeight bad;
    bad.rho_beta = 1.5;
    bad.dimension = 1;
    bad.s_exponent = 2.0;
    CHECK_THROWS_AS(check_subexp_hypotheses(bad, OperatorMatrix::identity(z1_window(2)),
                                            std::vector<double>{1.0},
                                            std::vector<double>{1.0}),
                    std::invalid_argument);
}

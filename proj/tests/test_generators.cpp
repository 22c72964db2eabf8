#include <doctest.h>

#include <cmath>

#include "offdiag/envelope.hpp"
#include "offdiag/errors.hpp"
#include "offdiag/generators.hpp"
#include "offdiag/kernels.hpp"

using namespace offdiag;

namespace {

IndexWindow z1_window(int radius) { return make_window(Lattice::integers(1), radius); }

GeneratorSpec base_spec(GeneratorSpec::Kind kind, int radius, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = kind;
    s.window = z1_window(radius);
    s.seed = seed;
    s.dominance = 2.0;
    return s;
}

}  // namespace

TEST_CASE("shift example at radius 1 reproduces the displayed 3x3 matrices") {
    const ShiftExample ex = gen_shift_example(1.0, z1_window(1));
    const double e1 = std::exp(-1.0);

    CHECK(ex.matrix.at(0, 0) == cplx(1, 0));
    CHECK(ex.matrix.at(0, 1) == cplx(-e1, 0));
    CHECK(ex.matrix.at(0, 2) == cplx(0, 0));
    CHECK(ex.matrix.at(1, 2) == cplx(-e1, 0));
    CHECK(ex.matrix.at(2, 2) == cplx(1, 0));
    CHECK(ex.matrix.at(1, 0) == cplx(0, 0));

    CHECK(ex.inverse_oracle.at(0, 0) == cplx(1, 0));
    CHECK(std::abs(ex.inverse_oracle.at(0, 1) - e1) <= 1e-16);
    CHECK(std::abs(ex.inverse_oracle.at(0, 2) - std::exp(-2.0)) <= 1e-16);
    CHECK(ex.inverse_oracle.at(1, 0) == cplx(0, 0));
    CHECK(ex.inverse_oracle.at(2, 0) == cplx(0, 0));
}

TEST_CASE("shift example parameters") {
    const ShiftExample ex = gen_shift_example(2.0, z1_window(4));
    CHECK(std::abs(ex.matrix.at(0, 1) + std::exp(-0.5)) <= 1e-16);
    for (std::size_t s = 0; s < ex.inverse_oracle.size(); ++s)
        CHECK(ex.inverse_oracle.at(s, s) == cplx(1, 0));

    CHECK_THROWS_AS(gen_shift_example(1.0, make_window(Lattice::integers(2), 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gen_shift_example(0.0, z1_window(2)), std::invalid_argument);
    CHECK_THROWS_AS(gen_shift_example(1.0, z1_window(2), 0.5), std::invalid_argument);
}

TEST_CASE("shift example beta > 1: oracle inverts the matrix exactly") {
    const ShiftExample ex = gen_shift_example(1.0, z1_window(12), 2.0);
    // Forward entries carry the quadratic-exponent profile.
    CHECK(std::abs(ex.matrix.at(0, 1) + std::exp(-1.0)) <= 1e-16);
    CHECK(std::abs(ex.matrix.at(0, 2) + std::exp(-4.0)) <= 1e-16);
    CHECK(std::abs(ex.matrix.at(0, 3) + std::exp(-9.0)) <= 1e-16);

    const OperatorMatrix prod = multiply(ex.matrix, ex.inverse_oracle);
    const OperatorMatrix eye = OperatorMatrix::identity(ex.matrix.window);
    CHECK(kernels::max_abs_diff(prod.entries.data(), eye.entries.data(),
                                eye.entries.size()) <= 1e-14);

    // The forward matrix fits the quadratic-abscissa model exactly.
    const EnvelopeFit fit = fit_decay_rate(ex.matrix, 1.0, 2.0);
    CHECK(fit.rate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.max_residual <= 1e-9);
}

TEST_CASE("random generators are deterministic per seed") {
    for (const auto kind :
         {GeneratorSpec::Kind::random_exponential, GeneratorSpec::Kind::random_banded,
          GeneratorSpec::Kind::random_subexp, GeneratorSpec::Kind::random_phi}) {
        GeneratorSpec spec = base_spec(kind, 6, 42);
        if (kind == GeneratorSpec::Kind::random_subexp) spec.beta = 0.5;
        const OperatorMatrix a = gen_random_decay(spec);
        const OperatorMatrix b = gen_random_decay(spec);
        CHECK(kernels::max_abs_diff(a.entries.data(), b.entries.data(),
                                    a.entries.size()) == 0.0);

        GeneratorSpec other = spec;
        other.seed = 43;
        const OperatorMatrix c = gen_random_decay(other);
        CHECK(kernels::max_abs_diff(a.entries.data(), c.entries.data(),
                                    a.entries.size()) > 0.0);
    }
}

TEST_CASE("banded generator vanishes beyond the band") {
    GeneratorSpec spec = base_spec(GeneratorSpec::Kind::random_banded, 10, 7);
    spec.m = 2.0;
    const OperatorMatrix a = gen_random_decay(spec);
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
            if (distance(a.window, s, t) > 2.0) CHECK(a.at(s, t) == cplx(0, 0));
}

TEST_CASE("generated matrices have contraction below one") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        for (const auto kind :
             {GeneratorSpec::Kind::random_exponential, GeneratorSpec::Kind::random_banded,
              GeneratorSpec::Kind::random_subexp, GeneratorSpec::Kind::random_phi}) {
            GeneratorSpec spec = base_spec(kind, 8, seed);
            if (kind == GeneratorSpec::Kind::random_subexp) spec.beta = 0.5;
            const ContractionResult cr = contraction_r(gen_random_decay(spec));
            CHECK(cr.value < 1.0);
            CHECK_FALSE(cr.near_singular);
        }
    }
    CHECK_THROWS_AS(
        gen_random_decay(base_spec(GeneratorSpec::Kind::shift_example, 4, 0)),
        std::invalid_argument);
    GeneratorSpec weak = base_spec(GeneratorSpec::Kind::random_exponential, 4, 0);
    weak.dominance = 1.0;
    CHECK_THROWS_AS(gen_random_decay(weak), std::invalid_argument);
}

TEST_CASE("draws are keyed by integer coordinates, not window indices") {
    GeneratorSpec small = base_spec(GeneratorSpec::Kind::random_exponential, 4, 11);
    GeneratorSpec big = base_spec(GeneratorSpec::Kind::random_exponential, 8, 11);
    const OperatorMatrix a = gen_random_decay(small);
    const OperatorMatrix b = gen_random_decay(big);
    // Common point (z = -1) sits at index 3 in the small window, 7 in the big.
    for (std::int64_t zs = -4; zs <= 4; ++zs)
        for (std::int64_t zt = -4; zt <= 4; ++zt) {
            const std::size_t is = static_cast<std::size_t>(zs + 4);
            const std::size_t it = static_cast<std::size_t>(zt + 4);
            const std::size_t js = static_cast<std::size_t>(zs + 8);
            const std::size_t jt = static_cast<std::size_t>(zt + 8);
            if (is == it) continue;
            CHECK(a.at(is, it) == b.at(js, jt));
        }
}

TEST_CASE("laplacian generator: tridiagonal SPD with unit bandwidth") {
    const OperatorMatrix a = gen_laplacian_spd(1.0, z1_window(8));
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s) {
        CHECK(a.at(s, s) == cplx(3.0, 0));
        for (std::size_t t = 0; t < n; ++t) {
            const double d = distance(a.window, s, t);
            if (d == 1.0) CHECK(a.at(s, t) == cplx(-1.0, 0));
            if (d > 1.0) CHECK(a.at(s, t) == cplx(0, 0));
        }
    }
    CHECK(contraction_r(a).value < 1.0);
    CHECK_THROWS_AS(gen_laplacian_spd(0.0, z1_window(2)), std::invalid_argument);
}

TEST_CASE("generate dispatches on kind") {
    GeneratorSpec spec = base_spec(GeneratorSpec::Kind::shift_example, 3, 0);
    spec.k = 1.0;
    const OperatorMatrix a = generate(spec);
    CHECK(std::abs(a.at(0, 1) + std::exp(-1.0)) <= 1e-16);

    GeneratorSpec lap = base_spec(GeneratorSpec::Kind::laplacian, 3, 0);
    lap.delta = 0.5;
    CHECK(generate(lap).at(0, 0) == cplx(2.5, 0));
}

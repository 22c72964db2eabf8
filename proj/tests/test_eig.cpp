#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "offdiag/eig.hpp"

using offdiag::hermitian_eigenvalues;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> seeded_hermitian(std::size_t n, std::uint64_t seed) {
    std::uint64_t state = seed;
    auto next = [&state] {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
    };
    std::vector<cplx> h(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        h[i * n + i] = next();
        for (std::size_t j = i + 1; j < n; ++j) {
            h[i * n + j] = cplx(next(), next());
            h[j * n + i] = std::conj(h[i * n + j]);
        }
    }
    return h;
}

}  // namespace

TEST_CASE("diagonal and identity eigenvalues") {
    std::vector<cplx> d{cplx(3, 0), cplx(0, 0), cplx(0, 0),
                        cplx(0, 0), cplx(-1, 0), cplx(0, 0),
                        cplx(0, 0), cplx(0, 0), cplx(2, 0)};
    auto ev = hermitian_eigenvalues(d, 3);
    CHECK(ev[0] == doctest::Approx(-1).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(2).epsilon(1e-14));
    CHECK(ev[2] == doctest::Approx(3).epsilon(1e-14));

    std::vector<cplx> eye(16, cplx(0, 0));
    for (int i = 0; i < 4; ++i) eye[i * 4 + i] = 1.0;
    for (double v : hermitian_eigenvalues(eye, 4))
        CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("2x2 complex Hermitian matches the quadratic formula") {
    // [[2, 1-i],[1+i, 3]]: eigenvalues (5 +- sqrt(9))/2 = {1, 4}
    std::vector<cplx> h{cplx(2, 0), cplx(1, -1), cplx(1, 1), cplx(3, 0)};
    auto ev = hermitian_eigenvalues(h, 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("trace, Frobenius norm and determinant invariants on seeded matrices") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const std::size_t n = 8;
        auto h = seeded_hermitian(n, seed);

        double tr = 0.0, frob2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += h[i * n + i].real();
        for (const auto& e : h) frob2 += std::norm(e);

        auto ev = hermitian_eigenvalues(h, n);
        double evs = 0.0, ev2 = 0.0;
        for (double v : ev) {
            evs += v;
            ev2 += v * v;
        }
        CHECK(evs == doctest::Approx(tr).epsilon(1e-11));
        CHECK(ev2 == doctest::Approx(frob2).epsilon(1e-11));
    }
}

TEST_CASE("rank-one projector spectrum") {
    // v v^H with v = (1, i)/sqrt(2): eigenvalues {0, 1}
    std::vector<cplx> h{cplx(0.5, 0), cplx(0, -0.5), cplx(0, 0.5), cplx(0.5, 0)};
    auto ev = hermitian_eigenvalues(h, 2);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero and trivial sizes") {
    CHECK(hermitian_eigenvalues({}, 0).empty());
    CHECK(hermitian_eigenvalues({cplx(7, 0)}, 1)[0] == doctest::Approx(7.0));
    std::vector<cplx> z(9, cplx(0, 0));
    for (double v : hermitian_eigenvalues(z, 3)) CHECK(v == 0.0);
}

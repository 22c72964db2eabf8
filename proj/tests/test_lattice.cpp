#include <doctest.h>

#include <cmath>
#include <vector>

#include "offdiag/errors.hpp"
#include "offdiag/lattice.hpp"

using namespace offdiag;

namespace {

// Closed form on Z^1: 1 + 2 e^{-eps}/(1 - e^{-eps}).
double m_eps_z1(double eps) {
    const double x = std::exp(-eps);
    return (1.0 + x) / (1.0 - x);
}

}  // namespace

TEST_CASE("window enumeration on Z^1") {
    const Lattice z1 = Lattice::integers(1);

    const IndexWindow w0 = make_window(z1, 0);
    CHECK(w0.size() == 1);
    CHECK(w0.point(0)[0] == 0.0);

    const IndexWindow w2 = make_window(z1, 2);
    CHECK(w2.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(w2.point(static_cast<std::size_t>(i))[0] == i - 2.0);
}

TEST_CASE("window enumeration on Z^2 is lexicographic with (2r+1)^d points") {
    const IndexWindow w = make_window(Lattice::integers(2), 1);
    REQUIRE(w.size() == 9);
    CHECK(w.coord(0)[0] == -1);
    CHECK(w.coord(0)[1] == -1);
    CHECK(w.coord(1)[0] == -1);
    CHECK(w.coord(1)[1] == 0);
    CHECK(w.coord(8)[0] == 1);
    CHECK(w.coord(8)[1] == 1);
    // pairwise distinct points
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j) CHECK(distance(w, i, j) > 0.0);
}

TEST_CASE("window capacity guard") {
    CHECK_THROWS_AS(make_window(Lattice::integers(3), 200, 1000), CapacityError);
    CHECK_THROWS_AS(make_window(Lattice::integers(1), -1), std::invalid_argument);
}

TEST_CASE("lattice validation") {
    CHECK_THROWS_AS(Lattice::with_generator(2, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Lattice::with_generator(2, {1, 2, 2, 4}), std::invalid_argument);
    const Lattice skew = Lattice::with_generator(2, {2, 1, 0, 1});
    CHECK(skew.det_magnitude() == doctest::Approx(2.0));
}

TEST_CASE("distances") {
    const IndexWindow w = make_window(Lattice::integers(1), 8);
    // points are -8..8, so 3 and 7 sit at indices 11 and 15
    CHECK(distance(w, 11, 15) == doctest::Approx(4.0));
    CHECK(distance(w, 11, 11) == 0.0);

    const IndexWindow w2 = make_window(Lattice::integers(2), 4);
    // (0,0) is the center index; (3,4) is offset (3,4)
    const std::size_t c = w2.size() / 2;
    std::size_t p34 = 0;
    for (std::size_t i = 0; i < w2.size(); ++i)
        if (w2.coord(i)[0] == 3 && w2.coord(i)[1] == 4) p34 = i;
    CHECK(distance(w2, c, p34) == doctest::Approx(5.0));
}

TEST_CASE("triangle inequality on sampled window triples") {
    const IndexWindow w = make_window(Lattice::with_generator(2, {1.5, 0.25, -0.5, 2.0}), 3);
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; i += 5)
        for (std::size_t j = 1; j < n; j += 7)
            for (std::size_t k = 2; k < n; k += 11)
                CHECK(distance(w, i, k) <= distance(w, i, j) + distance(w, j, k) + 1e-12);
}

TEST_CASE("m_epsilon matches the Z^1 closed form") {
    const Lattice z1 = Lattice::integers(1);
    for (const double eps : {0.1, 0.5, std::log(2.0), 1.0, 2.0, 5.0})
        CHECK(std::abs(m_epsilon(z1, eps, 1e-12) - m_eps_z1(eps)) <= 1e-12);
    CHECK(std::abs(m_epsilon(z1, std::log(2.0), 1e-10) - 3.0) <= 1e-10);
}

TEST_CASE("m_epsilon tends to 1 for large epsilon and is >= 1") {
    const Lattice z1 = Lattice::integers(1);
    const double v = m_epsilon(z1, 50.0, 1e-12);
    CHECK(v >= 1.0);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("m_epsilon is decreasing in epsilon") {
    const Lattice z1 = Lattice::integers(1);
    const double tol = 1e-10;
    double prev = m_epsilon(z1, 0.1, tol);
    for (const double eps : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double cur = m_epsilon(z1, eps, tol);
        CHECK(prev >= cur - 2.0 * tol);
        prev = cur;
    }
}

TEST_CASE("m_epsilon on Z^2 matches a brute-force box sum") {
    // Direct sum over |z|_inf <= 60; the omitted tail is far below 1e-10.
    double brute = 0.0;
    for (int z1 = -60; z1 <= 60; ++z1)
        for (int z2 = -60; z2 <= 60; ++z2)
            brute += std::exp(-std::hypot(static_cast<double>(z1), static_cast<double>(z2)));
    CHECK(m_epsilon(Lattice::integers(2), 1.0, 1e-10) ==
          doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("m_epsilon respects a scaled generator") {
    // Spacing-2 lattice: sum over 2Z is 1 + 2 e^{-2 eps}/(1 - e^{-2 eps}).
    const Lattice two = Lattice::with_generator(1, {2.0});
    const double eps = 0.7;
    const double expected = m_eps_z1(2.0 * eps);
    CHECK(std::abs(m_epsilon(two, eps, 1e-12) - expected) <= 1e-12);
}

TEST_CASE("m_epsilon domain errors") {
    const Lattice z1 = Lattice::integers(1);
    CHECK_THROWS_AS(m_epsilon(z1, 0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(m_epsilon(z1, -1.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(m_epsilon(z1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m_epsilon(z1, 1e-9, 1e-10, 50), ConvergenceError);
}

TEST_CASE("lattice_weight_sum recovers an exponential row sum") {
    const Lattice z1 = Lattice::integers(1);
    const double s = lattice_weight_sum(z1, [](double d) { return std::exp(-d); }, 1e-14);
    CHECK(s == doctest::Approx(m_eps_z1(1.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("window diameter of a 1-d box") {
    const IndexWindow w = make_window(Lattice::integers(1), 5);
    CHECK(window_diameter(w) == doctest::Approx(10.0));
}

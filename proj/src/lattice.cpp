#include "offdiag/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "offdiag/eig.hpp"
#include "offdiag/errors.hpp"

namespace offdiag {

namespace {

constexpr double kDetFloor = 1e-12;

// |det| by dense LU with partial pivoting; d is tiny.
double det_magnitude_impl(std::vector<double> g, int d) {
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int i = k + 1; i < d; ++i)
            if (std::abs(g[i * d + k]) > std::abs(g[piv * d + k])) piv = i;
        if (piv != k)
            for (int j = 0; j < d; ++j) std::swap(g[k * d + j], g[piv * d + j]);
        const double p = g[k * d + k];
        if (p == 0.0) return 0.0;
        det *= p;
        for (int i = k + 1; i < d; ++i) {
            const double m = g[i * d + k] / p;
            for (int j = k; j < d; ++j) g[i * d + j] -= m * g[k * d + j];
        }
    }
    return std::abs(det);
}

// Visit every z with |z|_inf == n (n >= 1), or just the origin for n == 0.
void for_each_shell_point(int d, std::int64_t n,
                          const std::function<void(std::span<const std::int64_t>)>& visit) {
    std::vector<std::int64_t> z(static_cast<std::size_t>(d), 0);
    if (n == 0) {
        visit(z);
        return;
    }
    // Recurse over coordinates; the last free coordinate is pinned to +-n
    // unless some earlier coordinate already reached the shell.
    std::function<void(int, bool)> rec = [&](int i, bool on_face) {
        if (i == d - 1) {
            if (on_face) {
                for (std::int64_t v = -n; v <= n; ++v) {
                    z[static_cast<std::size_t>(i)] = v;
                    visit(z);
                }
            } else {
                for (std::int64_t v : {-n, n}) {
                    z[static_cast<std::size_t>(i)] = v;
                    visit(z);
                }
            }
            return;
        }
        for (std::int64_t v = -n; v <= n; ++v) {
            z[static_cast<std::size_t>(i)] = v;
            rec(i + 1, on_face || v == -n || v == n);
        }
    };
    rec(0, false);
}

double point_norm(const Lattice& lat, std::span<const std::int64_t> z) {
    const int d = lat.dimension;
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        double xi = 0.0;
        for (int j = 0; j < d; ++j)
            xi += lat.generator[static_cast<std::size_t>(i * d + j)] *
                  static_cast<double>(z[static_cast<std::size_t>(j)]);
        s += xi * xi;
    }
    return std::sqrt(s);
}

}  // namespace

Lattice Lattice::integers(int d) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be positive");
    Lattice l;
    l.dimension = d;
    l.generator.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) l.generator[static_cast<std::size_t>(i * d + i)] = 1.0;
    return l;
}

Lattice Lattice::with_generator(int d, std::vector<double> g) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be positive");
    if (g.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
        throw std::invalid_argument("generator must be d*d row-major");
    if (det_magnitude_impl(g, d) <= kDetFloor)
        throw std::invalid_argument("generator matrix is singular");
    Lattice l;
    l.dimension = d;
    l.generator = std::move(g);
    return l;
}

double Lattice::det_magnitude() const { return det_magnitude_impl(generator, dimension); }

double Lattice::min_singular_value() const {
    const int d = dimension;
    std::vector<std::complex<double>> gtg(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k)
                s += generator[static_cast<std::size_t>(k * d + i)] *
                     generator[static_cast<std::size_t>(k * d + j)];
            gtg[static_cast<std::size_t>(i * d + j)] = s;
        }
    const auto ev = hermitian_eigenvalues(std::move(gtg), static_cast<std::size_t>(d));
    return std::sqrt(std::max(ev.front(), 0.0));
}

std::span<const std::int64_t> IndexWindow::coord(std::size_t i) const {
    const auto d = static_cast<std::size_t>(lattice.dimension);
    return {coords.data() + i * d, d};
}

std::span<const double> IndexWindow::point(std::size_t i) const {
    const auto d = static_cast<std::size_t>(lattice.dimension);
    return {points.data() + i * d, d};
}

IndexWindow make_window(const Lattice& lattice, int radius, std::size_t max_points) {
    if (radius < 0) throw std::invalid_argument("window radius must be >= 0");
    const int d = lattice.dimension;
    const double log_count = d * std::log(2.0 * radius + 1.0);
    if (log_count > std::log(static_cast<double>(max_points)) + 1e-9)
        throw CapacityError("window would exceed the configured point budget");

    IndexWindow w;
    w.lattice = lattice;
    w.radius = radius;

    std::vector<std::int64_t> z(static_cast<std::size_t>(d), -radius);
    const std::size_t n = [&] {
        std::size_t c = 1;
        for (int i = 0; i < d; ++i) c *= static_cast<std::size_t>(2 * radius + 1);
        return c;
    }();
    w.coords.reserve(n * static_cast<std::size_t>(d));
    w.points.reserve(n * static_cast<std::size_t>(d));

    // Odometer over [-radius, radius]^d, last coordinate fastest: lex order.
    while (true) {
        for (int i = 0; i < d; ++i) w.coords.push_back(z[static_cast<std::size_t>(i)]);
        for (int i = 0; i < d; ++i) {
            double xi = 0.0;
            for (int j = 0; j < d; ++j)
                xi += lattice.generator[static_cast<std::size_t>(i * d + j)] *
                      static_cast<double>(z[static_cast<std::size_t>(j)]);
            w.points.push_back(xi);
        }
        int i = d - 1;
        while (i >= 0 && z[static_cast<std::size_t>(i)] == radius) {
            z[static_cast<std::size_t>(i)] = -radius;
            --i;
        }
        if (i < 0) break;
        ++z[static_cast<std::size_t>(i)];
    }
    return w;
}

double distance(std::span<const double> s, std::span<const double> t) {
    if (s.size() != t.size())
        throw std::invalid_argument("distance: points from different lattices");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double di = s[i] - t[i];
        acc += di * di;
    }
    return std::sqrt(acc);
}

double distance(const IndexWindow& w, std::size_t i, std::size_t j) {
    return distance(w.point(i), w.point(j));
}

double window_diameter(const IndexWindow& w) {
    const std::size_t n = w.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        best = std::max(best, distance(w, 0, i));
    // The window is symmetric about the origin, so the diameter is realized
    // against one of the two extreme corners.
    for (std::size_t i = 0; i < n; ++i)
        best = std::max(best, distance(w, n - 1, i));
    return best;
}

double m_epsilon(const Lattice& lattice, double epsilon, double tail_tol, int max_shells) {
    if (epsilon <= 0.0) throw std::invalid_argument("m_epsilon: epsilon must be > 0");
    if (tail_tol <= 0.0) throw std::invalid_argument("m_epsilon: tail_tol must be > 0");

    const int d = lattice.dimension;
    const double c_g = lattice.min_singular_value();
    const double x = std::exp(-epsilon * c_g);

    double sum = 1.0;  // z = 0
    for (int n = 1; n <= max_shells; ++n) {
        double shell = 0.0;
        for_each_shell_point(d, n, [&](std::span<const std::int64_t> z) {
            shell += std::exp(-epsilon * point_norm(lattice, z));
        });
        sum += shell;

        // Shell m >= n+1 has at most 2d(2m+1)^{d-1} points, each of norm
        // >= c_G m; the term ratio is bounded by q below, so the remaining
        // tail is a geometric series.
        const double count_next = 2.0 * d * std::pow(2.0 * (n + 1) + 1.0, d - 1);
        const double t_next = count_next * std::pow(x, n + 1);
        const double q = x * std::pow((2.0 * n + 5.0) / (2.0 * n + 3.0), d - 1);
        if (q < 1.0 && t_next / (1.0 - q) <= tail_tol) return sum;
    }
    throw ConvergenceError("m_epsilon: shell tail bound not reached", sum);
}

double lattice_weight_sum(const Lattice& lattice,
                          const std::function<double(double)>& weight,
                          double stop_tol, int max_shells) {
    if (stop_tol <= 0.0) throw std::invalid_argument("lattice_weight_sum: stop_tol must be > 0");
    const int d = lattice.dimension;
    double sum = 0.0;
    int quiet = 0;
    for (int n = 1; n <= max_shells; ++n) {
        double shell = 0.0;
        for_each_shell_point(d, n, [&](std::span<const std::int64_t> z) {
            shell += weight(point_norm(lattice, z));
        });
        sum += shell;
        quiet = (shell <= stop_tol * std::max(1.0, sum)) ? quiet + 1 : 0;
        if (quiet >= 3) return sum;
    }
    throw ConvergenceError("lattice_weight_sum: shells exhausted", sum);
}

}  // namespace offdiag

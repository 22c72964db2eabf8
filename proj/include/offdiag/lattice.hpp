#ifndef OFFDIAG_LATTICE_HPP
#define OFFDIAG_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace offdiag {

// Index set G Z^d with the Euclidean metric d(s,t) = |s - t|.
struct Lattice {
    int dimension = 1;
    std::vector<double> generator;  // d x d, row-major, non-singular

    static Lattice integers(int d);
    static Lattice with_generator(int d, std::vector<double> g);

    double det_magnitude() const;
    // Smallest singular value of G; lower-bounds |G z| by c_G |z|.
    double min_singular_value() const;
};

// Finite truncation of the lattice: all points G z with |z|_inf <= radius,
// ordered lexicographically in z. Size is (2 radius + 1)^d.
struct IndexWindow {
    Lattice lattice;
    int radius = 0;
    std::vector<std::int64_t> coords;  // n*d integer coordinates
    std::vector<double> points;        // n*d real coordinates, G * z

    std::size_t size() const {
        return lattice.dimension > 0
                   ? coords.size() / static_cast<std::size_t>(lattice.dimension)
                   : 0;
    }
    std::span<const std::int64_t> coord(std::size_t i) const;
    std::span<const double> point(std::size_t i) const;
};

inline constexpr std::size_t kDefaultMaxWindowPoints = std::size_t{1} << 20;

IndexWindow make_window(const Lattice& lattice, int radius,
                        std::size_t max_points = kDefaultMaxWindowPoints);

double distance(std::span<const double> s, std::span<const double> t);
double distance(const IndexWindow& w, std::size_t i, std::size_t j);

// Largest pairwise distance on the window.
double window_diameter(const IndexWindow& w);

// sup_s sum_t exp(-epsilon d(s,t)). By translation invariance the supremum
// is attained at the origin, so this sums exp(-epsilon |G z|) over expanding
// l-inf shells until a rigorous geometric tail bound drops below tail_tol.
// The returned value is always >= 1 and within tail_tol of the true sum.
double m_epsilon(const Lattice& lattice, double epsilon, double tail_tol,
                 int max_shells = 200000);

// sum_{z != 0} weight(|G z|) for a nonnegative, eventually decreasing weight.
// Shells are accumulated until several consecutive shell totals fall below
// stop_tol; used for Schur row-sum certificates, where the caller re-verifies
// the resulting contraction numerically.
double lattice_weight_sum(const Lattice& lattice,
                          const std::function<double(double)>& weight,
                          double stop_tol, int max_shells = 200000);

}  // namespace offdiag

#endif

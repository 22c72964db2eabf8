#ifndef OFFDIAG_GENERATORS_HPP
#define OFFDIAG_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "offdiag/operator.hpp"
#include "offdiag/phi.hpp"

namespace offdiag {

// Test-matrix generators. The random families draw entries as
// sigma(s,t) * envelope(d(s,t)) with sigma in [-1,1] keyed by
// (seed, z_s, z_t), so a window enlargement extends the same infinite
// operator, and add a diagonal lambda = dominance * (row-sum bound) that
// certifies invertibility by the Schur test.
struct GeneratorSpec {
    enum class Kind {
        shift_example,       // I - Gamma on Z
        random_exponential,  // c e^{-gamma d}
        random_banded,       // band of width m
        random_subexp,       // e^{-k d^beta}, beta in (0,1)
        random_phi,          // min_p e^{p phi(p)} e^{-p d} on a fixed p-grid
        laplacian,           // (2d + delta) Id - adjacency; banded SPD
    };

    Kind kind = Kind::random_exponential;
    IndexWindow window;
    std::uint64_t seed = 0;
    double dominance = 2.0;  // > 1
    double k = 1.0;          // shift_example / random_subexp
    double beta = 1.0;       // shift_example (>= 1) / random_subexp (in (0,1))
    double gamma = 1.0;      // random_exponential
    double m = 1.0;          // random_banded
    double delta = 1.0;      // laplacian shift, > 0
    PhiSpec phi;             // random_phi
};

std::string generator_kind_name(GeneratorSpec::Kind kind);

struct ShiftExample {
    OperatorMatrix matrix;
    // Truncation of the infinite inverse; on the window it coincides with
    // the finite inverse because Gamma is nilpotent there.
    OperatorMatrix inverse_oracle;
};

// A = I - Gamma on a 1-d window. beta = 1: Gamma is e^{-1/k} times the
// backward shift and the oracle is B_{s,t} = e^{-(t-s)/k} for s <= t.
// beta > 1: Gamma_{s,t} = e^{-(t-s)^beta/k} for t > s and the oracle is the
// exact finite sum of powers of the nilpotent Gamma.
ShiftExample gen_shift_example(double k, const IndexWindow& window, double beta = 1.0);

// Random diagonally dominant matrix for the random_* kinds.
OperatorMatrix gen_random_decay(const GeneratorSpec& spec);

// Discrete Laplacian plus delta shift: SPD, banded with bandwidth
// max_i |G e_i|.
OperatorMatrix gen_laplacian_spd(double delta, const IndexWindow& window);

// Dispatch on spec.kind (shift_example yields the matrix only).
OperatorMatrix generate(const GeneratorSpec& spec);

}  // namespace offdiag

#endif

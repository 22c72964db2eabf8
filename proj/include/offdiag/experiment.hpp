#ifndef OFFDIAG_EXPERIMENT_HPP
#define OFFDIAG_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "offdiag/bounds.hpp"
#include "offdiag/envelope.hpp"
#include "offdiag/generators.hpp"

namespace offdiag {

struct WorkbenchConfig {
    double neumann_tol = 1e-12;
    double norm_tol = 1e-12;
    double m_tail_tol = 1e-12;
    double spectral_tol = 1e-12;
    double gamma = 1.0;  // membership rate when the generator has none
    int grid_size = 32;
    double fit_min_distance = 0.0;
    double zero_floor_rel = 1e-14;
    std::vector<double> p_grid = {1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0};
    std::vector<double> eps_grid = {0.25, 0.5, 1.0, 2.0};
    std::vector<double> k_grid = {0.5, 1.0, 2.0};
    int max_shells = 200000;
    std::size_t max_window_points = kDefaultMaxWindowPoints;
    OperatorConfig op;
    std::optional<Lattice> lattice;  // config-file override
};

WorkbenchConfig load_config(const std::string& path);

enum class BoundKind { jaffard, thm44, demko };

struct ExperimentReport {
    GeneratorSpec generator;
    BoundReport bound;
    std::optional<EnvelopeFit> fit;
    bool entrywise_pass = false;
    double worst_violation = 0.0;
    std::vector<std::pair<int, double>> truncation;  // (radius, max entry delta)
    std::int64_t runtime_ms = 0;

    // Inversion diagnostics, serialized under the bound inputs.
    double tail_bound = 0.0;
    long neumann_terms = 0;
    double oracle_max_diff = 0.0;                 // Neumann vs direct solve
    std::optional<double> shift_oracle_diff;      // vs closed form (shift only)
    bool near_singular = false;

    OperatorMatrix inverse;  // computed inverse; feeds the CSV dump
};

// Generates the matrix, measures ||A||, r and the m_eps values it needs,
// assembles the requested bound, inverts (Neumann cross-checked against the
// direct solve), and evaluates the bound entrywise.
ExperimentReport run_experiment(const GeneratorSpec& spec, BoundKind kind,
                                const WorkbenchConfig& cfg = {});

// Inverses at increasing radii; for each consecutive pair reports the max
// entrywise difference on the common (smaller) window, keyed by the larger
// radius.
std::vector<std::pair<int, double>> truncation_study(const GeneratorSpec& spec,
                                                     std::span<const int> radii,
                                                     const WorkbenchConfig& cfg = {});

struct SubExpRunReport {
    GeneratorSpec generator;
    SubExpReport forward;   // minimal C_k of A, plus the C~_eps scan
    SubExpReport inverse;   // minimal C'_k of the computed inverse
    std::optional<EnvelopeFit> fit;  // ln|inv| against d^beta
    double fitted_k_prime = 0.0;
    bool pass = false;
    std::int64_t runtime_ms = 0;
};

// Qualitative sub-exponential invariance check: every C'_k is finite on the
// window and the inverse admits a sub-exponential fit.
SubExpRunReport run_subexp_check(const GeneratorSpec& spec,
                                 const WorkbenchConfig& cfg = {});

std::string experiment_report_json(const ExperimentReport& rep, int indent = 2);
// One row per (s,t): s, t, distance, abs_inverse_entry, bound_value.
std::string experiment_report_csv(const ExperimentReport& rep);
std::string subexp_report_json(const SubExpRunReport& rep, int indent = 2);

}  // namespace offdiag

#endif

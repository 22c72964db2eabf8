#include "offdiag/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "offdiag/errors.hpp"
#include "offdiag/kernels.hpp"

namespace offdiag {

namespace {

using nlohmann::json;

std::string double_key(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json window_json(const IndexWindow& w) {
    return json{{"dimension", w.lattice.dimension},
                {"generator", w.lattice.generator},
                {"radius", w.radius},
                {"size", w.size()}};
}

json phi_json(const PhiSpec& spec) {
    json j{{"kind", phi_spec_name(spec)}, {"a", spec.a}};
    if (spec.kind == PhiSpec::Kind::power) j["alpha"] = spec.alpha;
    return j;
}

json generator_json(const GeneratorSpec& spec) {
    json j{{"kind", generator_kind_name(spec.kind)},
           {"seed", spec.seed},
           {"window", window_json(spec.window)}};
    switch (spec.kind) {
        case GeneratorSpec::Kind::shift_example:
            j["k"] = spec.k;
            j["beta"] = spec.beta;
            break;
        case GeneratorSpec::Kind::random_exponential:
            j["gamma"] = spec.gamma;
            j["dominance"] = spec.dominance;
            break;
        case GeneratorSpec::Kind::random_banded:
            j["m"] = spec.m;
            j["dominance"] = spec.dominance;
            break;
        case GeneratorSpec::Kind::random_subexp:
            j["k"] = spec.k;
            j["beta"] = spec.beta;
            j["dominance"] = spec.dominance;
            break;
        case GeneratorSpec::Kind::random_phi:
            j["phi"] = phi_json(spec.phi);
            j["dominance"] = spec.dominance;
            break;
        case GeneratorSpec::Kind::laplacian:
            j["delta"] = spec.delta;
            break;
    }
    return j;
}

json m_values_json(const std::map<double, double>& m_values) {
    json j = json::object();
    for (const auto& [eps, v] : m_values) j[double_key(eps)] = v;
    return j;
}

json bound_json(const ExperimentReport& rep) {
    const BoundReport& b = rep.bound;
    json inputs;
    switch (b.kind) {
        case BoundReport::Kind::jaffard:
            inputs = json{{"gamma", b.gamma},       {"gamma_prime", b.gamma_prime},
                          {"delta", b.delta},       {"r", b.r},
                          {"c_tilde", b.c_tilde},   {"c_gamma", b.c_gamma},
                          {"op_norm", b.op_norm},   {"m_values", m_values_json(b.m_values)}};
            break;
        case BoundReport::Kind::thm44:
            inputs = json{{"k1", b.k1},           {"a", b.a},
                          {"c2", b.c2},           {"r", b.r},
                          {"c_tilde", b.c_tilde}, {"op_norm", b.op_norm},
                          {"D", b.d_factor},      {"m_values", m_values_json(b.m_values)}};
            break;
        case BoundReport::Kind::demko:
            inputs = json{{"m", b.m},
                          {"kappa", b.kappa},
                          {"demko_c", b.demko_c},
                          {"op_norm", b.op_norm}};
            break;
    }
    inputs["tail_bound"] = rep.tail_bound;
    inputs["neumann_terms"] = rep.neumann_terms;
    inputs["oracle_max_diff"] = rep.oracle_max_diff;
    inputs["near_singular"] = rep.near_singular;
    if (rep.shift_oracle_diff) inputs["shift_oracle_diff"] = *rep.shift_oracle_diff;

    const char* kind_name = b.kind == BoundReport::Kind::jaffard  ? "jaffard"
                            : b.kind == BoundReport::Kind::thm44 ? "thm44"
                                                                  : "demko";
    return json{{"kind", kind_name},
                {"rate", std::isfinite(b.rate) ? json(b.rate) : json()},
                {"constant", b.constant},
                {"inputs", inputs}};
}

json fit_json(const std::optional<EnvelopeFit>& fit) {
    if (!fit) return json();
    json bins = json::array();
    for (const auto& [d, v] : fit->bins) bins.push_back(json::array({d, v}));
    return json{{"rate", fit->rate},
                {"log_constant", fit->log_constant},
                {"max_residual", fit->max_residual},
                {"bins", bins}};
}

json subexp_block(const SubExpReport& rep) {
    return json{{"k_grid", rep.k_grid},
                {"c_k", rep.c_k},
                {"eps_grid", rep.eps_grid},
                {"c_tilde", rep.c_tilde}};
}

// Lexicographic z-order makes the embedding index of a point of a smaller
// box into a larger one a positional computation.
std::size_t embed_index(std::span<const std::int64_t> z, int radius_big, int d) {
    const std::size_t stride = static_cast<std::size_t>(2 * radius_big + 1);
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i)
        idx = idx * stride +
              static_cast<std::size_t>(z[static_cast<std::size_t>(i)] + radius_big);
    return idx;
}

}  // namespace

WorkbenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);

    WorkbenchConfig cfg;
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("neumann_tol", cfg.neumann_tol);
    get("norm_tol", cfg.norm_tol);
    get("m_tail_tol", cfg.m_tail_tol);
    get("spectral_tol", cfg.spectral_tol);
    get("gamma", cfg.gamma);
    get("grid_size", cfg.grid_size);
    get("fit_min_distance", cfg.fit_min_distance);
    get("zero_floor_rel", cfg.zero_floor_rel);
    get("p_grid", cfg.p_grid);
    get("eps_grid", cfg.eps_grid);
    get("k_grid", cfg.k_grid);
    get("max_shells", cfg.max_shells);
    get("max_window_points", cfg.max_window_points);
    get("exact_eig_cutoff", cfg.op.exact_eig_cutoff);
    get("max_power_iterations", cfg.op.max_power_iterations);
    get("max_neumann_terms", cfg.op.max_neumann_terms);
    get("pivot_floor_rel", cfg.op.pivot_floor_rel);
    if (j.contains("lattice")) {
        const auto& jl = j.at("lattice");
        cfg.lattice = Lattice::with_generator(jl.at("dimension").get<int>(),
                                              jl.at("generator").get<std::vector<double>>());
    }
    return cfg;
}

ExperimentReport run_experiment(const GeneratorSpec& spec, BoundKind kind,
                                const WorkbenchConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    if (kind == BoundKind::demko &&
        (spec.kind == GeneratorSpec::Kind::random_exponential ||
         spec.kind == GeneratorSpec::Kind::random_subexp ||
         spec.kind == GeneratorSpec::Kind::random_phi ||
         (spec.kind == GeneratorSpec::Kind::shift_example && spec.beta > 1.0)))
        throw std::invalid_argument("run_experiment: the demko bound needs a banded generator");

    ExperimentReport rep;
    rep.generator = spec;

    std::optional<ShiftExample> shift;
    OperatorMatrix a;
    if (spec.kind == GeneratorSpec::Kind::shift_example) {
        shift = gen_shift_example(spec.k, spec.window, spec.beta);
        a = shift->matrix;
    } else {
        a = generate(spec);
    }
    const std::size_t n = a.size();

    const double opn = op_norm(a, cfg.norm_tol, cfg.op);
    const ContractionResult cr = contraction_r(a, cfg.norm_tol, cfg.op);
    rep.near_singular = cr.near_singular;
    // The bound formulas take r from (0,1); any upper bound for ||R|| is
    // valid in them, so a measured 0 is nudged off the boundary.
    const double r_used = std::max(cr.value, 1e-12);

    std::map<double, double> m_cache;
    auto m_of = [&](double eps) {
        auto it = m_cache.find(eps);
        if (it != m_cache.end()) return it->second;
        const double v = m_epsilon(spec.window.lattice, eps, cfg.m_tail_tol, cfg.max_shells);
        m_cache.emplace(eps, v);
        return v;
    };

    // The pivoted solve keeps entrywise relative accuracy, so it backs the
    // report; the series inverse is cross-checked against it within its own
    // tail bound.
    rep.inverse = direct_inverse(a, cfg.op);
    if (!rep.near_singular) {
        const NeumannInverse ni = neumann_inverse(a, cfg.neumann_tol, cfg.op);
        rep.oracle_max_diff = kernels::max_abs_diff(
            ni.approx_inverse.entries.data(), rep.inverse.entries.data(), n * n);
        rep.tail_bound = ni.tail_bound;
        rep.neumann_terms = ni.terms_used;
    }
    if (shift)
        rep.shift_oracle_diff = kernels::max_abs_diff(
            rep.inverse.entries.data(), shift->inverse_oracle.entries.data(), n * n);

    switch (kind) {
        case BoundKind::jaffard: {
            const double gamma = spec.kind == GeneratorSpec::Kind::random_exponential
                                     ? spec.gamma
                                     : cfg.gamma;
            const double c_gamma = membership_constant(a, gamma);
            rep.bound = optimize_jaffard(gamma, c_gamma, r_used, opn, m_of,
                                         cfg.grid_size);
            break;
        }
        case BoundKind::thm44: {
            const PhiConstants pc = phi_constants_of(a, spec.phi, cfg.p_grid);
            const double c2 = membership_constant(a, 2.0);
            rep.bound = thm44_constants(pc.k1, m_of(1.0), r_used, opn, spec.phi.a,
                                        std::max(c2, 1.0));
            break;
        }
        case BoundKind::demko: {
            const SpectralInterval si = spectral_interval(a, cfg.spectral_tol, cfg.op);
            double band = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t)
                    if (s != t && std::abs(a.at(s, t)) > 0.0)
                        band = std::max(band, distance(a.window, s, t));
            if (band == 0.0) band = 1.0;  // diagonal matrix: any band works
            double c_cal = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                c_cal = std::max(c_cal, std::abs(rep.inverse.at(s, s)));
            rep.bound.kind = BoundReport::Kind::demko;
            rep.bound.m = band;
            rep.bound.kappa = si.kappa;
            rep.bound.demko_c = c_cal;
            rep.bound.op_norm = opn;
            rep.bound.constant = c_cal;
            const double q = 1.0 - 2.0 / (std::sqrt(si.kappa) + 1.0);
            rep.bound.rate = q > 0.0 ? std::log(1.0 / q) / band
                                     : std::numeric_limits<double>::infinity();
            break;
        }
    }

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
            worst = std::max(worst, std::abs(rep.inverse.at(s, t)) -
                                        bound_value(rep.bound, distance(a.window, s, t)));
    rep.worst_violation = worst;
    rep.entrywise_pass = worst <= 0.0;

    try {
        rep.fit = fit_exponential_rate(rep.inverse, cfg.fit_min_distance,
                                       cfg.zero_floor_rel);
    } catch (const FitError&) {
    } catch (const DegenerateInputError&) {
    }

    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

std::vector<std::pair<int, double>> truncation_study(const GeneratorSpec& spec,
                                                     std::span<const int> radii,
                                                     const WorkbenchConfig& cfg) {
    if (radii.size() < 2)
        throw std::invalid_argument("truncation_study: need at least two radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw std::invalid_argument("truncation_study: radii must be strictly increasing");

    const int d = spec.window.lattice.dimension;
    std::vector<std::pair<int, double>> out;
    OperatorMatrix prev_inv;
    int prev_radius = -1;
    for (const int radius : radii) {
        GeneratorSpec s = spec;
        s.window = make_window(spec.window.lattice, radius, cfg.max_window_points);
        const OperatorMatrix inv = direct_inverse(generate(s), cfg.op);
        if (prev_radius >= 0) {
            const std::size_t np = prev_inv.size();
            double delta = 0.0;
            for (std::size_t i = 0; i < np; ++i) {
                const std::size_t bi = embed_index(prev_inv.window.coord(i), radius, d);
                for (std::size_t j = 0; j < np; ++j) {
                    const std::size_t bj = embed_index(prev_inv.window.coord(j), radius, d);
                    delta = std::max(delta, std::abs(prev_inv.at(i, j) - inv.at(bi, bj)));
                }
            }
            out.emplace_back(radius, delta);
        }
        prev_inv = inv;
        prev_radius = radius;
    }
    return out;
}

SubExpRunReport run_subexp_check(const GeneratorSpec& spec, const WorkbenchConfig& cfg) {
    if (spec.kind != GeneratorSpec::Kind::random_subexp)
        throw std::invalid_argument("run_subexp_check: generator must be random_subexp");
    const auto t0 = std::chrono::steady_clock::now();

    SubExpRunReport rep;
    rep.generator = spec;

    const OperatorMatrix a = gen_random_decay(spec);
    SubExpWeight w;
    w.rho_beta = spec.beta;
    w.dimension = spec.window.lattice.dimension;
    w.s_exponent = w.dimension + 1.0;
    rep.forward = check_subexp_hypotheses(w, a, cfg.k_grid, cfg.eps_grid);

    const OperatorMatrix inv = direct_inverse(a, cfg.op);
    rep.inverse = check_subexp_hypotheses(w, inv, cfg.k_grid, cfg.eps_grid);
    try {
        rep.fit = fit_decay_rate(inv, cfg.fit_min_distance, spec.beta, cfg.zero_floor_rel);
        rep.fitted_k_prime = rep.fit->rate;
    } catch (const FitError&) {
    } catch (const DegenerateInputError&) {
    }

    bool finite = true;
    for (const double c : rep.inverse.c_k) finite = finite && std::isfinite(c);
    rep.pass = finite && rep.fit.has_value();
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

std::string experiment_report_json(const ExperimentReport& rep, int indent) {
    json truncation = json::array();
    for (const auto& [radius, delta] : rep.truncation)
        truncation.push_back(json::array({radius, delta}));
    const json j{{"generator", generator_json(rep.generator)},
                 {"bound", bound_json(rep)},
                 {"fit", fit_json(rep.fit)},
                 {"entrywise_pass", rep.entrywise_pass},
                 {"worst_violation", rep.worst_violation},
                 {"truncation", truncation},
                 {"runtime_ms", rep.runtime_ms}};
    return j.dump(indent);
}

std::string experiment_report_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "s,t,distance,abs_inverse_entry,bound_value\n";
    char buf[128];
    const std::size_t n = rep.inverse.size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const double d = distance(rep.inverse.window, s, t);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g\n", s, t, d,
                          std::abs(rep.inverse.at(s, t)), bound_value(rep.bound, d));
            os << buf;
        }
    return os.str();
}

std::string subexp_report_json(const SubExpRunReport& rep, int indent) {
    const json j{{"generator", generator_json(rep.generator)},
                 {"bound", json{{"kind", "subexp"},
                                {"forward", subexp_block(rep.forward)},
                                {"inverse", subexp_block(rep.inverse)},
                                {"fitted_k_prime", rep.fitted_k_prime}}},
                 {"fit", fit_json(rep.fit)},
                 {"entrywise_pass", rep.pass},
                 {"worst_violation", 0.0},
                 {"truncation", json::array()},
                 {"runtime_ms", rep.runtime_ms}};
    return j.dump(indent);
}

}  // namespace offdiag

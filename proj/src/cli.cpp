#include "offdiag/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "offdiag/experiment.hpp"

namespace offdiag {

namespace {

struct CommonOpts {
    std::uint64_t seed = 0;
    int radius = 16;
    std::string out;
    std::string format = "json";
    std::string config_path;
    double fit_min_distance = -1.0;  // < 0: keep the config value
};

void add_common(CLI::App* cmd, CommonOpts& o, int default_radius) {
    o.radius = default_radius;
    cmd->add_option("--seed", o.seed, "generator seed");
    cmd->add_option("--radius", o.radius, "window radius")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--fit-min-distance", o.fit_min_distance,
                    "smallest distance bin used by the decay fit");
}

WorkbenchConfig config_of(const CommonOpts& o) {
    WorkbenchConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (o.fit_min_distance >= 0.0) cfg.fit_min_distance = o.fit_min_distance;
    return cfg;
}

Lattice lattice_of(const WorkbenchConfig& cfg) {
    return cfg.lattice ? *cfg.lattice : Lattice::integers(1);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

GeneratorSpec::Kind family_kind(const std::string& family) {
    if (family == "exponential") return GeneratorSpec::Kind::random_exponential;
    if (family == "banded") return GeneratorSpec::Kind::random_banded;
    if (family == "subexp") return GeneratorSpec::Kind::random_subexp;
    if (family == "phi") return GeneratorSpec::Kind::random_phi;
    if (family == "shift") return GeneratorSpec::Kind::shift_example;
    throw std::invalid_argument("unknown generator family: " + family);
}

int run_report(const ExperimentReport& rep, const CommonOpts& o) {
    emit(o.format == "csv" ? experiment_report_csv(rep) : experiment_report_json(rep),
         o.out);
    return rep.entrywise_pass ? 0 : 2;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"off-diagonal decay workbench"};
    app.require_subcommand(1);
    int exit_code = 0;

    // m-epsilon
    auto m_opts = std::make_shared<CommonOpts>();
    auto m_eps = std::make_shared<std::vector<double>>();
    auto m_dim = std::make_shared<int>(1);
    auto m_gen = std::make_shared<std::vector<double>>();
    {
        CLI::App* cmd = app.add_subcommand(
            "m-epsilon", "lattice summability constants over an epsilon grid");
        add_common(cmd, *m_opts, 0);
        cmd->add_option("--eps", *m_eps, "epsilon values")->required();
        cmd->add_option("--dim", *m_dim, "lattice dimension");
        cmd->add_option("--gen", *m_gen, "row-major generator matrix entries");
        cmd->callback([=, &exit_code] {
            const WorkbenchConfig cfg = config_of(*m_opts);
            Lattice lat = !m_gen->empty() ? Lattice::with_generator(*m_dim, *m_gen)
                          : cfg.lattice   ? *cfg.lattice
                                          : Lattice::integers(*m_dim);
            nlohmann::json rows = nlohmann::json::array();
            std::ostringstream csv;
            csv << "epsilon,m_epsilon\n";
            char buf[80];
            for (const double eps : *m_eps) {
                const double v = m_epsilon(lat, eps, cfg.m_tail_tol, cfg.max_shells);
                rows.push_back({{"epsilon", eps}, {"value", v}});
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", eps, v);
                csv << buf;
            }
            if (m_opts->format == "csv") {
                emit(csv.str(), m_opts->out);
            } else {
                const nlohmann::json j{{"lattice",
                                        {{"dimension", lat.dimension},
                                         {"generator", lat.generator}}},
                                       {"m_epsilon", rows}};
                emit(j.dump(2), m_opts->out);
            }
            exit_code = 0;
        });
    }

    // shift-example
    auto sh_opts = std::make_shared<CommonOpts>();
    auto sh_k = std::make_shared<double>(1.0);
    auto sh_beta = std::make_shared<double>(1.0);
    auto sh_gamma = std::make_shared<double>(1.0);
    {
        CLI::App* cmd = app.add_subcommand(
            "shift-example", "shifted identity example with closed-form inverse");
        add_common(cmd, *sh_opts, 32);
        cmd->add_option("--k", *sh_k, "decay parameter k > 0");
        cmd->add_option("--beta", *sh_beta, "offset exponent (1 = plain shift)");
        cmd->add_option("--gamma", *sh_gamma, "membership rate for the bound");
        cmd->callback([=, &exit_code] {
            WorkbenchConfig cfg = config_of(*sh_opts);
            cfg.gamma = *sh_gamma;
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::shift_example;
            spec.k = *sh_k;
            spec.beta = *sh_beta;
            spec.seed = sh_opts->seed;
            spec.window = make_window(lattice_of(cfg), sh_opts->radius,
                                      cfg.max_window_points);
            exit_code = run_report(run_experiment(spec, BoundKind::jaffard, cfg), *sh_opts);
        });
    }

    // verify-jaffard
    auto vj_opts = std::make_shared<CommonOpts>();
    auto vj_family = std::make_shared<std::string>("exponential");
    auto vj_gamma = std::make_shared<double>(1.0);
    auto vj_dominance = std::make_shared<double>(2.0);
    auto vj_m = std::make_shared<double>(2.0);
    auto vj_k = std::make_shared<double>(1.0);
    auto vj_beta = std::make_shared<double>(0.5);
    auto vj_phi = std::make_shared<std::string>("power:1");
    {
        CLI::App* cmd = app.add_subcommand(
            "verify-jaffard", "exponential-decay inverse bound, entrywise");
        add_common(cmd, *vj_opts, 16);
        cmd->add_option("--family", *vj_family, "generator family")
            ->check(CLI::IsMember({"exponential", "banded", "subexp", "phi", "shift"}));
        cmd->add_option("--gamma", *vj_gamma, "decay rate of the generated matrix");
        cmd->add_option("--dominance", *vj_dominance, "diagonal dominance factor > 1");
        cmd->add_option("--m", *vj_m, "band width (banded family)");
        cmd->add_option("--k", *vj_k, "decay parameter (subexp/shift family)");
        cmd->add_option("--beta", *vj_beta, "decay exponent (subexp/shift family)");
        cmd->add_option("--phi", *vj_phi, "phi spec (phi family)");
        cmd->callback([=, &exit_code] {
            WorkbenchConfig cfg = config_of(*vj_opts);
            cfg.gamma = *vj_gamma;
            GeneratorSpec spec;
            spec.kind = family_kind(*vj_family);
            spec.seed = vj_opts->seed;
            spec.dominance = *vj_dominance;
            spec.gamma = *vj_gamma;
            spec.m = *vj_m;
            spec.k = *vj_k;
            spec.beta = spec.kind == GeneratorSpec::Kind::shift_example
                            ? std::max(*vj_beta, 1.0)
                            : *vj_beta;
            if (spec.kind == GeneratorSpec::Kind::random_phi)
                spec.phi = parse_phi_spec(*vj_phi);
            spec.window = make_window(lattice_of(cfg), vj_opts->radius,
                                      cfg.max_window_points);
            exit_code = run_report(run_experiment(spec, BoundKind::jaffard, cfg), *vj_opts);
        });
    }

    // verify-thm44
    auto vt_opts = std::make_shared<CommonOpts>();
    auto vt_phi = std::make_shared<std::string>("power:1");
    auto vt_dominance = std::make_shared<double>(2.0);
    {
        CLI::App* cmd = app.add_subcommand(
            "verify-thm44", "phi-family inverse bound, entrywise");
        add_common(cmd, *vt_opts, 16);
        cmd->add_option("--phi", *vt_phi, "phi spec, e.g. power:1, power:2, log");
        cmd->add_option("--dominance", *vt_dominance, "diagonal dominance factor > 1");
        cmd->callback([=, &exit_code] {
            const WorkbenchConfig cfg = config_of(*vt_opts);
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::random_phi;
            spec.phi = parse_phi_spec(*vt_phi);
            spec.seed = vt_opts->seed;
            spec.dominance = *vt_dominance;
            spec.window = make_window(lattice_of(cfg), vt_opts->radius,
                                      cfg.max_window_points);
            exit_code = run_report(run_experiment(spec, BoundKind::thm44, cfg), *vt_opts);
        });
    }

    // demko
    auto dk_opts = std::make_shared<CommonOpts>();
    auto dk_delta = std::make_shared<double>(1.0);
    {
        CLI::App* cmd = app.add_subcommand(
            "demko", "banded SPD generator with the condition-number bound");
        add_common(cmd, *dk_opts, 32);
        cmd->add_option("--delta", *dk_delta, "diagonal shift > 0 of the SPD generator");
        cmd->callback([=, &exit_code] {
            const WorkbenchConfig cfg = config_of(*dk_opts);
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::laplacian;
            spec.delta = *dk_delta;
            spec.seed = dk_opts->seed;
            spec.window = make_window(lattice_of(cfg), dk_opts->radius,
                                      cfg.max_window_points);
            exit_code = run_report(run_experiment(spec, BoundKind::demko, cfg), *dk_opts);
        });
    }

    // subexp
    auto se_opts = std::make_shared<CommonOpts>();
    auto se_beta = std::make_shared<double>(0.5);
    auto se_k = std::make_shared<double>(1.0);
    auto se_dominance = std::make_shared<double>(2.0);
    auto se_kgrid = std::make_shared<std::vector<double>>();
    {
        CLI::App* cmd = app.add_subcommand(
            "subexp", "qualitative sub-exponential invariance check");
        add_common(cmd, *se_opts, 16);
        cmd->add_option("--beta", *se_beta, "decay exponent in (0,1)");
        cmd->add_option("--k", *se_k, "decay parameter k > 0");
        cmd->add_option("--dominance", *se_dominance, "diagonal dominance factor > 1");
        cmd->add_option("--k-grid", *se_kgrid, "k values for the constant scan");
        cmd->callback([=, &exit_code] {
            WorkbenchConfig cfg = config_of(*se_opts);
            if (!se_kgrid->empty()) cfg.k_grid = *se_kgrid;
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::random_subexp;
            spec.beta = *se_beta;
            spec.k = *se_k;
            spec.seed = se_opts->seed;
            spec.dominance = *se_dominance;
            spec.window = make_window(lattice_of(cfg), se_opts->radius,
                                      cfg.max_window_points);
            const SubExpRunReport rep = run_subexp_check(spec, cfg);
            if (se_opts->format == "csv") {
                std::ostringstream csv;
                csv << "k,c_k_forward,c_k_inverse\n";
                char buf[96];
                for (std::size_t i = 0; i < rep.forward.k_grid.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                                  rep.forward.k_grid[i], rep.forward.c_k[i],
                                  rep.inverse.c_k[i]);
                    csv << buf;
                }
                emit(csv.str(), se_opts->out);
            } else {
                emit(subexp_report_json(rep), se_opts->out);
            }
            exit_code = rep.pass ? 0 : 2;
        });
    }

    // truncation
    auto tr_opts = std::make_shared<CommonOpts>();
    auto tr_family = std::make_shared<std::string>("exponential");
    auto tr_radii = std::make_shared<std::vector<int>>();
    auto tr_gamma = std::make_shared<double>(1.0);
    auto tr_dominance = std::make_shared<double>(2.0);
    auto tr_k = std::make_shared<double>(1.0);
    auto tr_beta = std::make_shared<double>(1.0);
    auto tr_m = std::make_shared<double>(2.0);
    auto tr_phi = std::make_shared<std::string>("power:1");
    {
        CLI::App* cmd = app.add_subcommand(
            "truncation", "window-size sensitivity of the computed inverse");
        add_common(cmd, *tr_opts, 16);
        cmd->add_option("--family", *tr_family, "generator family")
            ->check(CLI::IsMember({"exponential", "banded", "subexp", "phi", "shift"}));
        cmd->add_option("--radii", *tr_radii, "strictly increasing radii")->required();
        cmd->add_option("--gamma", *tr_gamma, "decay rate (exponential family)");
        cmd->add_option("--dominance", *tr_dominance, "diagonal dominance factor > 1");
        cmd->add_option("--k", *tr_k, "decay parameter (subexp/shift family)");
        cmd->add_option("--beta", *tr_beta, "decay exponent (subexp/shift family)");
        cmd->add_option("--m", *tr_m, "band width (banded family)");
        cmd->add_option("--phi", *tr_phi, "phi spec (phi family)");
        cmd->callback([=, &exit_code] {
            const auto t0 = std::chrono::steady_clock::now();
            const WorkbenchConfig cfg = config_of(*tr_opts);
            GeneratorSpec spec;
            spec.kind = family_kind(*tr_family);
            spec.seed = tr_opts->seed;
            spec.gamma = *tr_gamma;
            spec.dominance = *tr_dominance;
            spec.k = *tr_k;
            spec.beta = *tr_beta;
            spec.m = *tr_m;
            if (spec.kind == GeneratorSpec::Kind::random_phi)
                spec.phi = parse_phi_spec(*tr_phi);
            spec.window = make_window(lattice_of(cfg), tr_radii->empty() ? 0 : tr_radii->front(),
                                      cfg.max_window_points);
            const auto deltas = truncation_study(spec, *tr_radii, cfg);
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            if (tr_opts->format == "csv") {
                std::ostringstream csv;
                csv << "radius,max_entry_delta\n";
                char buf[64];
                for (const auto& [radius, delta] : deltas) {
                    std::snprintf(buf, sizeof buf, "%d,%.17g\n", radius, delta);
                    csv << buf;
                }
                emit(csv.str(), tr_opts->out);
            } else {
                nlohmann::json trunc = nlohmann::json::array();
                for (const auto& [radius, delta] : deltas)
                    trunc.push_back(nlohmann::json::array({radius, delta}));
                nlohmann::json j{{"generator",
                                  {{"kind", generator_kind_name(spec.kind)},
                                   {"seed", spec.seed}}},
                                 {"bound", nullptr},
                                 {"fit", nullptr},
                                 {"entrywise_pass", nullptr},
                                 {"worst_violation", nullptr},
                                 {"truncation", trunc},
                                 {"runtime_ms", ms}};
                emit(j.dump(2), tr_opts->out);
            }
            exit_code = 0;
        });
    }

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size());
    for (auto it = args.rbegin(); it != args.rend(); ++it) argv_storage.push_back(*it);

    try {
        app.parse(argv_storage);  // CLI11 takes the vector reversed
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace offdiag

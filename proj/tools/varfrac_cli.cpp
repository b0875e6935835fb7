// Command-line front end: reads one structured config file, runs the
// requested computation, and writes machine-readable reports (JSON summary
// plus CSV tables). Exit codes: 0 success, 1 validation failure, 2 config
// parse failure, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "varfrac/properties.hpp"

namespace vf = varfrac;
namespace fs = std::filesystem;

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir = ".";
    double tol_override = -1.0;
    long seed_override = -1;
    int threads = -1;
};

struct CliError {
    int exit_code;
    std::string message;
};

vf::RunConfig load_config(const CliArgs& args) {
    vf::RunConfig cfg = vf::RunConfig::from_file(args.config_path);
    if (args.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed_override);
    if (args.tol_override > 0.0) cfg.tol = args.tol_override;
    if (args.threads >= 0) cfg.threads = args.threads;
    vf::set_threads(cfg.threads == 0 ? 0 : std::max(1, cfg.threads));
    return cfg;
}

void write_report(const vf::JsonWriter& w, const CliArgs& args) {
    fs::create_directories(args.out_dir);
    w.write_file((fs::path(args.out_dir) / "report.json").string());
}

void write_error_report(const CliArgs& args, const std::string& kind, const std::string& what) {
    try {
        vf::JsonWriter w;
        w.begin_object();
        w.field("error", kind);
        w.field("message", what);
        w.end_object();
        write_report(w, args);
    } catch (...) {
        // report directory unusable; the message still went to stderr
    }
}

int run_validate_kernel(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    const vf::KernelReport rep = vf::validate_kernel(prob->kernel, prob->p, prob->grid);
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "validate-kernel");
    w.field("symmetric", rep.symmetric);
    w.field("max_asymmetry", rep.max_asymmetry);
    w.field("lower_bound_ok", rep.lower_bound_ok);
    w.field("min_ratio", rep.min_ratio);
    w.field("k0", prob->kernel.k0);
    w.field("integrable", rep.integrable);
    w.field("integral_coarse", rep.integral_coarse);
    w.field("integral_fine", rep.integral_fine);
    w.field("refinement_change", rep.refinement_change);
    w.field("pass", rep.pass());
    w.end_object();
    write_report(w, args);
    std::cout << (rep.pass() ? "kernel admissible" : "kernel inadmissible") << "\n";
    return rep.pass() ? 0 : 1;
}

int run_validate_exponent(const vf::RunConfig& cfg, const CliArgs& args) {
    const vf::GridDomain grid = vf::grid_from_config(cfg.raw);
    const vf::PairSet pairs = vf::build_pairset(grid);
    double s = 0.0;
    const auto f = vf::exponent_closure_from_config(cfg.raw, grid.dim, s);
    const vf::ExponentReport rep = vf::sample_exponent_report(f, s, grid, pairs);
    vf::TranslationReport tr;
    bool translation_checked = false;
    if (rep.bounds_ok && rep.symmetric) {
        const vf::ExponentField p{f, rep.p_min, rep.p_max, s};
        tr = vf::validate_translation_invariance(p, grid, pairs);
        translation_checked = true;
    }
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "validate-exponent");
    w.field("p_min", rep.p_min);
    w.field("p_max", rep.p_max);
    w.field("bounds_ok", rep.bounds_ok);
    w.field("max_asymmetry", rep.max_asymmetry);
    w.field("symmetric", rep.symmetric);
    w.field("s", s);
    w.field("s_hypothesis_ok", rep.s_hypothesis_ok);
    w.field("translation_checked", translation_checked);
    if (translation_checked) {
        w.field("translation_max_violation", tr.max_violation);
        w.field("translation_invariant", tr.pass);
    }
    w.field("pass", rep.pass());
    w.end_object();
    write_report(w, args);
    std::cout << w.str() << "\n";
    return rep.pass() ? 0 : 1;
}

int run_dump_grid(const vf::RunConfig& cfg, const CliArgs& args) {
    const vf::GridDomain grid = vf::grid_from_config(cfg.raw);
    fs::create_directories(args.out_dir);
    std::ofstream out(fs::path(args.out_dir) / "grid.csv", std::ios::binary);
    vf::dump_grid_csv(grid, out);
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "dump-grid");
    w.field("nodes", grid.n_nodes());
    w.field("interior_nodes", grid.n_omega());
    w.field("exterior_nodes", grid.n_exterior());
    w.field("h", grid.h);
    w.field("omega_measure", grid.omega_measure());
    w.end_object();
    write_report(w, args);
    return 0;
}

int run_norm(const vf::RunConfig& cfg, const CliArgs& args, const std::string& space) {
    auto prob = vf::build_problem(cfg);
    if (!cfg.raw.contains("function")) throw vf::ConfigError("config: missing 'function'");
    const vf::GridFunction u = vf::function_from_config(cfg.raw.at("function"), prob->grid, cfg.seed);

    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "norm");
    w.field("space", space);
    if (space == "lebesgue") {
        const vf::ScalarExponent q = cfg.raw.contains("scalar_exponent")
                                         ? vf::scalar_exponent_from_config(
                                               cfg.raw.at("scalar_exponent"), prob->grid)
                                         : prob->p_bar;
        const vf::LuxemburgResult r = vf::luxemburg_norm_result(u, q);
        w.field("norm", r.norm);
        w.field("modular", vf::modular_lebesgue(u, q));
        w.field("modular_at_unit", r.modular_at_unit);
        w.field("iterations", r.iterations);
    } else if (space == "sobolev") {
        const vf::SeminormResult r = vf::gagliardo_seminorm(u, prob->op->pair_data());
        w.field("seminorm", r.seminorm);
        w.field("lebesgue_part", vf::luxemburg_norm(u, prob->p_bar));
        w.field("norm", vf::full_norm(u, prob->op->pair_data(), prob->p_bar));
        w.field("modular", vf::gagliardo_modular(u, prob->op->pair_data()));
        w.field("modular_at_unit", r.modular_at_unit);
        w.field("iterations", r.iterations);
    } else {
        throw vf::ConfigError("norm: unknown space '" + space + "'");
    }
    w.end_object();
    write_report(w, args);
    std::cout << w.str() << "\n";
    return 0;
}

int run_seminorm(const vf::RunConfig& cfg, const CliArgs& args) {
    return run_norm(cfg, args, "sobolev");
}

int run_compare_spaces(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    if (!cfg.raw.contains("function")) throw vf::ConfigError("config: missing 'function'");
    const vf::GridFunction u = vf::function_from_config(cfg.raw.at("function"), prob->grid, cfg.seed);
    const vf::SpaceComparison c = vf::compare_spaces(u, prob->kernel, prob->p, prob->pairs);
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "compare-spaces");
    w.field("seminorm_s", c.seminorm_s);
    w.field("seminorm_K", c.seminorm_K);
    w.field("ktilde", c.ktilde);
    w.field("pass", c.pass);
    w.end_object();
    write_report(w, args);
    return c.pass ? 0 : 1;
}

int run_embedding_scan(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    if (!cfg.raw.contains("scalar_exponent"))
        throw vf::ConfigError("config: embedding-scan needs 'scalar_exponent' (the target r)");
    const vf::ScalarExponent r =
        vf::scalar_exponent_from_config(cfg.raw.at("scalar_exponent"), prob->grid);
    const long samples = cfg.raw.value("samples", 100L);

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::pair<long, double>> rows;
    double max_ratio = 0.0, sum = 0.0;
    for (long k = 0; k < samples; ++k) {
        const vf::GridFunction u = vf::random_x0_nonzero(prob->grid, rng);
        const auto ratio = vf::embedding_ratio(u, r, prob->op->pair_data(), prob->p);
        rows.push_back({k, ratio.value()});
        max_ratio = std::max(max_ratio, ratio.value());
        sum += ratio.value();
    }
    fs::create_directories(args.out_dir);
    vf::write_samples_csv(rows, "sample,ratio", (fs::path(args.out_dir) / "samples.csv").string());

    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "embedding-scan");
    w.field("samples", samples);
    w.field("max_ratio", max_ratio);
    w.field("mean_ratio", sum / static_cast<double>(samples));
    w.end_object();
    write_report(w, args);
    return 0;
}

int run_operator_probe(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    const vf::WeakOperator& op = *prob->op;
    std::mt19937_64 rng(cfg.seed);

    double worst_identity = 0.0;
    for (int c = 0; c < 50; ++c) {
        const vf::GridFunction u = vf::random_x0_nonzero(prob->grid, rng);
        const double lhs = op.apply(u, u);
        const double rho = op.modular(u);
        worst_identity =
            std::max(worst_identity, std::abs(lhs - rho) / std::max(1.0, std::abs(rho)));
    }

    long mono_violations = 0;
    for (int c = 0; c < 100; ++c) {
        const vf::GridFunction u = vf::random_x0_nonzero(prob->grid, rng);
        const vf::GridFunction v = vf::random_x0_nonzero(prob->grid, rng);
        const vf::MonotonicityProbe pr = vf::monotonicity_probe(op, u, v);
        if (!pr.degenerate && !(pr.value > 0.0)) ++mono_violations;
    }

    long coercivity_violations = 0;
    for (int c = 0; c < 50; ++c) {
        const vf::GridFunction u = vf::random_x0_nonzero(prob->grid, rng);
        const vf::CoercivityReport rep = vf::coercivity_probe(op, u);
        if (!rep.satisfied || !rep.ratios_increasing) ++coercivity_violations;
    }

    long bounded_violations = 0;
    for (int c = 0; c < 50; ++c) {
        const vf::GridFunction u = vf::random_x0_nonzero(prob->grid, rng);
        const vf::GridFunction phi = vf::random_x0_nonzero(prob->grid, rng);
        if (!vf::boundedness_probe(op, u, phi).pass) ++bounded_violations;
    }

    const bool pass = worst_identity <= 1e-12 && mono_violations == 0 &&
                      coercivity_violations == 0 && bounded_violations == 0;
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "operator-probe");
    w.field("seed", static_cast<long>(cfg.seed));
    w.field("identity_worst_relative_error", worst_identity);
    w.field("monotonicity_violations", mono_violations);
    w.field("coercivity_violations", coercivity_violations);
    w.field("boundedness_violations", bounded_violations);
    w.field("pass", pass);
    w.end_object();
    write_report(w, args);
    return pass ? 0 : 1;
}

int run_solve(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    const auto& pj = vf::detail::section(cfg.raw, "problem");
    if (vf::detail::str(pj, "type") != "dirichlet")
        throw vf::ConfigError("solve: problem.type must be 'dirichlet'");
    const vf::DualVector f =
        vf::dual_from_config(vf::detail::section(pj, "f"), prob->grid, cfg.seed);

    vf::SolveOptions so;
    so.tol = cfg.tol;
    so.seed = cfg.seed;
    const vf::SolveReport rep = vf::solve_dirichlet(*prob->op, f, so);

    fs::create_directories(args.out_dir);
    vf::write_solution_csv(rep.solution, (fs::path(args.out_dir) / "solution.csv").string());
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "solve");
    w.field("seed", static_cast<long>(cfg.seed));
    w.field("tol", cfg.tol);
    w.field("converged", rep.converged);
    w.field("status", rep.status);
    w.field("residual", rep.residual);
    w.field("iterations", rep.iterations);
    w.field("energy", rep.energy_value);
    w.field("multistart_agreement", rep.multistart_agreement);
    w.end_object();
    write_report(w, args);
    if (!rep.converged) {
        std::cerr << "solve: did not reach tolerance (status " << rep.status << ")\n";
        return 3;
    }
    return 0;
}

int run_solve_kirchhoff(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    const auto& pj = vf::detail::section(cfg.raw, "problem");
    if (vf::detail::str(pj, "type") != "kirchhoff")
        throw vf::ConfigError("solve-kirchhoff: problem.type must be 'kirchhoff'");
    const vf::KirchhoffData data = vf::kirchhoff_from_config(pj);

    const vf::KirchhoffValidation val = vf::validate_kirchhoff(data, prob->p, prob->grid);
    vf::JsonWriter w;
    w.begin_object();
    w.field("command", "solve-kirchhoff");
    w.field("seed", static_cast<long>(cfg.seed));
    w.key("validation").begin_object();
    w.field("rejected", val.rejected);
    if (val.rejected) w.field("reason", val.reject_reason);
    w.field("theta_bound", val.theta_bound);
    w.field("theta_ok", val.theta_ok);
    w.field("beta_over_alpha_ok", val.beta_over_alpha_ok);
    w.field("subcritical_ok", val.subcritical_ok);
    w.field("m1_lower_ok", val.m1_lower_ok);
    w.field("m1_upper_ok", val.m1_upper_ok);
    w.field("m1_upper_from", val.m1_upper_from);
    w.field("f0_ok", val.f0_ok);
    w.field("f1_ok", val.f1_ok);
    w.field("ar_ok", val.ar_ok);
    w.end_object();
    if (val.rejected) {
        w.end_object();
        write_report(w, args);
        std::cerr << "solve-kirchhoff: data rejected: " << val.reject_reason << "\n";
        return 1;
    }

    vf::MountainPassOptions mp;
    mp.seed = cfg.seed;
    const vf::GeometryReport geom = vf::mountain_pass_geometry(data, *prob->op, prob->p_bar, mp);
    w.key("geometry").begin_object();
    w.field("rim_found", geom.rim_found);
    w.field("R", geom.R);
    w.field("a", geom.a);
    w.field("neg_found", geom.neg_found);
    w.field("t_neg", geom.t_neg);
    w.field("J_at_t_neg", geom.J_at_t_neg);
    w.field("mp_level_estimate", geom.mp_level_estimate);
    w.end_object();
    if (!geom.rim_found || !geom.neg_found) {
        w.end_object();
        write_report(w, args);
        std::cerr << "solve-kirchhoff: mountain-pass geometry not found\n";
        return 1;
    }

    vf::KirchhoffSolveOptions ko;
    ko.tol = cfg.tol;
    const vf::KirchhoffSolveReport rep =
        vf::solve_kirchhoff(data, *prob->op, prob->p_bar, geom, ko);
    const vf::PsProbeReport psr =
        vf::ps_boundedness_probe(data, *prob->op, prob->p_bar, rep.snapshots);

    fs::create_directories(args.out_dir);
    vf::write_solution_csv(rep.solution, (fs::path(args.out_dir) / "solution.csv").string());
    w.key("solve").begin_object();
    w.field("converged", rep.converged);
    w.field("status", rep.status);
    w.field("residual", rep.residual);
    w.field("iterations", rep.iterations);
    w.field("J", rep.J_value);
    w.field("norm", rep.norm_value);
    w.field("R", rep.R);
    w.field("nontrivial_certificate", rep.nontrivial_certificate);
    w.field("suspect_trivial", rep.suspect_trivial);
    w.end_object();
    w.key("ps_probe").begin_object();
    w.field("theta_coef", psr.theta_coef);
    w.field("theta_ok", psr.theta_ok);
    w.field("inequality_violations", psr.inequality_violations);
    w.field("max_seminorm", psr.max_seminorm);
    w.field("rho_bound", psr.rho_bound);
    w.field("flagged_growth", psr.flagged_growth);
    w.end_object();
    w.end_object();
    write_report(w, args);
    if (!rep.converged || rep.suspect_trivial) {
        std::cerr << "solve-kirchhoff: no certified critical point (status " << rep.status
                  << ")\n";
        return 3;
    }
    return 0;
}

int run_properties(const vf::RunConfig& cfg, const CliArgs& args) {
    auto prob = vf::build_problem(cfg);
    const auto results = vf::run_property_suite(*prob, cfg.seed);
    vf::JsonWriter w;
    vf::property_report_json(results, w);
    write_report(w, args);
    bool all = true;
    for (const auto& r : results) {
        if (!r.pass) std::cerr << "property failed: " << r.name << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "all properties pass" : "property violations found") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent fractional Sobolev space toolkit"};
    app.require_subcommand(1);

    CliArgs args;
    app.add_option("--config", args.config_path, "path to the run config file")->required();
    app.add_option("--out", args.out_dir, "output directory for reports");
    app.add_option("--seed", args.seed_override, "override the config seed");
    app.add_option("--tol", args.tol_override, "override the config tolerance");
    app.add_option("--threads", args.threads, "worker threads (0 = auto)");

    std::string norm_space = "lebesgue";
    auto* cmd_vk = app.add_subcommand("validate-kernel", "kernel admissibility report");
    auto* cmd_ve = app.add_subcommand("validate-exponent", "exponent field validation report");
    auto* cmd_dump = app.add_subcommand("dump-grid", "write the grid as CSV");
    auto* cmd_norm = app.add_subcommand("norm", "Luxemburg norm of a configured function");
    cmd_norm->add_option("--space", norm_space, "lebesgue or sobolev");
    auto* cmd_semi = app.add_subcommand("seminorm", "Gagliardo-type seminorm and full norm");
    auto* cmd_cmp = app.add_subcommand("compare-spaces", "seminorm comparison across kernels");
    auto* cmd_emb = app.add_subcommand("embedding-scan", "empirical embedding-constant scan");
    auto* cmd_op = app.add_subcommand("operator-probe", "operator property suites");
    auto* cmd_solve = app.add_subcommand("solve", "Dirichlet problem via convex minimization");
    auto* cmd_kir = app.add_subcommand("solve-kirchhoff", "Kirchhoff problem via descent");
    auto* cmd_props = app.add_subcommand("properties", "full cross-module invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        const vf::RunConfig cfg = load_config(args);
        if (cmd_vk->parsed()) return run_validate_kernel(cfg, args);
        if (cmd_ve->parsed()) return run_validate_exponent(cfg, args);
        if (cmd_dump->parsed()) return run_dump_grid(cfg, args);
        if (cmd_norm->parsed()) return run_norm(cfg, args, norm_space);
        if (cmd_semi->parsed()) return run_seminorm(cfg, args);
        if (cmd_cmp->parsed()) return run_compare_spaces(cfg, args);
        if (cmd_emb->parsed()) return run_embedding_scan(cfg, args);
        if (cmd_op->parsed()) return run_operator_probe(cfg, args);
        if (cmd_solve->parsed()) return run_solve(cfg, args);
        if (cmd_kir->parsed()) return run_solve_kirchhoff(cfg, args);
        if (cmd_props->parsed()) return run_properties(cfg, args);
        std::cerr << "no command\n";
        return 2;
    } catch (const vf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        write_error_report(args, "config", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        write_error_report(args, "validation", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        write_error_report(args, "numerical", e.what());
        return 3;
    }
}

// crossbar: command-line front end for the noisy crossbar VMM toolkit.
//
//   crossbar sweep    [--config f] [--set key=value]... [--trials N] [--seed S]
//   crossbar scaling  [--config f] [--set key=value]...
//   crossbar mc       [--config f] [--set key=value]... [--trials N] [--seed S]
//   crossbar gen      [--config f] [--set key=value]... [--seed S]
//   crossbar validate <matrix-file> [--set rho=..] [--set r_T=..]
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "crossbar/crossbar.hpp"
#include "crossbar/report_json.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::string format = "csv";
    std::vector<std::string> overrides;
    unsigned lanes = crossbar::default_lanes();
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "key=value configuration file");
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", o.seed, "master seed (overrides config)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials (overrides config)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--set", o.overrides, "override a config key, key=value");
    cmd->add_option("--lanes", o.lanes, "worker threads for Monte Carlo trials")
        ->check(CLI::PositiveNumber);
}

crossbar::ExperimentConfig load_config(const CommonOptions& o) {
    crossbar::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw crossbar::ParseError(0, "cannot open config '" + o.config_path + "'");
        cfg = crossbar::parse_config(in);
    }
    for (const auto& kv : o.overrides) crossbar::apply_override(cfg, kv);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.trials) cfg.trials = static_cast<crossbar::Index>(*o.trials);
    return cfg;
}

void emit(const CommonOptions& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw crossbar::ParseError(0, "cannot write '" + o.out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy memristor-crossbar VMM: baseline vs low-rank two-step scheme"};
    app.require_subcommand(1);

    CommonOptions sweep_opts, scaling_opts, mc_opts, gen_opts, validate_opts;
    auto* sweep = app.add_subcommand("sweep", "per-rank analytic + Monte Carlo error table");
    add_common(sweep, sweep_opts);
    auto* scaling = app.add_subcommand("scaling", "analytic error growth with n and fitted slope");
    add_common(scaling, scaling_opts);
    auto* mc = app.add_subcommand("mc", "single-configuration Monte Carlo vs closed form");
    add_common(mc, mc_opts);
    auto* gen = app.add_subcommand("gen", "write a harmonic test matrix");
    add_common(gen, gen_opts);
    auto* validate = app.add_subcommand("validate", "report dims, singular values, rank, magnitude");
    add_common(validate, validate_opts);
    std::string matrix_path;
    validate->add_option("matrix", matrix_path, "matrix text file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sweep) {
            const auto cfg = load_config(sweep_opts);
            const auto report = crossbar::run_sweep(cfg, sweep_opts.lanes);
            emit(sweep_opts, sweep_opts.format == "json" ? crossbar::render_sweep_json(report)
                                                         : crossbar::render_sweep_csv(report));
        } else if (*scaling) {
            const auto cfg = load_config(scaling_opts);
            const auto report = crossbar::run_scaling(cfg);
            emit(scaling_opts, scaling_opts.format == "json" ? crossbar::render_scaling_json(report)
                                                             : crossbar::render_scaling_csv(report));
        } else if (*mc) {
            const auto cfg = load_config(mc_opts);
            const auto report = crossbar::run_mc(cfg, mc_opts.lanes);
            emit(mc_opts, mc_opts.format == "json" ? crossbar::render_mc_json(report)
                                                   : crossbar::render_mc_csv(report));
            if (!report.pass()) {
                std::cerr << "mc: Monte Carlo disagrees with the closed form";
                if (!report.baseline_check.diagnostic.empty())
                    std::cerr << " (baseline: " << report.baseline_check.diagnostic << ")";
                if (!report.two_step_check.diagnostic.empty())
                    std::cerr << " (two_step: " << report.two_step_check.diagnostic << ")";
                std::cerr << '\n';
                return 1;
            }
        } else if (*gen) {
            const auto cfg = load_config(gen_opts);
            emit(gen_opts, crossbar::format_matrix(crossbar::run_gen(cfg)));
        } else if (*validate) {
            const auto cfg = load_config(validate_opts);
            std::ifstream in(matrix_path);
            if (!in) throw crossbar::ParseError(0, "cannot open matrix '" + matrix_path + "'");
            const auto A = crossbar::read_matrix(in);
            const auto report = crossbar::run_validate(A, cfg.device());
            emit(validate_opts, validate_opts.format == "json"
                                    ? crossbar::render_validation_json(report)
                                    : crossbar::render_validation_csv(report));
        }
    } catch (const crossbar::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

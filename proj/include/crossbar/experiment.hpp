#pragma once

// Experiment orchestration behind the command-line front end: config
// ingestion, rank sweeps, scaling studies, matrix generation/validation and
// single-configuration Monte Carlo checks, plus their CSV renderings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crossbar/analysis.hpp"
#include "crossbar/core_model.hpp"
#include "crossbar/lowrank.hpp"
#include "crossbar/matrix_io.hpp"
#include "crossbar/matrixgen.hpp"
#include "crossbar/montecarlo.hpp"
#include "crossbar/schemes.hpp"

namespace crossbar {

inline constexpr const char* kSweepSchemaLine = "# crossbar-lowrank sweep v1";
inline constexpr const char* kScalingSchemaLine = "# crossbar-lowrank scaling v1";

/// Flat key=value experiment description. Defaults reproduce the 100x100,
/// rank-16 harmonic comparison with all write-noise variances at 0.05.
struct ExperimentConfig {
    Index m = 100;
    Index n = 100;
    Index r = 16;
    std::optional<double> lambda = 10.0;  // nullopt: saturate the magnitude budget
    double sigma_e_sq = 0.05;
    double sigma_L_sq = 0.05;
    double sigma_R_sq = 0.05;
    double sigma_b_sq = 3.0;
    Index trials = 10000;
    std::uint64_t master_seed = 1;
    Distribution dist = Distribution::gaussian;
    Distribution input_dist = Distribution::gaussian;
    double rho = 1.0;
    double r_T = 1.0;
    std::vector<Index> k_range;  // empty: all of [1, r]

    // scaling study
    double alpha = 1.0;
    std::optional<double> beta;  // nullopt: optimal exponent for alpha
    double c1 = 0.5;
    double c2 = 1.0;
    std::vector<Index> n_grid{256, 512, 1024, 2048, 4096, 8192};

    // single-configuration Monte Carlo; 0 selects the optimizer
    Index k = 0;
    Index t_L = 0;
    Index t_R = 0;

    [[nodiscard]] NoiseSpec noise() const { return NoiseSpec{sigma_e_sq, sigma_L_sq, sigma_R_sq, dist}; }
    [[nodiscard]] DeviceParams device() const { return DeviceParams{r_T, rho}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double config_real(const std::string& v, std::size_t line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || !std::isfinite(x))
        throw ParseError(line, "expected a real number, got '" + v + "'");
    return x;
}

inline long long config_int(const std::string& v, std::size_t line) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos, 10);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ParseError(line, "expected an integer, got '" + v + "'");
    return x;
}

inline std::uint64_t config_u64(const std::string& v, std::size_t line) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        if (!v.empty() && v.front() == '-') throw std::invalid_argument("negative");
        x = std::stoull(v, &pos, 10);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an unsigned 64-bit integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ParseError(line, "expected an unsigned 64-bit integer, got '" + v + "'");
    return x;
}

inline std::vector<Index> config_int_list(const std::string& v, std::size_t line) {
    std::vector<Index> out;
    std::string tok;
    std::istringstream is(v);
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw ParseError(line, "empty entry in integer list '" + v + "'");
        out.push_back(static_cast<Index>(config_int(tok, line)));
    }
    if (out.empty()) throw ParseError(line, "empty integer list");
    return out;
}

}  // namespace detail

/// Applies one key=value pair. `line` is used for error reporting only.
inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                          std::size_t line = 0) {
    using namespace detail;
    const std::string v = trim(value);
    if (key == "m") cfg.m = config_int(v, line);
    else if (key == "n") cfg.n = config_int(v, line);
    else if (key == "r") cfg.r = config_int(v, line);
    else if (key == "lambda") cfg.lambda = v == "max" ? std::nullopt : std::optional(config_real(v, line));
    else if (key == "sigma_e_sq") cfg.sigma_e_sq = config_real(v, line);
    else if (key == "sigma_L_sq") cfg.sigma_L_sq = config_real(v, line);
    else if (key == "sigma_R_sq") cfg.sigma_R_sq = config_real(v, line);
    else if (key == "sigma_b_sq") cfg.sigma_b_sq = config_real(v, line);
    else if (key == "trials") cfg.trials = config_int(v, line);
    else if (key == "master_seed" || key == "seed") cfg.master_seed = config_u64(v, line);
    else if (key == "dist" || key == "input_dist") {
        Distribution d{};
        try {
            d = parse_distribution(v);
        } catch (const DomainError& e) {
            throw ParseError(line, e.what());
        }
        (key == "dist" ? cfg.dist : cfg.input_dist) = d;
    }
    else if (key == "rho") cfg.rho = config_real(v, line);
    else if (key == "r_T") cfg.r_T = config_real(v, line);
    else if (key == "k_range") cfg.k_range = v == "all" ? std::vector<Index>{} : config_int_list(v, line);
    else if (key == "alpha") cfg.alpha = config_real(v, line);
    else if (key == "beta") cfg.beta = v == "optimal" ? std::nullopt : std::optional(config_real(v, line));
    else if (key == "c1") cfg.c1 = config_real(v, line);
    else if (key == "c2") cfg.c2 = config_real(v, line);
    else if (key == "n_grid") cfg.n_grid = config_int_list(v, line);
    else if (key == "k") cfg.k = config_int(v, line);
    else if (key == "t_L") cfg.t_L = config_int(v, line);
    else if (key == "t_R") cfg.t_R = config_int(v, line);
    else throw ParseError(line, "unknown key '" + key + "'");
}

/// "key=value" as given on the command line.
inline void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ParseError(0, "expected key=value, got '" + assignment + "'");
    apply_setting(cfg, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

/// One pair per line, '#' starts a comment, blank lines ignored.
inline ExperimentConfig parse_config(std::istream& is, ExperimentConfig cfg = {}) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = detail::trim(raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
        apply_setting(cfg, detail::trim(line.substr(0, eq)), line.substr(eq + 1), line_no);
    }
    return cfg;
}

inline double resolve_lambda(const ExperimentConfig& cfg) {
    return cfg.lambda ? *cfg.lambda : lambda_max(cfg.m, cfg.n, cfg.device());
}

/// Shared fail-fast checks, run before any work starts.
inline void validate_common(const ExperimentConfig& cfg) {
    if (cfg.m < 1 || cfg.n < 1) throw DomainError("m and n must be positive");
    if (cfg.r < 1 || cfg.r > std::min(cfg.m, cfg.n))
        throw DomainError("r must satisfy 1 <= r <= min(m,n), got " + std::to_string(cfg.r));
    cfg.noise().validate();
    cfg.device().validate();
    detail::require(std::isfinite(cfg.sigma_b_sq) && cfg.sigma_b_sq > 0.0, "sigma_b_sq must be positive");
    if (cfg.lambda) detail::require(std::isfinite(*cfg.lambda) && *cfg.lambda > 0.0, "lambda must be positive");
    if (cfg.trials != 0 && cfg.trials < 2) throw DomainError("trials must be 0 (analytic only) or >= 2");
    if (cfg.trials < 0) throw DomainError("trials must be nonnegative");
}

inline std::vector<Index> resolve_k_range(const ExperimentConfig& cfg) {
    std::vector<Index> ks = cfg.k_range;
    if (ks.empty())
        for (Index k = 1; k <= cfg.r; ++k) ks.push_back(k);
    for (Index k : ks)
        if (k < 1 || k > cfg.r)
            throw DomainError("k_range entry " + std::to_string(k) + " outside [1, r=" +
                              std::to_string(cfg.r) + "]");
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

/// Harmonic test matrix shared by the sweep, mc and gen commands.
inline DenseMatrix experiment_matrix(const ExperimentConfig& cfg) {
    RandomStream rng = RandomStream::child(cfg.master_seed, 0, StreamRole::matrix);
    return harmonic_matrix(cfg.m, cfg.n, cfg.r, resolve_lambda(cfg), rng);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    Index k = 0;
    bool feasible = false;
    Index t_L = 0;
    Index t_R = 0;
    ErrorBreakdown analytic;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    double baseline_analytic = 0.0;
    double normalized = 0.0;
};

struct SweepReport {
    double lambda = 0.0;
    double baseline_analytic = 0.0;
    std::vector<SweepRow> rows;
    std::optional<std::size_t> argmin;  // index into rows
};

inline SweepReport run_sweep(const ExperimentConfig& cfg, unsigned lanes = 1) {
    validate_common(cfg);
    const std::vector<Index> ks = resolve_k_range(cfg);

    SweepReport report;
    report.lambda = resolve_lambda(cfg);
    report.baseline_analytic = baseline_error_analytic(cfg.m, cfg.n, cfg.sigma_e_sq, cfg.sigma_b_sq);
    const std::vector<double> singulars = harmonic_singulars(report.lambda, cfg.r);

    std::optional<DenseMatrix> A;
    std::optional<SvdResult> dec;
    if (cfg.trials > 0) {
        A = experiment_matrix(cfg);
        dec = svd(*A);
    }

    for (Index k : ks) {
        SweepRow row;
        row.k = k;
        row.baseline_analytic = report.baseline_analytic;
        row.feasible = budget_feasible(cfg.m, cfg.n, k, 1, 1);
        if (row.feasible) {
            const RepetitionChoice choice =
                optimize_repetitions(singulars, cfg.m, cfg.n, k, cfg.noise(), cfg.sigma_b_sq);
            row.t_L = choice.reps.left;
            row.t_R = choice.reps.right;
            row.analytic = choice.breakdown;
            row.normalized = row.analytic.total / row.baseline_analytic;
            if (cfg.trials > 0) {
                const LrFactors f = factor_lr(*dec, k);
                const SchemeConfig scheme(cfg.m, cfg.n, k, choice.reps, cfg.noise(), cfg.sigma_b_sq);
                const TrialBatchResult mc = run_two_step_trials(
                    f, *A, scheme, cfg.trials,
                    derive_seed(cfg.master_seed, static_cast<std::uint64_t>(k), StreamRole::sweep),
                    TrialOptions{lanes, cfg.input_dist});
                row.mc_mean = mc.mean_sq_error;
                row.mc_stderr = mc.std_error;
            }
        }
        report.rows.push_back(row);
    }

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& row = report.rows[i];
        if (!row.feasible) continue;
        if (!report.argmin || row.analytic.total < report.rows[*report.argmin].analytic.total)
            report.argmin = i;
    }
    return report;
}

namespace detail {

inline std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace detail

inline std::string render_sweep_csv(const SweepReport& report) {
    std::ostringstream os;
    os << kSweepSchemaLine << '\n';
    os << "k,feasible,t_L,t_R,analytic_total,analytic_truncation,analytic_stage1,"
          "analytic_stage2,analytic_accumulated,mc_mean,mc_stderr,baseline_analytic,normalized\n";
    for (const SweepRow& row : report.rows) {
        os << row.k << ',' << (row.feasible ? 1 : 0) << ',';
        if (row.feasible) {
            os << row.t_L << ',' << row.t_R << ',' << format_real(row.analytic.total) << ','
               << format_real(row.analytic.truncation) << ','
               << format_real(row.analytic.stage1_noise) << ','
               << format_real(row.analytic.stage2_noise) << ','
               << format_real(row.analytic.accumulated) << ',';
        } else {
            os << ",,,,,,,";
        }
        os << detail::opt_real(row.mc_mean) << ',' << detail::opt_real(row.mc_stderr) << ','
           << format_real(row.baseline_analytic) << ','
           << (row.feasible ? format_real(row.normalized) : "") << '\n';
    }
    if (report.argmin) {
        const SweepRow& best = report.rows[*report.argmin];
        os << "# argmin k=" << best.k << " t_L=" << best.t_L << " t_R=" << best.t_R
           << " analytic_total=" << format_real(best.analytic.total)
           << " normalized=" << format_real(best.normalized) << '\n';
    } else {
        os << "# argmin none (no feasible k)\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// log-log fit and scaling study

struct LogLogPoint {
    double x = 0.0;
    double y = 0.0;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of ln y on ln x.
inline LogLogFit fit_loglog_slope(std::span<const LogLogPoint> points) {
    if (points.size() < 2) throw DomainError("log-log fit needs at least two points");
    std::vector<double> lx, ly;
    for (const auto& p : points) {
        detail::require(std::isfinite(p.x) && p.x > 0.0 && std::isfinite(p.y) && p.y > 0.0,
                        "log-log fit needs positive finite coordinates");
        lx.push_back(std::log(p.x));
        ly.push_back(std::log(p.y));
    }
    const double count = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw DomainError("log-log fit needs at least two distinct x values");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double resid = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += resid * resid;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

struct ScalingRow {
    Index n = 0;
    Index r = 0;
    Index k = 0;
    Index t_L = 0;
    Index t_R = 0;
    double lambda = 0.0;
    ErrorBreakdown analytic;
    double baseline_analytic = 0.0;
    double normalized = 0.0;
    double asymptotic_bound = 0.0;
};

struct ScalingReport {
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> predicted_exponent;  // set when beta is the optimal one
    std::vector<ScalingRow> rows;
    LogLogFit proposed_fit;
    LogLogFit baseline_fit;
};

inline void validate_grid(const std::vector<Index>& grid) {
    if (grid.size() < 4) throw DomainError("scaling grid needs at least 4 points");
    for (Index n : grid)
        if (n < 2) throw DomainError("scaling grid entries must be >= 2");
    const double ratio = static_cast<double>(grid[1]) / static_cast<double>(grid[0]);
    if (!(ratio > 1.0)) throw DomainError("scaling grid must be strictly increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double q = static_cast<double>(grid[i]) / static_cast<double>(grid[i - 1]);
        if (std::abs(q - ratio) > 1e-9 * ratio)
            throw DomainError("scaling grid must be geometrically spaced");
    }
}

/// Analytic error growth with n for m = n, r = floor(c2 n^alpha),
/// k = max(1, floor(c1 r^beta)) and lambda saturating the magnitude budget.
inline ScalingReport run_scaling(const ExperimentConfig& cfg) {
    validate_grid(cfg.n_grid);
    cfg.noise().validate();
    cfg.device().validate();
    detail::require(std::isfinite(cfg.sigma_b_sq) && cfg.sigma_b_sq > 0.0, "sigma_b_sq must be positive");

    ScalingReport report;
    report.alpha = cfg.alpha;
    if (cfg.beta) {
        report.beta = *cfg.beta;
    } else {
        const OptimalBeta opt = optimal_beta(cfg.alpha);
        report.beta = opt.beta_star;
        report.predicted_exponent = opt.error_exponent;
    }
    AsymptoticParams params{cfg.alpha, report.beta, cfg.c1, cfg.c2, 1.0};
    params.validate();

    std::vector<LogLogPoint> proposed, baseline;
    for (Index n : cfg.n_grid) {
        ScalingRow row;
        row.n = n;
        const AsymptoticLayout layout = asymptotic_layout(n, cfg.alpha, report.beta, cfg.c1, cfg.c2);
        row.r = layout.r;
        row.k = layout.k;
        row.lambda = lambda_max(n, n, cfg.device());
        const auto singulars = harmonic_singulars(row.lambda, row.r);
        const RepetitionChoice choice =
            optimize_repetitions(singulars, n, n, row.k, cfg.noise(), cfg.sigma_b_sq);
        row.t_L = choice.reps.left;
        row.t_R = choice.reps.right;
        row.analytic = choice.breakdown;
        row.baseline_analytic = baseline_error_analytic(n, n, cfg.sigma_e_sq, cfg.sigma_b_sq);
        row.normalized = row.analytic.total / row.baseline_analytic;
        params.lambda = row.lambda;
        row.asymptotic_bound = asymptotic_bound(n, params, cfg.sigma_L_sq, cfg.sigma_R_sq, cfg.sigma_b_sq);
        proposed.push_back({static_cast<double>(n), row.analytic.total});
        baseline.push_back({static_cast<double>(n), row.baseline_analytic});
        report.rows.push_back(row);
    }
    report.proposed_fit = fit_loglog_slope(proposed);
    report.baseline_fit = fit_loglog_slope(baseline);
    return report;
}

inline std::string render_scaling_csv(const ScalingReport& report) {
    std::ostringstream os;
    os << kScalingSchemaLine << '\n';
    os << "# alpha=" << format_real(report.alpha) << " beta=" << format_real(report.beta);
    if (report.predicted_exponent) os << " predicted_exponent=" << format_real(*report.predicted_exponent);
    os << '\n';
    os << "n,r,k,t_L,t_R,lambda,analytic_total,analytic_truncation,analytic_stage1,"
          "analytic_stage2,analytic_accumulated,baseline_analytic,normalized,asymptotic_bound\n";
    for (const ScalingRow& row : report.rows) {
        os << row.n << ',' << row.r << ',' << row.k << ',' << row.t_L << ',' << row.t_R << ','
           << format_real(row.lambda) << ',' << format_real(row.analytic.total) << ','
           << format_real(row.analytic.truncation) << ',' << format_real(row.analytic.stage1_noise)
           << ',' << format_real(row.analytic.stage2_noise) << ','
           << format_real(row.analytic.accumulated) << ',' << format_real(row.baseline_analytic)
           << ',' << format_real(row.normalized) << ',' << format_real(row.asymptotic_bound) << '\n';
    }
    auto fit_line = [&](const char* name, const LogLogFit& f) {
        os << "# fit " << name << " slope=" << format_real(f.slope)
           << " intercept=" << format_real(f.intercept) << " r_squared=" << format_real(f.r_squared)
           << '\n';
    };
    fit_line("proposed", report.proposed_fit);
    fit_line("baseline", report.baseline_fit);
    return os.str();
}

// ---------------------------------------------------------------------------
// gen / validate

inline DenseMatrix run_gen(const ExperimentConfig& cfg) {
    validate_common(cfg);
    return experiment_matrix(cfg);
}

struct ValidationReport {
    Index rows = 0;
    Index cols = 0;
    std::vector<double> singulars;
    Index rank = 0;
    MagnitudeReport magnitude;
};

inline ValidationReport run_validate(const DenseMatrix& A, const DeviceParams& dev) {
    dev.validate();
    const SvdResult s = svd(A);
    return ValidationReport{A.rows(), A.cols(), s.singulars, s.rank, magnitude_check(A, dev)};
}

inline std::string render_validation_csv(const ValidationReport& v) {
    std::ostringstream os;
    os << "field,value\n";
    os << "rows," << v.rows << '\n';
    os << "cols," << v.cols << '\n';
    os << "rank," << v.rank << '\n';
    os << "magnitude_total," << format_real(v.magnitude.total) << '\n';
    os << "magnitude_budget," << format_real(v.magnitude.budget) << '\n';
    os << "magnitude_satisfied," << (v.magnitude.satisfied ? "true" : "false") << '\n';
    os << "singulars,";
    for (std::size_t i = 0; i < v.singulars.size(); ++i)
        os << (i ? ";" : "") << format_real(v.singulars[i]);
    os << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// mc: one configuration, both schemes, Monte Carlo against closed forms

struct McReport {
    Index k = 0;
    Repetitions reps;
    double lambda = 0.0;
    double baseline_analytic = 0.0;
    ErrorBreakdown two_step_analytic;
    TrialBatchResult baseline;
    TrialBatchResult two_step;
    Comparison baseline_check;
    Comparison two_step_check;

    [[nodiscard]] bool pass() const { return baseline_check.pass && two_step_check.pass; }
};

inline McReport run_mc(const ExperimentConfig& cfg, unsigned lanes = 1) {
    validate_common(cfg);
    if (cfg.trials < 2) throw DomainError("mc needs trials >= 2");
    if (cfg.k < 0 || cfg.k > cfg.r) throw DomainError("k must be 0 (auto) or lie in [1, r]");
    if ((cfg.t_L == 0) != (cfg.t_R == 0) || cfg.t_L < 0 || cfg.t_R < 0)
        throw DomainError("t_L and t_R must both be 0 (auto) or both >= 1");

    McReport report;
    report.lambda = resolve_lambda(cfg);
    const auto singulars = harmonic_singulars(report.lambda, cfg.r);
    const NoiseSpec noise = cfg.noise();

    if (cfg.k == 0) {
        const RankChoice best = optimize_rank(singulars, cfg.m, cfg.n, noise, cfg.sigma_b_sq, cfg.r);
        report.k = best.k;
        report.reps = best.reps;
    } else {
        report.k = cfg.k;
        report.reps = cfg.t_L == 0
                          ? optimize_repetitions(singulars, cfg.m, cfg.n, cfg.k, noise, cfg.sigma_b_sq).reps
                          : Repetitions{cfg.t_L, cfg.t_R};
    }
    const SchemeConfig scheme(cfg.m, cfg.n, report.k, report.reps, noise, cfg.sigma_b_sq);
    report.two_step_analytic = two_step_error_analytic(singulars, cfg.m, cfg.n, report.k, report.reps,
                                                       cfg.sigma_L_sq, cfg.sigma_R_sq, cfg.sigma_b_sq);
    report.baseline_analytic = baseline_error_analytic(cfg.m, cfg.n, cfg.sigma_e_sq, cfg.sigma_b_sq);

    const DenseMatrix A = experiment_matrix(cfg);
    const SvdResult dec = svd(A);
    const LrFactors f = factor_lr(dec, report.k);
    const TrialOptions opts{lanes, cfg.input_dist};
    report.baseline = run_baseline_trials(A, noise, cfg.sigma_b_sq, cfg.trials,
                                          derive_seed(cfg.master_seed, 0, StreamRole::sweep), opts);
    report.two_step = run_two_step_trials(f, A, scheme, cfg.trials,
                                          derive_seed(cfg.master_seed, 1, StreamRole::sweep), opts);
    report.baseline_check = compare(report.baseline, report.baseline_analytic);
    report.two_step_check = compare(report.two_step, report.two_step_analytic.total);
    return report;
}

inline std::string render_mc_csv(const McReport& r) {
    std::ostringstream os;
    os << "scheme,k,t_L,t_R,trials,master_seed,mc_mean,mc_stderr,analytic,z,pass\n";
    auto line = [&](const TrialBatchResult& b, double analytic, const Comparison& c, Index k,
                    Index tl, Index tr) {
        os << to_string(b.scheme) << ',' << k << ',' << tl << ',' << tr << ',' << b.trials << ','
           << b.master_seed << ',' << format_real(b.mean_sq_error) << ','
           << format_real(b.std_error) << ',' << format_real(analytic) << ',' << format_real(c.z)
           << ',' << (c.pass ? "true" : "false") << '\n';
    };
    line(r.baseline, r.baseline_analytic, r.baseline_check, 0, 0, 0);
    line(r.two_step, r.two_step_analytic.total, r.two_step_check, r.k, r.reps.left, r.reps.right);
    return os.str();
}

}  // namespace crossbar

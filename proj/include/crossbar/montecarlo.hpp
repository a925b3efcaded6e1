#pragma once

// Reproducible Monte Carlo estimation of expected computation errors.
//
// Trial t draws its input from child(master, t, input) and its noise from
// child(master, t, noise). Per-trial values land in a trial-indexed buffer
// and are reduced sequentially, so results do not depend on the lane count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "crossbar/analysis.hpp"
#include "crossbar/core_model.hpp"
#include "crossbar/lowrank.hpp"
#include "crossbar/schemes.hpp"

namespace crossbar {

enum class SchemeKind { baseline, two_step };

inline std::string_view to_string(SchemeKind s) {
    return s == SchemeKind::baseline ? "baseline" : "two_step";
}

struct TrialBatchResult {
    Index trials = 0;
    double mean_sq_error = 0.0;
    double std_error = 0.0;  // of the mean
    std::uint64_t master_seed = 0;
    SchemeKind scheme = SchemeKind::baseline;
};

struct TrialOptions {
    unsigned lanes = 1;
    Distribution input_dist = Distribution::gaussian;
};

inline unsigned default_lanes() {
    return std::max(1u, std::thread::hardware_concurrency());
}

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error of the mean, summed in index order.
inline MeanEstimate summarize(std::span<const double> values) {
    const auto count = values.size();
    if (count < 2) throw DomainError("at least two samples are needed for a standard error");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(count - 1);
    return MeanEstimate{mean, std::sqrt(variance / static_cast<double>(count))};
}

/// Evaluates fn(t) for t in [0, trials) on `lanes` threads into a
/// trial-indexed buffer. fn must only touch state it owns.
template <typename Fn>
void run_indexed(Index trials, unsigned lanes, Fn&& fn) {
    const auto total = static_cast<std::size_t>(trials);
    lanes = std::max(1u, std::min<unsigned>(lanes, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (lanes == 1) {
        for (std::size_t t = 0; t < total; ++t) fn(t);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(lanes);
    const std::size_t chunk = (total + lanes - 1) / lanes;
    for (unsigned lane = 0; lane < lanes; ++lane) {
        const std::size_t begin = lane * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([begin, end, &fn] {
            for (std::size_t t = begin; t < end; ++t) fn(t);
        });
    }
}

namespace detail {

inline void require_trials(Index trials) {
    if (trials < 2) throw DomainError("trials must be >= 2 for a standard error");
}

inline TrialBatchResult make_batch(std::span<const double> errors, std::uint64_t seed,
                                   SchemeKind scheme) {
    const MeanEstimate est = summarize(errors);
    return TrialBatchResult{static_cast<Index>(errors.size()), est.mean, est.std_error, seed,
                            scheme};
}

}  // namespace detail

/// Mean of ||b (A + E) - b A||^2 over fresh (b, E) per trial.
inline TrialBatchResult run_baseline_trials(const DenseMatrix& A, const NoiseSpec& noise,
                                            double sigma_b_sq, Index trials,
                                            std::uint64_t master_seed, TrialOptions opts = {}) {
    detail::require_trials(trials);
    noise.validate();
    detail::require(std::isfinite(sigma_b_sq) && sigma_b_sq > 0.0, "sigma_b_sq must be positive");

    std::vector<double> errors(static_cast<std::size_t>(trials));
    run_indexed(trials, opts.lanes, [&](std::size_t t) {
        RandomStream input_rng = RandomStream::child(master_seed, t, StreamRole::input);
        RandomStream noise_rng = RandomStream::child(master_seed, t, StreamRole::noise);
        const RowVector b = sample_input(A.rows(), sigma_b_sq, opts.input_dist, input_rng);
        const RowVector noisy = baseline_noisy_vmm(b, A, noise, noise_rng);
        const RowVector exact = vmm_exact(b, A);
        errors[t] = (noisy.values() - exact.values()).squaredNorm();
    });
    return detail::make_batch(errors, master_seed, SchemeKind::baseline);
}

namespace detail {

inline void check_two_step_inputs(const LrFactors& f, const DenseMatrix& A,
                                  const SchemeConfig& cfg) {
    if (A.rows() != cfg.m() || A.cols() != cfg.n())
        throw DimensionError("matrix " + shape_string(A.rows(), A.cols()) +
                             " does not match config " + shape_string(cfg.m(), cfg.n()));
    if (f.L.rows() != cfg.m() || f.L.cols() != cfg.k() || f.R.rows() != cfg.k() ||
        f.R.cols() != cfg.n())
        throw DimensionError("factors L " + shape_string(f.L.rows(), f.L.cols()) + ", R " +
                             shape_string(f.R.rows(), f.R.cols()) + " do not match config");
}

}  // namespace detail

/// Mean of ||c'' - b A||^2, always against the full matrix A.
inline TrialBatchResult run_two_step_trials(const LrFactors& f, const DenseMatrix& A,
                                            const SchemeConfig& cfg, Index trials,
                                            std::uint64_t master_seed, TrialOptions opts = {}) {
    detail::require_trials(trials);
    detail::check_two_step_inputs(f, A, cfg);

    std::vector<double> errors(static_cast<std::size_t>(trials));
    run_indexed(trials, opts.lanes, [&](std::size_t t) {
        RandomStream input_rng = RandomStream::child(master_seed, t, StreamRole::input);
        RandomStream noise_rng = RandomStream::child(master_seed, t, StreamRole::noise);
        const RowVector b = sample_input(cfg.m(), cfg.sigma_b_sq(), opts.input_dist, input_rng);
        const RowVector out = two_step_vmm(b, f, cfg.reps(), cfg.noise(), noise_rng);
        const RowVector exact = vmm_exact(b, A);
        errors[t] = (out.values() - exact.values()).squaredNorm();
    });
    return detail::make_batch(errors, master_seed, SchemeKind::two_step);
}

/// Per-component estimates of the two-step error. With
///   c1 = b (A_k - A), c2 = b Ebar_L R, c3 = b L Ebar_R, c4 = b Ebar_L Ebar_R
/// the output error is c1 + c2 + c3 + c4 and the cross terms vanish in mean.
struct ComponentBatchResult {
    Index trials = 0;
    MeanEstimate total;
    MeanEstimate truncation;
    MeanEstimate stage1_noise;
    MeanEstimate stage2_noise;
    MeanEstimate accumulated;
    MeanEstimate cross_stage;  // <c2, c3>
    double max_reconstruction_gap = 0.0;  // max |(c1+c2+c3+c4) - (c'' - c)|
};

inline ComponentBatchResult run_two_step_components(const LrFactors& f, const DenseMatrix& A,
                                                    const SchemeConfig& cfg, Index trials,
                                                    std::uint64_t master_seed,
                                                    TrialOptions opts = {}) {
    detail::require_trials(trials);
    detail::check_two_step_inputs(f, A, cfg);

    const RowMajorMatrix Ak = f.L.values() * f.R.values();
    const RowMajorMatrix residual = Ak - A.values();
    const auto count = static_cast<std::size_t>(trials);
    std::vector<double> total(count), c1(count), c2(count), c3(count), c4(count), cross(count),
        gap(count);

    run_indexed(trials, opts.lanes, [&](std::size_t t) {
        RandomStream input_rng = RandomStream::child(master_seed, t, StreamRole::input);
        RandomStream noise_rng = RandomStream::child(master_seed, t, StreamRole::noise);
        const RowVector b = sample_input(cfg.m(), cfg.sigma_b_sq(), opts.input_dist, input_rng);
        const TwoStepTrace tr = two_step_vmm_traced(b, f, cfg.reps(), cfg.noise(), noise_rng);
        const RowVectorXd& bv = b.values();
        const RowVectorXd e = tr.output.values() - bv * A.values();
        const RowVectorXd v1 = bv * residual;
        const RowVectorXd v2 = (bv * tr.mean_left_noise.values()) * f.R.values();
        const RowVectorXd v3 = (bv * f.L.values()) * tr.mean_right_noise.values();
        const RowVectorXd v4 = (bv * tr.mean_left_noise.values()) * tr.mean_right_noise.values();
        total[t] = e.squaredNorm();
        c1[t] = v1.squaredNorm();
        c2[t] = v2.squaredNorm();
        c3[t] = v3.squaredNorm();
        c4[t] = v4.squaredNorm();
        cross[t] = v2.dot(v3);
        gap[t] = (v1 + v2 + v3 + v4 - e).cwiseAbs().maxCoeff();
    });

    ComponentBatchResult out;
    out.trials = trials;
    out.total = summarize(total);
    out.truncation = summarize(c1);
    out.stage1_noise = summarize(c2);
    out.stage2_noise = summarize(c3);
    out.accumulated = summarize(c4);
    out.cross_stage = summarize(cross);
    out.max_reconstruction_gap = *std::max_element(gap.begin(), gap.end());
    return out;
}

struct Comparison {
    double z = 0.0;
    bool pass = false;
    std::string diagnostic;
};

inline constexpr double kZThreshold = 4.0;

/// z = (mean - analytic) / SE, passing when |z| <= 4. A zero standard error
/// only passes on an exact match.
inline Comparison compare(double mean, double std_error, double analytic) {
    Comparison c;
    if (std_error > 0.0) {
        c.z = (mean - analytic) / std_error;
        c.pass = std::abs(c.z) <= kZThreshold;
        if (!c.pass)
            c.diagnostic = "|z| = " + std::to_string(std::abs(c.z)) + " exceeds " +
                           std::to_string(kZThreshold);
        return c;
    }
    if (mean == analytic) {
        c.pass = true;
        return c;
    }
    c.z = mean > analytic ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    c.diagnostic = "zero standard error with discrepancy " + std::to_string(mean - analytic);
    return c;
}

inline Comparison compare(const TrialBatchResult& result, double analytic) {
    return compare(result.mean_sq_error, result.std_error, analytic);
}

inline Comparison compare(const MeanEstimate& est, double analytic) {
    return compare(est.mean, est.std_error, analytic);
}

}  // namespace crossbar

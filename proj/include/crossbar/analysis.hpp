#pragma once

// Closed-form expected errors, budget-constrained parameter search and the
// large-n bounds for harmonic singular-value profiles (sigma_i = lambda / i).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "crossbar/core_model.hpp"
#include "crossbar/lowrank.hpp"
#include "crossbar/schemes.hpp"

namespace crossbar {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// Additive parts of the two-step expected error. `total` is the plain sum.
struct ErrorBreakdown {
    double truncation = 0.0;
    double stage1_noise = 0.0;
    double stage2_noise = 0.0;
    double accumulated = 0.0;
    double total = 0.0;
};

struct AsymptoticParams {
    double alpha = 1.0;
    double beta = 0.5;
    double c1 = 0.5;
    double c2 = 1.0;
    double lambda = 1.0;

    void validate() const {
        auto unit = [](double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; };
        detail::require(unit(alpha), "alpha must lie in (0,1]");
        detail::require(unit(beta), "beta must lie in (0,1]");
        detail::require(unit(c1), "c1 must lie in (0,1]");
        detail::require(unit(c2), "c2 must lie in (0,1]");
        detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
    }
};

namespace detail {

inline void require_dims(Index m, Index n) {
    if (m < 1 || n < 1) throw DimensionError("m and n must be positive");
}

inline void require_variance(double v, const char* name) {
    require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be nonnegative");
}

}  // namespace detail

/// sigma_i = lambda / i for i = 1..r.
inline std::vector<double> harmonic_singulars(double lambda, Index r) {
    detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
    if (r < 1) throw DomainError("rank r must be >= 1");
    std::vector<double> s(static_cast<std::size_t>(r));
    for (Index i = 0; i < r; ++i) s[static_cast<std::size_t>(i)] = lambda / static_cast<double>(i + 1);
    return s;
}

/// E ||b E||^2 = m n sigma_e^2 sigma_b^2.
inline double baseline_error_analytic(Index m, Index n, double sigma_e_sq, double sigma_b_sq) {
    detail::require_dims(m, n);
    detail::require_variance(sigma_e_sq, "sigma_e_sq");
    detail::require_variance(sigma_b_sq, "sigma_b_sq");
    return static_cast<double>(m) * static_cast<double>(n) * sigma_e_sq * sigma_b_sq;
}

/// Expected squared error of the two-step scheme against the exact product:
///
///   sigma_b^2 [ sum_{i>k} s_i^2
///             + (m sL^2 / t_L + n sR^2 / t_R) sum_{i<=k} s_i
///             + m k n sL^2 sR^2 / (t_L t_R) ]
///
/// Singular values beyond the supplied list are taken as zero.
inline ErrorBreakdown two_step_error_analytic(std::span<const double> singulars, Index m, Index n,
                                              Index k, Repetitions reps, double sigma_L_sq,
                                              double sigma_R_sq, double sigma_b_sq) {
    detail::require_dims(m, n);
    if (k < 1 || k > std::min(m, n))
        throw DomainError("rank k must satisfy 1 <= k <= min(m,n), got " + std::to_string(k));
    if (reps.left < 1 || reps.right < 1) throw DomainError("repetition counts must be >= 1");
    detail::require_variance(sigma_L_sq, "sigma_L_sq");
    detail::require_variance(sigma_R_sq, "sigma_R_sq");
    detail::require_variance(sigma_b_sq, "sigma_b_sq");

    double trace_k = 0.0;
    const auto head = std::min(static_cast<std::size_t>(k), singulars.size());
    for (std::size_t i = 0; i < head; ++i) trace_k += singulars[i];

    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double tl = static_cast<double>(reps.left);
    const double tr = static_cast<double>(reps.right);

    ErrorBreakdown e;
    e.truncation = sigma_b_sq * tail_sum_sq(singulars, k);
    e.stage1_noise = sigma_b_sq * (md * sigma_L_sq / tl) * trace_k;
    e.stage2_noise = sigma_b_sq * (nd * sigma_R_sq / tr) * trace_k;
    e.accumulated = sigma_b_sq * md * kd * nd * sigma_L_sq * sigma_R_sq / (tl * tr);
    e.total = e.truncation + e.stage1_noise + e.stage2_noise + e.accumulated;
    return e;
}

struct RepetitionChoice {
    Repetitions reps;
    ErrorBreakdown breakdown;
};

struct RankChoice {
    Index k = 0;
    Repetitions reps;
    ErrorBreakdown breakdown;
};

/// Best integer (t_L, t_R) for a fixed rank under the memristor budget.
///
/// t_L is enumerated over its whole feasible range; for each t_L the
/// remaining budget goes to t_R, since the error only falls as t_R grows.
/// When the stage-2 terms vanish t_R no longer matters and 1 is kept.
/// Ties resolve towards the smaller t_L.
inline RepetitionChoice optimize_repetitions(std::span<const double> singulars, Index m, Index n,
                                             Index k, const NoiseSpec& noise, double sigma_b_sq) {
    detail::require_dims(m, n);
    if (k < 1 || k > std::min(m, n))
        throw DomainError("rank k must satisfy 1 <= k <= min(m,n), got " + std::to_string(k));
    if (!budget_feasible(m, n, k, 1, 1))
        throw InfeasibleError("rank " + std::to_string(k) + " infeasible: m*k + n*k = " +
                              std::to_string(m * k + n * k) + " > m*n = " + std::to_string(m * n));

    const std::int64_t area = static_cast<std::int64_t>(m) * n;
    const std::int64_t left_cost = static_cast<std::int64_t>(m) * k;
    const std::int64_t right_cost = static_cast<std::int64_t>(n) * k;
    const std::int64_t max_left = (area - right_cost) / left_cost;

    std::optional<RepetitionChoice> best;
    for (std::int64_t tl = 1; tl <= max_left; ++tl) {
        const auto tr_max = static_cast<Index>((area - tl * left_cost) / right_cost);
        Repetitions reps{static_cast<Index>(tl), 1};
        const ErrorBreakdown at_one = two_step_error_analytic(
            singulars, m, n, k, reps, noise.sigma_L_sq, noise.sigma_R_sq, sigma_b_sq);
        ErrorBreakdown e = at_one;
        if (at_one.stage2_noise + at_one.accumulated > 0.0) {
            reps.right = tr_max;
            e = two_step_error_analytic(singulars, m, n, k, reps, noise.sigma_L_sq,
                                        noise.sigma_R_sq, sigma_b_sq);
        }
        if (!best || e.total < best->breakdown.total) best = RepetitionChoice{reps, e};
    }
    return *best;
}

/// Exhaustive search over k in [1, k_max]; infeasible ranks are skipped and
/// ties resolve towards the smaller k.
inline RankChoice optimize_rank(std::span<const double> singulars, Index m, Index n,
                                const NoiseSpec& noise, double sigma_b_sq, Index k_max) {
    detail::require_dims(m, n);
    if (k_max < 1 || k_max > std::min(m, n))
        throw DomainError("k_max must satisfy 1 <= k_max <= min(m,n), got " +
                          std::to_string(k_max));
    std::optional<RankChoice> best;
    for (Index k = 1; k <= k_max; ++k) {
        if (!budget_feasible(m, n, k, 1, 1)) continue;
        const RepetitionChoice c = optimize_repetitions(singulars, m, n, k, noise, sigma_b_sq);
        if (!best || c.breakdown.total < best->breakdown.total)
            best = RankChoice{k, c.reps, c.breakdown};
    }
    if (!best) throw InfeasibleError("no rank in [1, k_max] fits the memristor budget");
    return *best;
}

/// An exact finite sum paired with its closed-form upper bound.
struct BoundPair {
    double exact = 0.0;
    std::optional<double> bound;
};

/// sum_{i<=k} lambda/i  and  lambda (ln k + gamma + 1/(2k)).
inline BoundPair harmonic_trace(double lambda, Index k) {
    detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
    if (k < 1) throw DomainError("harmonic_trace needs k >= 1");
    double exact = 0.0;
    for (Index i = k; i >= 1; --i) exact += 1.0 / static_cast<double>(i);
    const double kd = static_cast<double>(k);
    return BoundPair{lambda * exact, lambda * (std::log(kd) + kEulerGamma + 0.5 / kd)};
}

/// sum_{i=k+1}^{r} (lambda/i)^2  and  lambda^2 (1/k - 1/r); no bound for k = 0.
inline BoundPair tail_bound(double lambda, Index k, Index r) {
    detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
    if (k < 0 || r < 0) throw DomainError("tail_bound needs nonnegative k and r");
    if (k > r)
        throw DomainError("tail_bound needs k <= r, got k=" + std::to_string(k) +
                          " r=" + std::to_string(r));
    double exact = 0.0;
    for (Index i = r; i > k; --i) {
        const double inv = 1.0 / static_cast<double>(i);
        exact += inv * inv;
    }
    BoundPair out{lambda * lambda * exact, std::nullopt};
    if (k >= 1)
        out.bound = lambda * lambda * (1.0 / static_cast<double>(k) - 1.0 / static_cast<double>(r));
    return out;
}

/// Large-n upper bound on the two-step error for m = n, r = c2 n^alpha,
/// k = c1 r^beta (real-valued, no flooring), harmonic profile p.lambda.
inline double asymptotic_bound(Index n, const AsymptoticParams& p, double sigma_L_sq,
                               double sigma_R_sq, double sigma_b_sq) {
    if (n < 1) throw DimensionError("n must be positive");
    p.validate();
    detail::require_variance(sigma_L_sq, "sigma_L_sq");
    detail::require_variance(sigma_R_sq, "sigma_R_sq");
    detail::require_variance(sigma_b_sq, "sigma_b_sq");

    const double nd = static_cast<double>(n);
    const double ab = p.alpha * p.beta;
    const double k_real = p.c1 * std::pow(p.c2, p.beta) * std::pow(nd, ab);
    const double r_real = p.c2 * std::pow(nd, p.alpha);
    const double lam = p.lambda;

    const double truncation = lam * lam * (1.0 / k_real - 1.0 / r_real);
    const double stages = 4.0 * k_real * lam * (sigma_L_sq + sigma_R_sq) *
                          (ab * std::log(nd) + 1.0 / (2.0 * k_real) + kEulerGamma);
    const double accumulated = 4.0 * k_real * k_real * k_real * sigma_L_sq * sigma_R_sq;
    return sigma_b_sq * (truncation + stages + accumulated);
}

/// Integer layout implied by the asymptotic parameters at size n:
/// r = floor(c2 n^alpha), k = max(1, floor(c1 r^beta)).
struct AsymptoticLayout {
    Index r = 0;
    Index k = 0;
};

inline AsymptoticLayout asymptotic_layout(Index n, double alpha, double beta, double c1,
                                          double c2) {
    constexpr double slack = 1e-9;  // keeps exact powers such as 256^0.5 from flooring down
    const double nd = static_cast<double>(n);
    const Index r = std::max<Index>(1, static_cast<Index>(std::floor(c2 * std::pow(nd, alpha) + slack)));
    const Index k = std::max<Index>(
        1, static_cast<Index>(std::floor(c1 * std::pow(static_cast<double>(r), beta) + slack)));
    return AsymptoticLayout{std::min(r, n), std::min(k, std::min(r, n))};
}

/// Exact error at the integer layout, evaluated with t_L = t_R = floor(n/(2k)),
/// the repetition count that turns m sL^2/t_L into the 2k-scaled stage terms
/// and m k n/(t_L t_R) into the 4k^3 accumulated term of the bound.
struct BoundComparison {
    double bound = 0.0;
    AsymptoticLayout layout;
    Repetitions reps;
    ErrorBreakdown exact;
    bool dominates = false;
};

inline BoundComparison compare_asymptotic_bound(Index n, const AsymptoticParams& p,
                                                double sigma_L_sq, double sigma_R_sq,
                                                double sigma_b_sq) {
    BoundComparison out;
    out.bound = asymptotic_bound(n, p, sigma_L_sq, sigma_R_sq, sigma_b_sq);
    out.layout = asymptotic_layout(n, p.alpha, p.beta, p.c1, p.c2);
    const Index t = std::max<Index>(1, n / (2 * out.layout.k));
    out.reps = Repetitions{t, t};
    const auto s = harmonic_singulars(p.lambda, out.layout.r);
    out.exact = two_step_error_analytic(s, n, n, out.layout.k, out.reps, sigma_L_sq, sigma_R_sq,
                                        sigma_b_sq);
    out.dominates = out.bound >= out.exact.total;
    return out;
}

struct OptimalBeta {
    double beta_star = 0.0;
    double error_exponent = 0.0;
};

/// Rank exponent minimising the dominant growth term, and the resulting
/// error exponent: n^{2-alpha} below alpha = 1/2, n^{3/2} from there on.
inline OptimalBeta optimal_beta(double alpha) {
    detail::require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
                    "alpha must lie in (0,1]");
    return OptimalBeta{std::min(1.0, 1.0 / (2.0 * alpha)), alpha < 0.5 ? 2.0 - alpha : 1.5};
}

/// Largest harmonic scale lambda that keeps sum g^2 <= m n rho for any rank,
/// using sum 1/i^2 <= pi^2/6.
inline double lambda_max(Index m, Index n, const DeviceParams& dev) {
    detail::require_dims(m, n);
    dev.validate();
    return std::sqrt(6.0 * static_cast<double>(m) * static_cast<double>(n) * dev.rho) /
           (std::numbers::pi * dev.r_T);
}

}  // namespace crossbar

#pragma once

// The two noisy computation schemes.
//
// Baseline:  c' = b (A + E),  E_ij ~ (0, sigma_e^2)
// Two-step:  c_L = (1/t_L) sum_i b (L + E_L^(i))
//            c'' = (1/t_R) sum_j c_L (R + E_R^(j))
//
// Every invocation models a fresh device write, so each call samples new
// noise matrices from the supplied stream.

#include <cmath>
#include <cstdint>

#include "crossbar/core_model.hpp"
#include "crossbar/lowrank.hpp"

namespace crossbar {

struct NoiseSpec {
    double sigma_e_sq = 0.0;
    double sigma_L_sq = 0.0;
    double sigma_R_sq = 0.0;
    Distribution dist = Distribution::gaussian;

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
        detail::require(ok(sigma_e_sq), "sigma_e_sq must be nonnegative");
        detail::require(ok(sigma_L_sq), "sigma_L_sq must be nonnegative");
        detail::require(ok(sigma_R_sq), "sigma_R_sq must be nonnegative");
    }
};

struct Repetitions {
    Index left = 1;
    Index right = 1;

    friend bool operator==(const Repetitions&, const Repetitions&) = default;
};

/// t_L m k + t_R n k <= m n, evaluated in 64-bit integers.
inline bool budget_feasible(Index m, Index n, Index k, Index t_L, Index t_R) {
    const auto used = static_cast<std::int64_t>(t_L) * m * k + static_cast<std::int64_t>(t_R) * n * k;
    return used <= static_cast<std::int64_t>(m) * n;
}

/// Validated parameter set for one two-step execution.
class SchemeConfig {
public:
    SchemeConfig(Index m, Index n, Index k, Repetitions reps, NoiseSpec noise, double sigma_b_sq)
        : m_(m), n_(n), k_(k), reps_(reps), noise_(noise), sigma_b_sq_(sigma_b_sq) {
        if (m < 1 || n < 1) throw DimensionError("m and n must be positive");
        if (k < 1 || k > std::min(m, n))
            throw DomainError("rank k must satisfy 1 <= k <= min(m,n), got " + std::to_string(k));
        if (reps.left < 1 || reps.right < 1)
            throw DomainError("repetition counts must be >= 1");
        noise.validate();
        detail::require(std::isfinite(sigma_b_sq) && sigma_b_sq > 0.0,
                        "sigma_b_sq must be positive");
        if (!budget_feasible(m, n, k, reps.left, reps.right))
            throw InfeasibleError("memristor budget exceeded: t_L*m*k + t_R*n*k = " +
                                  std::to_string(reps.left * m * k + reps.right * n * k) +
                                  " > m*n = " + std::to_string(m * n));
    }

    [[nodiscard]] Index m() const noexcept { return m_; }
    [[nodiscard]] Index n() const noexcept { return n_; }
    [[nodiscard]] Index k() const noexcept { return k_; }
    [[nodiscard]] Repetitions reps() const noexcept { return reps_; }
    [[nodiscard]] const NoiseSpec& noise() const noexcept { return noise_; }
    [[nodiscard]] double sigma_b_sq() const noexcept { return sigma_b_sq_; }

private:
    Index m_;
    Index n_;
    Index k_;
    Repetitions reps_;
    NoiseSpec noise_;
    double sigma_b_sq_;
};

/// i.i.d. zero-mean noise. A zero variance returns zeros and leaves the
/// stream untouched.
inline DenseMatrix sample_noise(Index rows, Index cols, double sigma_sq, Distribution dist,
                                RandomStream& rng) {
    detail::require(std::isfinite(sigma_sq) && sigma_sq >= 0.0, "noise variance must be >= 0");
    if (rows < 1 || cols < 1) throw DimensionError("noise matrix must be at least 1x1");
    RowMajorMatrix E = RowMajorMatrix::Zero(rows, cols);
    if (sigma_sq > 0.0) detail::fill_random(E, sigma_sq, dist, rng);
    return DenseMatrix(std::move(E));
}

inline RowVector baseline_noisy_vmm(const RowVector& b, const DenseMatrix& A,
                                    const NoiseSpec& noise, RandomStream& rng) {
    if (b.size() != A.rows())
        throw DimensionError("baseline: input length " + std::to_string(b.size()) +
                             " does not match matrix " + detail::shape_string(A.rows(), A.cols()));
    noise.validate();
    const DenseMatrix E = sample_noise(A.rows(), A.cols(), noise.sigma_e_sq, noise.dist, rng);
    return RowVector::from(b.values() * (A.values() + E.values()));
}

/// Output of a two-step run together with the averaged noise realizations,
/// so callers can split the error into its additive parts.
struct TwoStepTrace {
    RowVector output;
    RowVector stage1_output;
    DenseMatrix mean_left_noise;   // m x k
    DenseMatrix mean_right_noise;  // k x n
};

inline TwoStepTrace two_step_vmm_traced(const RowVector& b, const LrFactors& f, Repetitions reps,
                                        const NoiseSpec& noise, RandomStream& rng) {
    const Index m = f.L.rows();
    const Index k = f.L.cols();
    const Index n = f.R.cols();
    if (b.size() != m)
        throw DimensionError("two-step: input length " + std::to_string(b.size()) +
                             " does not match L " + detail::shape_string(m, k));
    if (f.R.rows() != k)
        throw DimensionError("two-step: L " + detail::shape_string(m, k) + " and R " +
                             detail::shape_string(f.R.rows(), n) + " do not chain");
    if (reps.left < 1 || reps.right < 1) throw DomainError("repetition counts must be >= 1");
    noise.validate();

    const RowMajorMatrix& L = f.L.values();
    const RowMajorMatrix& R = f.R.values();

    // Stage 1: t_L independent m x k arrays, outputs averaged. Noise buffers
    // are filled in place in the same order sample_noise would draw them.
    RowMajorMatrix sum_left = RowMajorMatrix::Zero(m, k);
    RowMajorMatrix E_left = RowMajorMatrix::Zero(m, k);
    RowVectorXd stage1 = RowVectorXd::Zero(k);
    for (Index i = 0; i < reps.left; ++i) {
        if (noise.sigma_L_sq > 0.0) detail::fill_random(E_left, noise.sigma_L_sq, noise.dist, rng);
        stage1.noalias() += b.values() * (L + E_left);
        sum_left += E_left;
    }
    stage1 /= static_cast<double>(reps.left);

    // Stage 2: t_R independent k x n arrays fed with the averaged stage-1 output.
    RowMajorMatrix sum_right = RowMajorMatrix::Zero(k, n);
    RowMajorMatrix E_right = RowMajorMatrix::Zero(k, n);
    RowVectorXd out = RowVectorXd::Zero(n);
    for (Index j = 0; j < reps.right; ++j) {
        if (noise.sigma_R_sq > 0.0) detail::fill_random(E_right, noise.sigma_R_sq, noise.dist, rng);
        out.noalias() += stage1 * (R + E_right);
        sum_right += E_right;
    }
    out /= static_cast<double>(reps.right);

    return TwoStepTrace{RowVector(std::move(out)), RowVector(std::move(stage1)),
                        DenseMatrix(RowMajorMatrix(sum_left / static_cast<double>(reps.left))),
                        DenseMatrix(RowMajorMatrix(sum_right / static_cast<double>(reps.right)))};
}

inline RowVector two_step_vmm(const RowVector& b, const LrFactors& f, Repetitions reps,
                              const NoiseSpec& noise, RandomStream& rng) {
    return two_step_vmm_traced(b, f, reps, noise, rng).output;
}

}  // namespace crossbar

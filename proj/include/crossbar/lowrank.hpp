#pragma once

// Singular value decomposition, best rank-k approximation and the balanced
// two-factor split A_k = L R with L = U_k S_k^{1/2}, R = S_k^{1/2} V_k'.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "crossbar/dense.hpp"

namespace crossbar {

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Thin SVD: U is m x p, V is n x p, p = min(m, n), singulars descending.
/// Each column of U has its largest-magnitude entry positive; V follows.
struct SvdResult {
    DenseMatrix U;
    std::vector<double> singulars;
    DenseMatrix V;
    Index rank = 0;

    [[nodiscard]] Index rows() const noexcept { return U.rows(); }
    [[nodiscard]] Index cols() const noexcept { return V.rows(); }

    /// The nonzero singular values sigma_1..sigma_rank.
    [[nodiscard]] std::span<const double> nonzero_singulars() const noexcept {
        return std::span<const double>(singulars).first(static_cast<std::size_t>(rank));
    }
};

struct LrFactors {
    DenseMatrix L;  // m x k
    DenseMatrix R;  // k x n
    Index k = 0;
};

inline SvdResult svd(const DenseMatrix& A) {
    Eigen::MatrixXd a = A.values();
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw NumericalError("SVD failed to converge for " +
                             detail::shape_string(A.rows(), A.cols()) + " matrix");

    Eigen::MatrixXd U = dec.matrixU();
    Eigen::MatrixXd V = dec.matrixV();
    const Eigen::VectorXd& s = dec.singularValues();

    for (Index j = 0; j < U.cols(); ++j) {
        Index pivot = 0;
        U.col(j).cwiseAbs().maxCoeff(&pivot);
        if (U(pivot, j) < 0.0) {
            U.col(j) *= -1.0;
            V.col(j) *= -1.0;
        }
    }

    std::vector<double> singulars(s.data(), s.data() + s.size());
    const double threshold = singulars.empty() ? 0.0 : kRankTolerance * singulars.front();
    const auto rank = static_cast<Index>(std::count_if(
        singulars.begin(), singulars.end(), [&](double v) { return v > threshold; }));

    return SvdResult{DenseMatrix::from(U), std::move(singulars), DenseMatrix::from(V), rank};
}

/// Best Frobenius-norm rank-k approximation. k above the numerical rank is
/// clamped to it; k = 0 yields the zero matrix.
inline DenseMatrix truncate(const SvdResult& s, Index k) {
    const Index p = static_cast<Index>(s.singulars.size());
    if (k < 0) throw DomainError("truncation rank must be nonnegative");
    if (k > p)
        throw DomainError("truncation rank " + std::to_string(k) + " exceeds min(m,n) = " +
                          std::to_string(p));
    const Index kk = std::min(k, s.rank);
    if (kk == 0) return DenseMatrix(s.rows(), s.cols());
    const Eigen::Map<const Eigen::VectorXd> sigma(s.singulars.data(), kk);
    const RowMajorMatrix Ak = s.U.values().leftCols(kk) * sigma.asDiagonal() *
                              s.V.values().leftCols(kk).transpose();
    return DenseMatrix(Ak);
}

inline LrFactors factor_lr(const SvdResult& s, Index k) {
    if (k < 1 || k > s.rank)
        throw DomainError("factor rank must satisfy 1 <= k <= rank (" + std::to_string(s.rank) +
                          "), got " + std::to_string(k));
    Eigen::VectorXd root(k);
    for (Index i = 0; i < k; ++i) root(i) = std::sqrt(s.singulars[static_cast<std::size_t>(i)]);
    RowMajorMatrix L = s.U.values().leftCols(k) * root.asDiagonal();
    RowMajorMatrix R = root.asDiagonal() * s.V.values().leftCols(k).transpose();
    return LrFactors{DenseMatrix(std::move(L)), DenseMatrix(std::move(R)), k};
}

/// Sum of squared singular values past index k, restricted to the values given.
inline double tail_sum_sq(std::span<const double> singulars, Index k) {
    if (k < 0) throw DomainError("truncation rank must be nonnegative");
    const auto from = std::min(static_cast<std::size_t>(k), singulars.size());
    double acc = 0.0;
    for (std::size_t i = from; i < singulars.size(); ++i) acc += singulars[i] * singulars[i];
    return acc;
}

/// ||A - A_k||_F^2 = sum_{i=k+1}^{rank} sigma_i^2.
inline double truncation_error_sq(const SvdResult& s, Index k) {
    return tail_sum_sq(s.nonzero_singulars(), k);
}

}  // namespace crossbar

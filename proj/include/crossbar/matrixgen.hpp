#pragma once

// Test matrices with prescribed singular values, A = U_r diag(s) V_r',
// where U and V are Haar-random orthogonal matrices.

#include <Eigen/QR>

#include <cmath>
#include <vector>

#include "crossbar/analysis.hpp"
#include "crossbar/dense.hpp"
#include "crossbar/random.hpp"

namespace crossbar {

class SingularProfile {
public:
    enum class Kind { harmonic, explicit_values };

    static SingularProfile harmonic(double lambda, Index r) {
        detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
        if (r < 1) throw DomainError("profile rank must be >= 1");
        return SingularProfile(Kind::harmonic, lambda, r, {});
    }

    static SingularProfile explicit_values(std::vector<double> values) {
        if (values.empty()) throw DomainError("explicit profile needs at least one value");
        for (std::size_t i = 0; i < values.size(); ++i) {
            detail::require(std::isfinite(values[i]) && values[i] > 0.0,
                            "explicit singular values must be positive");
            if (i > 0 && values[i] > values[i - 1])
                throw DomainError("explicit singular values must be nonincreasing");
        }
        const auto r = static_cast<Index>(values.size());
        return SingularProfile(Kind::explicit_values, 0.0, r, std::move(values));
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] Index rank() const noexcept { return r_; }

    [[nodiscard]] std::vector<double> values() const {
        return kind_ == Kind::harmonic ? harmonic_singulars(lambda_, r_) : values_;
    }

private:
    SingularProfile(Kind kind, double lambda, Index r, std::vector<double> values)
        : kind_(kind), lambda_(lambda), r_(r), values_(std::move(values)) {}

    Kind kind_;
    double lambda_;
    Index r_;
    std::vector<double> values_;
};

/// Haar-distributed orthogonal matrix: Householder QR of an i.i.d. Gaussian
/// matrix with the sign of each diagonal entry of R folded into Q.
inline DenseMatrix random_orthogonal(Index dim, RandomStream& rng) {
    if (dim < 1) throw DimensionError("orthogonal dimension must be >= 1");
    Eigen::MatrixXd G(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) G(i, j) = rng.standard_normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd& R = qr.matrixQR();
    for (Index j = 0; j < dim; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    return DenseMatrix::from(Q);
}

inline DenseMatrix prescribed_matrix(Index m, Index n, const SingularProfile& profile,
                                     RandomStream& rng) {
    if (m < 1 || n < 1) throw DimensionError("m and n must be positive");
    const Index r = profile.rank();
    if (r > std::min(m, n))
        throw DomainError("profile rank " + std::to_string(r) + " exceeds min(m,n) = " +
                          std::to_string(std::min(m, n)));
    const std::vector<double> s = profile.values();
    const DenseMatrix U = random_orthogonal(m, rng);
    const DenseMatrix V = random_orthogonal(n, rng);
    const Eigen::Map<const Eigen::VectorXd> sigma(s.data(), r);
    RowMajorMatrix A = U.values().leftCols(r) * sigma.asDiagonal() * V.values().leftCols(r).transpose();
    return DenseMatrix(std::move(A));
}

/// Rank-r member of the harmonic class: sigma_i = lambda / i.
inline DenseMatrix harmonic_matrix(Index m, Index n, Index r, double lambda, RandomStream& rng) {
    return prescribed_matrix(m, n, SingularProfile::harmonic(lambda, r), rng);
}

}  // namespace crossbar

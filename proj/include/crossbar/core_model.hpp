#pragma once

// Ideal crossbar computation: c = b A, the coefficient-to-conductance map
// a = g / r_T, and the total squared-conductance budget sum g^2 <= m n rho.

#include <cmath>

#include "crossbar/dense.hpp"
#include "crossbar/random.hpp"

namespace crossbar {

/// Feedback resistance of the output transimpedance stage and per-cell
/// mean-square conductance budget.
struct DeviceParams {
    double r_T = 1.0;
    double rho = 1.0;

    void validate() const {
        detail::require(std::isfinite(r_T) && r_T > 0.0, "r_T must be positive");
        detail::require(std::isfinite(rho) && rho > 0.0, "rho must be positive");
    }
};

struct MagnitudeReport {
    bool satisfied = false;
    double total = 0.0;
    double budget = 0.0;
};

inline RowVector vmm_exact(const RowVector& b, const DenseMatrix& A) {
    if (b.size() != A.rows())
        throw DimensionError("vmm: input length " + std::to_string(b.size()) +
                             " does not match matrix " +
                             detail::shape_string(A.rows(), A.cols()));
    return RowVector::from(b.values() * A.values());
}

inline DenseMatrix conductance_map(const DenseMatrix& A, const DeviceParams& dev) {
    dev.validate();
    return DenseMatrix::from(dev.r_T * A.values());
}

inline MagnitudeReport magnitude_check(const DenseMatrix& A, const DeviceParams& dev) {
    const DenseMatrix G = conductance_map(A, dev);
    MagnitudeReport report;
    report.total = G.values().squaredNorm();
    report.budget = static_cast<double>(A.rows()) * static_cast<double>(A.cols()) * dev.rho;
    report.satisfied = report.total <= report.budget;
    return report;
}

/// Zero-mean i.i.d. input with per-entry variance sigma_b_sq.
inline RowVector sample_input(Index m, double sigma_b_sq, Distribution dist, RandomStream& rng) {
    if (m < 1) throw DimensionError("input length must be >= 1");
    detail::require(std::isfinite(sigma_b_sq) && sigma_b_sq > 0.0,
                    "input variance must be positive");
    RowVectorXd b(m);
    detail::fill_random(b, sigma_b_sq, dist, rng);
    return RowVector(std::move(b));
}

}  // namespace crossbar

#pragma once

// Dense row-major matrix and row-vector carriers shared by every module.

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "crossbar/errors.hpp"

namespace crossbar {

using Index = Eigen::Index;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVectorXd = Eigen::RowVectorXd;

namespace detail {

inline std::string shape_string(Index rows, Index cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace detail

/// Dense real matrix with at least one row and one column and finite entries.
class DenseMatrix {
public:
    DenseMatrix(Index rows, Index cols) : values_(checked_zero(rows, cols)) {}

    explicit DenseMatrix(RowMajorMatrix values) : values_(std::move(values)) {
        if (values_.rows() < 1 || values_.cols() < 1)
            throw DimensionError("matrix must be at least 1x1, got " +
                                 detail::shape_string(values_.rows(), values_.cols()));
        if (!values_.allFinite()) throw DomainError("matrix entries must be finite");
    }

    template <typename Derived>
    static DenseMatrix from(const Eigen::MatrixBase<Derived>& expr) {
        return DenseMatrix(RowMajorMatrix(expr));
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const auto m = static_cast<Index>(rows.size());
        const auto n = m == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
        RowMajorMatrix values(m, n);
        Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Index>(row.size()) != n) throw DimensionError("ragged row list");
            Index j = 0;
            for (double v : row) values(i, j++) = v;
            ++i;
        }
        return DenseMatrix(std::move(values));
    }

    static DenseMatrix identity(Index dim) {
        return DenseMatrix(RowMajorMatrix::Identity(dim, dim));
    }

    [[nodiscard]] Index rows() const noexcept { return values_.rows(); }
    [[nodiscard]] Index cols() const noexcept { return values_.cols(); }
    [[nodiscard]] double operator()(Index i, Index j) const { return values_(i, j); }
    [[nodiscard]] const RowMajorMatrix& values() const noexcept { return values_; }
    [[nodiscard]] double frobenius_norm() const { return values_.norm(); }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && a.values_ == b.values_;
    }

private:
    static RowMajorMatrix checked_zero(Index rows, Index cols) {
        if (rows < 1 || cols < 1)
            throw DimensionError("matrix must be at least 1x1, got " +
                                 detail::shape_string(rows, cols));
        return RowMajorMatrix::Zero(rows, cols);
    }

    RowMajorMatrix values_;
};

/// Finite real row vector of length >= 1.
class RowVector {
public:
    explicit RowVector(RowVectorXd values) : values_(std::move(values)) {
        if (values_.size() < 1) throw DimensionError("row vector must have length >= 1");
        if (!values_.allFinite()) throw DomainError("row vector entries must be finite");
    }

    RowVector(std::initializer_list<double> values)
        : RowVector(RowVectorXd(Eigen::Map<const RowVectorXd>(
              values.begin(), static_cast<Index>(values.size())))) {}

    template <typename Derived>
    static RowVector from(const Eigen::MatrixBase<Derived>& expr) {
        return RowVector(RowVectorXd(expr));
    }

    [[nodiscard]] Index size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](Index i) const { return values_(i); }
    [[nodiscard]] const RowVectorXd& values() const noexcept { return values_; }
    [[nodiscard]] double squared_norm() const { return values_.squaredNorm(); }

    friend bool operator==(const RowVector& a, const RowVector& b) {
        return a.size() == b.size() && a.values_ == b.values_;
    }

private:
    RowVectorXd values_;
};

/// Sampling law for inputs and write noise. Only the first two moments enter
/// the error formulas, so both laws are zero mean with the requested variance.
enum class Distribution { gaussian, uniform };

inline std::string_view to_string(Distribution d) {
    return d == Distribution::gaussian ? "gaussian" : "uniform";
}

inline Distribution parse_distribution(std::string_view name) {
    if (name == "gaussian" || name == "normal") return Distribution::gaussian;
    if (name == "uniform") return Distribution::uniform;
    throw DomainError("unknown distribution '" + std::string(name) + "'");
}

}  // namespace crossbar

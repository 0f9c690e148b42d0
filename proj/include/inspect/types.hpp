#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "inspect/error.hpp"

namespace inspect {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;
using Index = Eigen::Index;

/// p x n matrix of observations; row j is the series of coordinate j.
class ObservationMatrix {
public:
    ObservationMatrix() = default;

    /// Throws InvalidInput unless the matrix has at least one row, two columns and finite entries.
    explicit ObservationMatrix(Matrix values);

    Index p() const noexcept { return values_.rows(); }
    Index n() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }

private:
    Matrix values_;
};

/// p x (n-1) CUSUM contrasts of a p x n matrix.
class CusumMatrix {
public:
    CusumMatrix() = default;
    CusumMatrix(Matrix values, Index original_length);

    Index p() const noexcept { return values_.rows(); }
    Index n() const noexcept { return original_length_; }
    const Matrix& values() const noexcept { return values_; }

private:
    Matrix values_;
    Index original_length_ = 0;
};

/// Piecewise-constant mean signal with changepoints z_1 < ... < z_nu.
///
/// A changepoint z is the last time index (1-based) of its left segment, so the
/// mean at times z and z+1 differs.
struct PiecewiseMeanSpec {
    Index n = 0;
    Index p = 0;
    std::vector<Index> changepoints;
    /// nu + 1 vectors of length p.
    std::vector<Vector> segment_means;

    /// Checks ordering, ranges, sizes and that consecutive means differ.
    void validate() const;

    /// theta^(i) = mu^(i) - mu^(i-1), i = 1..nu.
    std::vector<Vector> changes() const;

    /// max_i ||theta^(i)||_0
    Index sparsity() const;
    /// n^{-1} min_i (z_{i+1} - z_i) with z_0 = 0, z_{nu+1} = n.
    double spacing() const;
    /// min_i ||theta^(i)||_2
    double magnitude() const;

    /// The p x n mean matrix.
    Matrix mean_matrix() const;
};

}  // namespace inspect

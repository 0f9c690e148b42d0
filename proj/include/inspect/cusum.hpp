#pragma once

#include "inspect/types.hpp"

namespace inspect {

/// CUSUM transformation of a p x n matrix (n >= 2).
///
/// Entry (j, t), t = 1..n-1, is sqrt(t(n-t)/n) times the difference between the
/// mean of X_{j,t+1..n} and the mean of X_{j,1..t}. Computed from row prefix sums
/// accumulated in long double, O(pn).
CusumMatrix cusum_transform(const ObservationMatrix& x);

/// Same transform on a raw block (e.g. a column window of a larger matrix).
Matrix cusum_transform(MatrixRef x);

/// Row prefix sums P(j, t) = sum_{r < t} X(j, r) with P(j, 0) = 0; p x (n+1).
///
/// Lets many column windows share one accumulation pass.
class PrefixSums {
public:
    explicit PrefixSums(MatrixRef x);

    Index p() const noexcept { return p_; }
    Index n() const noexcept { return n_; }

    /// CUSUM of the window of columns [start, end) (0-based, end - start >= 2).
    Matrix window_cusum(Index start, Index end) const;

private:
    Index p_ = 0;
    Index n_ = 0;
    std::vector<long double> sums_;  // row-major, p_ x (n_ + 1)
};

/// gamma with A = theta gamma^T for a single change at z (1 <= z <= n-1); length n-1.
Vector gamma_vector(Index n, Index z);

}  // namespace inspect

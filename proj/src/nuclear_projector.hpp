#pragma once

#include "inspect/sparse_projection.hpp"

namespace inspect::detail {

// Nuclear-ball projection for a sequence of slowly varying inputs (the ADMM iterates).
//
// The projection only needs the singular triplets above the simplex threshold, which
// for CUSUM inputs are few. After an exact SVD seeds a right subspace, later calls run
// a warm-started block subspace iteration and keep only the leading Ritz triplets.
// When the first Ritz value outside the support is not clearly below the threshold,
// the support is settled from the exact singular values (Gram eigenvalues, no
// vectors) and the block must reproduce them. A call falls back to the exact route
// when the block fails to converge or the leading values sum to at most one.
// Every reseed_every-th call is exact.
class NuclearProjector {
public:
    explicit NuclearProjector(int reseed_every = 64) : reseed_every_(reseed_every) {}

    Matrix project(const Matrix& m);

    int exact_calls() const noexcept { return exact_calls_; }
    int truncated_calls() const noexcept { return truncated_calls_; }

private:
    Matrix exact(const Matrix& m);
    bool truncated(const Matrix& m, Matrix& out);
    void store_basis(const Matrix& right, Index support);

    Matrix basis_;  // m x b right subspace
    int reseed_every_;
    int calls_ = 0;
    int exact_calls_ = 0;
    int truncated_calls_ = 0;
};

}  // namespace inspect::detail

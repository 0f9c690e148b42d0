#include "nuclear_projector.hpp"

#include <algorithm>
#include <cmath>

namespace inspect::detail {

namespace {

constexpr Index kExtraColumns = 4;
constexpr int kMaxSubspaceIterations = 40;
constexpr double kResidualTol = 1e-10;
constexpr double kThresholdMargin = 0.95;
// Agreement required between converged Ritz values and the exact spectrum.
constexpr double kSpectrumTol = 1e-8;
// Below this size the exact SVD is cheap enough.
constexpr Index kSmallDimension = 48;

Index support_size(const Vector& shrunk) {
    Index r = 0;
    while (r < shrunk.size() && shrunk(r) > 0.0) ++r;
    return r;
}

// All singular values, descending, from the eigenvalues of the smaller Gram matrix.
// Values far above sqrt(eps) * ||m|| (the only ones that matter here) are accurate.
Vector singular_values(const Matrix& m) {
    const bool tall = m.rows() >= m.cols();
    const Index d = tall ? m.cols() : m.rows();
    Matrix gram = Matrix::Zero(d, d);
    if (tall) gram.selfadjointView<Eigen::Lower>().rankUpdate(m.transpose());
    else gram.selfadjointView<Eigen::Lower>().rankUpdate(m);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw SolverError("eigenvalue solver failed in nuclear-ball projection");
    Vector values = eig.eigenvalues().reverse().cwiseMax(0.0).cwiseSqrt();
    return values;
}

// Deterministic filler columns for growing the block.
Matrix filler(Index rows, Index cols, Index offset) {
    Matrix f(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index i = 0; i < rows; ++i)
            f(i, c) = std::sin(0.7853981633974483 * static_cast<double>((i + 1) * (c + offset + 1)) + 0.5);
    return f;
}

}  // namespace

Matrix NuclearProjector::project(const Matrix& m) {
    ++calls_;
    const bool small = std::min(m.rows(), m.cols()) <= kSmallDimension;
    if (small || basis_.size() == 0 || basis_.rows() != m.cols() || calls_ % reseed_every_ == 0) return exact(m);
    Matrix out;
    if (truncated(m, out)) {
        ++truncated_calls_;
        return out;
    }
    return exact(m);
}

void NuclearProjector::store_basis(const Matrix& right, Index support) {
    const Index b = std::min<Index>(right.cols(), std::max<Index>(support, 1) + kExtraColumns);
    basis_ = right.leftCols(b);
}

Matrix NuclearProjector::exact(const Matrix& m) {
    ++exact_calls_;
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw SolverError("SVD failed to converge in nuclear-ball projection");
    const Vector& d = svd.singularValues();
    if (d.sum() <= 1.0) {
        store_basis(svd.matrixV(), 1);
        return m;
    }
    const Vector shrunk = project_simplex(d);
    const Index r = support_size(shrunk);
    store_basis(svd.matrixV(), r);
    return svd.matrixU().leftCols(r) * shrunk.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
}

bool NuclearProjector::truncated(const Matrix& m, Matrix& out) {
    const Index p = m.rows();
    const Index limit = std::min(p, m.cols());
    Matrix v = basis_;
    Matrix u_prev;
    Vector s_prev;
    Vector spectrum;  // exact singular values, computed only when the gap test is inconclusive
    Index need = 0;
    for (int it = 0; it < kMaxSubspaceIterations; ++it) {
        Matrix y = m * v;
        if (need > 0) {
            bool done = true;
            for (Index i = 0; i < need && done; ++i)
                done = (y.col(i) - s_prev(i) * u_prev.col(i)).norm() <= kResidualTol * std::max(1.0, s_prev(0));
            if (done) {
                if (spectrum.size() > 0 &&
                    (s_prev.head(need) - spectrum.head(need)).cwiseAbs().maxCoeff() > kSpectrumTol * spectrum(0))
                    return false;
                const Vector shrunk = project_simplex(s_prev);
                out = u_prev.leftCols(need) * shrunk.head(need).asDiagonal() * v.leftCols(need).transpose();
                basis_ = v;
                return true;
            }
        }
        const Index b = v.cols();
        Eigen::HouseholderQR<Matrix> qr(y);
        const Matrix q = qr.householderQ() * Matrix::Identity(p, b);
        const Matrix w = m.transpose() * q;
        Eigen::JacobiSVD<Matrix> small(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
        s_prev = small.singularValues();
        u_prev = q * small.matrixV();
        v = small.matrixU();
        if (s_prev.sum() <= 1.0) return false;

        Index r = support_size(project_simplex(s_prev));
        if (spectrum.size() > 0) {
            r = support_size(project_simplex(spectrum));
        } else if (r < b) {
            // Ritz values sit below the true ones; without a clear gap under the
            // threshold, settle the support from the exact spectrum instead.
            const Vector shrunk = project_simplex(s_prev);
            const double threshold = s_prev(0) - shrunk(0);
            if (s_prev(r) > kThresholdMargin * threshold) {
                spectrum = singular_values(m);
                if (spectrum.sum() <= 1.0) return false;
                r = support_size(project_simplex(spectrum));
            }
        }
        if (r + 1 > b) {
            if (b >= limit) return false;
            const Index grow = std::min<Index>(limit - b, std::max<Index>(kExtraColumns, r + 1 - b));
            Matrix wider(v.rows(), b + grow);
            wider << v, filler(v.rows(), grow, b);
            v = wider;
            need = 0;
            continue;
        }
        need = r;
    }
    return false;
}

}  // namespace inspect::detail

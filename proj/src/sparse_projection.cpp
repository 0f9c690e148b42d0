#include "inspect/sparse_projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Sparse>

#include "nuclear_projector.hpp"

namespace inspect {

std::string_view to_string(ConstraintSet set) {
    switch (set) {
        case ConstraintSet::nuclear_ball: return "nuclear_ball";
        case ConstraintSet::l2_ball: return "l2_ball";
        case ConstraintSet::brute_force_k_sparse: return "brute_force_k_sparse";
    }
    return "unknown";
}

ConstraintSet constraint_set_from_string(std::string_view name) {
    if (name == "admm" || name == "nuclear_ball" || name == "s1") return ConstraintSet::nuclear_ball;
    if (name == "soft" || name == "l2_ball" || name == "s2") return ConstraintSet::l2_ball;
    throw InvalidInput("unknown projection method '" + std::string(name) + "' (expected soft or admm)");
}

void SolverConfig::validate() const {
    if (lambda && (!(*lambda >= 0.0) || !std::isfinite(*lambda)))
        throw InvalidInput("lambda must be a finite non-negative number");
    if (!(primal_dual_tol > 0.0)) throw InvalidInput("primal_dual_tol must be positive");
    if (max_iterations < 1) throw InvalidInput("max_iterations must be positive");
    if (!(power_iteration_tol > 0.0)) throw InvalidInput("power_iteration_tol must be positive");
    if (power_iteration_max < 1) throw InvalidInput("power_iteration_max must be positive");
}

double SolverConfig::require_lambda() const {
    if (!lambda) throw InvalidInput("lambda is unset");
    return *lambda;
}

Matrix soft_threshold(MatrixRef m, double lambda) {
    if (lambda < 0.0) throw InvalidInput("soft_threshold needs lambda >= 0");
    return m.unaryExpr([lambda](double x) {
        const double mag = std::abs(x) - lambda;
        return mag > 0.0 ? std::copysign(mag, x) : 0.0;
    });
}

Vector project_simplex(VectorRef d) {
    const Index r = d.size();
    if (r == 0) throw InvalidInput("project_simplex needs a non-empty vector");
    std::vector<double> sorted(d.data(), d.data() + r);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // Largest j with sorted[j] - (sum_{i<=j} sorted[i] - 1)/(j+1) > 0 fixes the shift.
    double running = 0.0;
    double shift = 0.0;
    for (Index j = 0; j < r; ++j) {
        running += sorted[static_cast<std::size_t>(j)];
        const double candidate = (running - 1.0) / static_cast<double>(j + 1);
        if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) shift = candidate;
    }
    return (d.array() - shift).cwiseMax(0.0).matrix();
}

Matrix project_nuclear_ball(MatrixRef m) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw SolverError("SVD failed to converge in nuclear-ball projection");
    const Vector& d = svd.singularValues();
    if (d.sum() <= 1.0) return m;
    const Vector shrunk = project_simplex(d);
    Index rank = 0;
    while (rank < shrunk.size() && shrunk(rank) > 0.0) ++rank;
    return svd.matrixU().leftCols(rank) * shrunk.head(rank).asDiagonal() * svd.matrixV().leftCols(rank).transpose();
}

double penalised_objective(MatrixRef t, MatrixRef m, double lambda) {
    return t.cwiseProduct(m).sum() - lambda * m.cwiseAbs().sum();
}

void apply_sign_convention(Vector& v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

namespace {

// Below this fraction of non-zeros the matrix is iterated in compressed form.
constexpr double kSparseDensity = 0.25;

// Power iteration x <- M M^T x / ||M M^T x|| on the left singular space.
template <class Mat>
SingularVector power_iterate(const Mat& m, Vector x, double tol, int max_iter) {
    SingularVector out;
    x.normalize();
    out.converged = false;
    Vector right(m.cols());
    Vector next(x.size());
    int it = 0;
    for (; it < max_iter; ++it) {
        right.noalias() = m.transpose() * x;
        next.noalias() = m * right;
        const double norm = next.norm();
        if (norm == 0.0) break;
        next /= norm;
        const double change = (next - x).cwiseAbs().maxCoeff();
        x.swap(next);
        if (change <= tol) {
            out.converged = true;
            ++it;
            break;
        }
    }
    out.iterations = it;
    out.vector = std::move(x);
    return out;
}

}  // namespace

SingularVector leading_left_singular_vector(MatrixRef m, double tol, int max_iter) {
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0)
        throw InvalidInput("leading singular vector of a zero matrix is undefined");
    Vector start = m.rowwise().norm();
    if (start.norm() == 0.0) {
        start = Vector::Zero(m.rows());
        start(0) = 1.0;
    }
    const auto nonzeros = static_cast<double>((m.array() != 0.0).count());
    SingularVector out;
    if (nonzeros < kSparseDensity * static_cast<double>(m.size())) {
        const Eigen::SparseMatrix<double> sparse = m.sparseView();
        out = power_iterate(sparse, start, tol, max_iter);
    } else {
        out = power_iterate(m, start, tol, max_iter);
    }
    const double norm = out.vector.norm();
    if (norm == 0.0) throw SolverError("power iteration collapsed to the zero vector");
    out.vector /= norm;
    out.singular_value = (m.transpose() * out.vector).norm();
    apply_sign_convention(out.vector);
    return out;
}

SingularVector leading_left_singular_vector_sparse_rows(MatrixRef m, double tol, int max_iter) {
    std::vector<Index> rows;
    for (Index j = 0; j < m.rows(); ++j)
        if (m.row(j).cwiseAbs().maxCoeff() > 0.0) rows.push_back(j);
    if (rows.empty()) throw InvalidInput("leading singular vector of a zero matrix is undefined");
    if (static_cast<Index>(rows.size()) == m.rows()) return leading_left_singular_vector(m, tol, max_iter);
    Matrix sub(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) sub.row(static_cast<Index>(i)) = m.row(rows[i]);
    SingularVector reduced = leading_left_singular_vector(sub, tol, max_iter);
    SingularVector out = reduced;
    out.vector = Vector::Zero(m.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) out.vector(rows[i]) = reduced.vector(static_cast<Index>(i));
    apply_sign_convention(out.vector);
    return out;
}

ProjectionSolution admm_solve(MatrixRef t, const SolverConfig& cfg) {
    cfg.validate();
    const double lambda = cfg.require_lambda();
    if (!(lambda > 0.0)) throw InvalidInput("ADMM needs lambda > 0");
    const Index p = t.rows();
    const Index m = t.cols();
    Matrix y = Matrix::Zero(p, m);
    Matrix z = Matrix::Zero(p, m);
    Matrix r = Matrix::Zero(p, m);
    const double tol = cfg.primal_dual_tol * (1.0 + t.cwiseAbs().maxCoeff());

    detail::NuclearProjector projector;
    ProjectionSolution sol;
    sol.constraint_set = ConstraintSet::nuclear_ball;
    sol.converged = false;
    int it = 0;
    while (it < cfg.max_iterations) {
        ++it;
        y = projector.project(z - r + t);
        z = soft_threshold(y + r, lambda);
        r += y - z;
        if ((y - z).cwiseAbs().maxCoeff() <= tol) {
            sol.converged = true;
            break;
        }
    }
    sol.iterations = it;
    sol.objective = penalised_objective(t, y, lambda);
    sol.certificate = soft_threshold(t, lambda).norm();
    if (y.cwiseAbs().maxCoeff() > 0.0) {
        sol.v_hat = leading_left_singular_vector(y, cfg.power_iteration_tol, cfg.power_iteration_max).vector;
    } else {
        sol.v_hat = Vector::Zero(p);
    }
    sol.m_hat = std::move(y);
    return sol;
}

ProjectionSolution admm_solve(const CusumMatrix& t, const SolverConfig& cfg) {
    return admm_solve(MatrixRef(t.values()), cfg);
}

ProjectionSolution closed_form_s2(MatrixRef t, double lambda, const SolverConfig& cfg) {
    if (!(lambda >= 0.0)) throw InvalidInput("closed_form_s2 needs lambda >= 0");
    Matrix s = soft_threshold(t, lambda);
    const double norm = s.norm();
    if (norm == 0.0)
        throw ThresholdTooLarge("soft(T, lambda) is identically zero; lower lambda or treat as no signal");
    ProjectionSolution sol;
    sol.constraint_set = ConstraintSet::l2_ball;
    sol.certificate = norm;
    sol.v_hat = leading_left_singular_vector(s, cfg.power_iteration_tol, cfg.power_iteration_max).vector;
    s /= norm;
    sol.objective = penalised_objective(t, s, lambda);
    sol.m_hat = std::move(s);
    return sol;
}

ProjectionSolution closed_form_s2(const CusumMatrix& t, double lambda, const SolverConfig& cfg) {
    return closed_form_s2(MatrixRef(t.values()), lambda, cfg);
}

ProjectionSolution solve_projection(MatrixRef t, ConstraintSet set, const SolverConfig& cfg) {
    switch (set) {
        case ConstraintSet::nuclear_ball: return admm_solve(t, cfg);
        case ConstraintSet::l2_ball: return closed_form_s2(t, cfg.require_lambda(), cfg);
        case ConstraintSet::brute_force_k_sparse: break;
    }
    throw InvalidInput("solve_projection supports nuclear_ball and l2_ball only");
}

Vector brute_force_sparse_svd(MatrixRef t, Index k, double max_subsets) {
    const Index p = t.rows();
    if (k < 1 || k > p) throw InvalidInput("brute_force_sparse_svd needs 1 <= k <= p");
    double count = 1.0;
    for (Index i = 0; i < k; ++i) count = count * static_cast<double>(p - i) / static_cast<double>(i + 1);
    if (count > max_subsets)
        throw TooManySubsets("C(" + std::to_string(p) + ", " + std::to_string(k) + ") exceeds the enumeration guard");

    std::vector<Index> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), Index{0});
    double best_value = -1.0;
    Vector best = Vector::Zero(p);
    Matrix sub(k, t.cols());
    while (true) {
        for (Index i = 0; i < k; ++i) sub.row(i) = t.row(subset[static_cast<std::size_t>(i)]);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sub * sub.transpose());
        const double value = eig.eigenvalues()(k - 1);
        // Strict improvement beyond rounding keeps the lexicographically first subset on ties.
        if (value > best_value * (1.0 + 1e-12) + 1e-300) {
            best_value = value;
            best.setZero();
            const Vector local = eig.eigenvectors().col(k - 1);
            for (Index i = 0; i < k; ++i) best(subset[static_cast<std::size_t>(i)]) = local(i);
        }
        // Next k-subset in lexicographic order.
        Index i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == p - k + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    best.normalize();
    apply_sign_convention(best);
    return best;
}

}  // namespace inspect

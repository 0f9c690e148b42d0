#pragma once

#include <optional>
#include <string_view>

#include "inspect/types.hpp"

namespace inspect {

enum class ConstraintSet {
    nuclear_ball,          ///< {M : ||M||_* <= 1}, solved by ADMM
    l2_ball,               ///< {M : ||M||_2 <= 1}, closed form
    brute_force_k_sparse,  ///< exhaustive k-sparse singular vector
};

std::string_view to_string(ConstraintSet set);
/// Accepts "admm"/"nuclear_ball" and "soft"/"l2_ball".
ConstraintSet constraint_set_from_string(std::string_view name);

struct SolverConfig {
    /// Regularisation weight on the entrywise l1 norm; unset means "use the default rule".
    std::optional<double> lambda;
    /// ADMM stops once max|Y - Z| <= primal_dual_tol * (1 + ||T||_inf).
    double primal_dual_tol = 1e-4;
    int max_iterations = 10000;
    double power_iteration_tol = 1e-10;
    int power_iteration_max = 10000;

    void validate() const;
    /// lambda, or InvalidInput if it is unset.
    double require_lambda() const;
};

struct ProjectionSolution {
    Matrix m_hat;
    Vector v_hat;
    /// <T, M_hat> - lambda ||M_hat||_1
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
    ConstraintSet constraint_set = ConstraintSet::l2_ball;
    /// ||soft(T, lambda)||_2, an upper bound for the objective over either ball.
    double certificate = 0.0;
};

struct SingularVector {
    Vector vector;
    double singular_value = 0.0;
    int iterations = 0;
    bool converged = true;
};

/// Entrywise sgn(m) max(|m| - lambda, 0).
Matrix soft_threshold(MatrixRef m, double lambda);

/// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}.
Vector project_simplex(VectorRef d);

/// Frobenius projection onto the unit nuclear-norm ball via a full thin SVD.
///
/// Cost is O(pm min(p, m)); this is the reference route. ADMM uses a truncated
/// variant that computes only the singular triplets above the simplex threshold
/// and falls back to this function whenever it cannot certify its answer.
Matrix project_nuclear_ball(MatrixRef m);

/// <T, M> - lambda ||M||_1
double penalised_objective(MatrixRef t, MatrixRef m, double lambda);

/// ADMM for max_{||M||_* <= 1} <T, M> - lambda ||M||_1.
///
/// Runs the unit-step iteration Y <- P(Z - R + T), Z <- soft(Y + R, lambda),
/// R <- R + Y - Z from zero. A run that hits max_iterations is returned with
/// converged = false rather than thrown.
ProjectionSolution admm_solve(MatrixRef t, const SolverConfig& cfg);
ProjectionSolution admm_solve(const CusumMatrix& t, const SolverConfig& cfg);

/// soft(T, lambda) / ||soft(T, lambda)||_2, the unique maximiser over the l2 ball.
/// Throws ThresholdTooLarge when soft(T, lambda) vanishes.
ProjectionSolution closed_form_s2(MatrixRef t, double lambda, const SolverConfig& cfg = {});
ProjectionSolution closed_form_s2(const CusumMatrix& t, double lambda, const SolverConfig& cfg = {});

/// Dispatches on the constraint set (nuclear_ball or l2_ball).
ProjectionSolution solve_projection(MatrixRef t, ConstraintSet set, const SolverConfig& cfg);

/// Leading left singular vector by power iteration with M M^T applied as two products.
///
/// Mostly-zero inputs (such as soft-thresholded CUSUMs) are iterated in compressed
/// form. Starts from the row norms of M (e_1 if those vanish). The sign is fixed so that
/// the first non-negligible entry is positive. Throws InvalidInput for a zero matrix.
SingularVector leading_left_singular_vector(MatrixRef m, double tol = 1e-10, int max_iter = 10000);

/// Leading left singular vector of a matrix that is zero outside a few rows.
///
/// Runs the power iteration on the non-zero rows only and scatters the result.
SingularVector leading_left_singular_vector_sparse_rows(MatrixRef m, double tol = 1e-10, int max_iter = 10000);

/// Unit vector with at most k non-zero entries maximising ||T^T v||_2, found by
/// enumerating all k-subsets of rows. Ties go to the lexicographically smallest
/// subset. Throws TooManySubsets when C(p, k) > max_subsets.
Vector brute_force_sparse_svd(MatrixRef t, Index k, double max_subsets = 1e6);

/// Flips v so that its first entry with |v_i| > 1e-12 is positive.
void apply_sign_convention(Vector& v);

}  // namespace inspect

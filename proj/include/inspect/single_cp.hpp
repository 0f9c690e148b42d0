#pragma once

#include <string_view>
#include <vector>

#include "inspect/sparse_projection.hpp"
#include "inspect/types.hpp"

namespace inspect {

enum class SingleVariant { full, split };

std::string_view to_string(SingleVariant v);

/// Raised when no projection direction can be estimated (soft(T, lambda) == 0 or
/// the ADMM optimum is zero). Callers treat it as "no detectable change".
class NoDirection : public Error {
public:
    using Error::Error;
};

struct SingleDetection {
    /// 1-based estimated changepoint: last index of the left segment.
    Index z_hat = 0;
    /// |v_hat^T T_{z_hat}|
    double t_max = 0.0;
    Vector v_hat;
    Vector projected_cusum;
    SingleVariant variant = SingleVariant::full;
    int solver_iterations = 0;
    bool solver_converged = true;
};

/// Per-coordinate noise scale.
struct NoiseProfile {
    Vector sigma_hat;
};

/// Robust scale of each row: 1.05 * median(|D - median(D)|) for the first differences D.
///
/// The constant approximates 1.4826 / sqrt(2), so the estimate targets the
/// standard deviation of the row rather than of its differences. Needs n >= 3.
NoiseProfile estimate_noise_mad(const ObservationMatrix& x);

struct NormalizedData {
    ObservationMatrix data;
    /// Rows with sigma_hat == 0, left unscaled.
    std::vector<Index> passthrough_rows;
};

/// Divides each row by its scale estimate; zero-scale rows pass through unchanged.
NormalizedData normalize(const ObservationMatrix& x, const NoiseProfile& profile);

/// sqrt(log(p log n) / 2), the default on unit-scale data; 1e-6 when p log n <= 1.
double default_lambda(Index p, Index n);

/// Fills cfg.lambda with default_lambda(p, n) when unset.
SolverConfig resolve_lambda(SolverConfig cfg, Index p, Index n);

/// Position (0-based) and value of the largest |x_i|; the lowest index wins ties.
std::pair<Index, double> abs_argmax(VectorRef x);

/// Projection direction of a CUSUM matrix. Throws NoDirection if none exists.
ProjectionSolution estimate_direction(MatrixRef cusum, const SolverConfig& cfg, ConstraintSet method);

/// Single changepoint from an already computed CUSUM matrix (full-data variant).
SingleDetection inspect_single_cusum(MatrixRef cusum, const SolverConfig& cfg, ConstraintSet method);

/// Single changepoint on the full data: CUSUM, sparse direction, projected argmax.
SingleDetection inspect_single(const ObservationMatrix& x, const SolverConfig& cfg,
                               ConstraintSet method = ConstraintSet::l2_ball);

/// Odd-indexed and even-indexed columns (1-based) of x. An odd final column is dropped.
std::pair<Matrix, Matrix> split_columns(MatrixRef x);

/// Steps shared by the sample-splitting estimators: direction from the odd columns.
struct SplitDirection {
    Matrix first_half;    ///< odd columns X^(1)
    Matrix second_cusum;  ///< CUSUM of the even columns X^(2)
    ProjectionSolution direction;
};

SplitDirection split_direction(const ObservationMatrix& x, const SolverConfig& cfg, ConstraintSet method);

/// z_hat = 2 * argmax_t |direction^T second_cusum_t|.
SingleDetection locate_split(const Vector& direction, MatrixRef second_cusum);

/// Sample-splitting variant: direction from the odd columns, location from the even
/// ones. z_hat = 2 * argmax, always even. Needs n >= 4.
SingleDetection inspect_single_split(const ObservationMatrix& x, const SolverConfig& cfg,
                                     ConstraintSet method = ConstraintSet::l2_ball);

}  // namespace inspect

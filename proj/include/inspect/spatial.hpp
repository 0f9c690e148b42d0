#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "inspect/single_cp.hpp"
#include "inspect/types.hpp"

namespace inspect {

enum class DependenceKind { iid, local_ar, global_equi, temporal_ar };

std::string_view to_string(DependenceKind kind);
DependenceKind dependence_kind_from_string(std::string_view name);

/// Noise covariance family.
///
/// local_ar: Sigma_ij = rho^|i-j| with |rho| < 1.
/// global_equi: Sigma = I + (rho/p) 11^T with rho > -1.
/// temporal_ar: spatially iid rows that are AR(1) in time, |rho| < 1.
struct DependenceModel {
    DependenceKind kind = DependenceKind::iid;
    double rho = 0.0;
    double sigma2 = 1.0;

    void validate() const;
};

/// Exact inverse of (rho^|i-j|); tridiagonal. Needs |rho| < 1 and p >= 2.
Matrix precision_local(double rho, Index p);
/// (rho^|i-j|)
Matrix covariance_local(double rho, Index p);

/// Exact inverse of I + (rho/p) 11^T, namely I - rho / (p (1 + rho)) 11^T. Needs rho > -1.
Matrix precision_global(double rho, Index p);
/// I + (rho/p) 11^T
Matrix covariance_global(double rho, Index p);

/// Estimated precision matrix with a structured product.
struct PrecisionEstimate {
    DependenceKind kind = DependenceKind::iid;
    /// Estimate before clamping.
    double rho_hat = 0.0;
    /// Value used to build theta_hat.
    double rho_used = 0.0;
    Matrix theta_hat;
    Index sample_count = 0;
    std::vector<std::string> diagnostics;

    /// theta_hat * v in O(p) using the tridiagonal or rank-one structure.
    Vector apply(const Vector& v) const;
};

/// Clamp margin keeping the estimated precision finite.
inline constexpr double kRhoClamp = 1e-6;

/// Maximum likelihood rho of the local AR model from the columns of `samples` (p x m).
///
/// The score equation is rho^3 - a rho^2 + (b - 1) rho - a = 0 with a the mean of the
/// adjacent entries S_{j,j+1} and b = (2 tr S - S_11 - S_pp) / (p - 1) for
/// S = samples samples^T / m. Among the real roots in [-1, 1] the one with the largest
/// likelihood wins; with no root in range the nearer endpoint is used and noted.
PrecisionEstimate estimate_rho_local(MatrixRef samples);

/// Local-model likelihood coefficients (a, b) of the columns of `samples`.
std::pair<double, double> local_score_coefficients(MatrixRef samples);

/// Real roots of rho^3 - a rho^2 + (b - 1) rho - a in [-1, 1], ascending.
std::vector<double> local_score_roots(double a, double b);

/// Closed-form maximum likelihood rho = (1/p) sum_ij S_ij - 1 of the global model.
PrecisionEstimate estimate_rho_global(MatrixRef samples);

/// Disjoint scaled differences near both ends of x1 (p x n1).
///
/// With h = floor(n1 tau / 2) the columns are (X_{2t} - X_{2t-1}) / sqrt 2 and
/// (X_{n1-2t} - X_{n1-2t+1}) / sqrt 2 for t = 1..h (1-based), so m = 2h and each
/// column has covariance Sigma under constant mean.
Matrix build_residuals(MatrixRef x1, double tau_lb);

/// Precision estimate of the given kind from residual columns; iid gives the identity.
PrecisionEstimate estimate_precision(MatrixRef residuals, DependenceKind kind);

struct SpatialDetection {
    SingleDetection detection;
    /// Direction before precision weighting.
    Vector v_hat;
    PrecisionEstimate precision;
};

/// Sample-splitting detection with a precision-weighted projection direction.
///
/// Direction v_hat from the odd columns, v_proj = Theta_hat v_hat / ||Theta_hat v_hat||
/// with Theta_hat fitted on residuals of the odd columns, location 2 argmax over the
/// even columns. iid (and temporal_ar) use Theta_hat = I. A failed rho fit falls back
/// to the identity with a diagnostic.
SpatialDetection inspect_single_spatial(const ObservationMatrix& x, const SolverConfig& cfg, DependenceKind kind,
                                        double tau_lb, ConstraintSet method = ConstraintSet::l2_ball);

}  // namespace inspect

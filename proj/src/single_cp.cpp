#include "inspect/single_cp.hpp"

#include <algorithm>
#include <cmath>

#include "inspect/cusum.hpp"

namespace inspect {

std::string_view to_string(SingleVariant v) {
    return v == SingleVariant::full ? "full" : "split";
}

namespace {

double median_in_place(std::vector<double>& values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

NoiseProfile estimate_noise_mad(const ObservationMatrix& x) {
    if (x.n() < 3) throw InvalidInput("MAD noise estimation needs n >= 3");
    constexpr double kScale = 1.05;
    const Matrix& values = x.values();
    NoiseProfile profile;
    profile.sigma_hat.resize(x.p());
    std::vector<double> diffs(static_cast<std::size_t>(x.n() - 1));
    for (Index j = 0; j < x.p(); ++j) {
        for (Index t = 0; t + 1 < x.n(); ++t) diffs[static_cast<std::size_t>(t)] = values(j, t + 1) - values(j, t);
        const double centre = median_in_place(diffs);
        for (double& d : diffs) d = std::abs(d - centre);
        profile.sigma_hat(j) = kScale * median_in_place(diffs);
    }
    return profile;
}

NormalizedData normalize(const ObservationMatrix& x, const NoiseProfile& profile) {
    if (profile.sigma_hat.size() != x.p())
        throw InvalidInput("noise profile has " + std::to_string(profile.sigma_hat.size()) +
                           " entries but the data has " + std::to_string(x.p()) + " rows");
    Matrix scaled = x.values();
    std::vector<Index> passthrough;
    for (Index j = 0; j < x.p(); ++j) {
        const double s = profile.sigma_hat(j);
        if (s < 0.0 || !std::isfinite(s)) throw InvalidInput("noise profile entries must be finite and non-negative");
        if (s == 0.0) {
            passthrough.push_back(j);
            continue;
        }
        scaled.row(j) /= s;
    }
    return NormalizedData{ObservationMatrix(std::move(scaled)), std::move(passthrough)};
}

double default_lambda(Index p, Index n) {
    const double inner = static_cast<double>(p) * std::log(static_cast<double>(n));
    if (!(inner > 1.0)) return 1e-6;
    return std::sqrt(0.5 * std::log(inner));
}

SolverConfig resolve_lambda(SolverConfig cfg, Index p, Index n) {
    if (!cfg.lambda) cfg.lambda = default_lambda(p, n);
    return cfg;
}

std::pair<Index, double> abs_argmax(VectorRef x) {
    Index best = 0;
    double value = -1.0;
    for (Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x(i));
        if (a > value) {
            value = a;
            best = i;
        }
    }
    return {best, value};
}

ProjectionSolution estimate_direction(MatrixRef cusum, const SolverConfig& cfg, ConstraintSet method) {
    try {
        ProjectionSolution sol = solve_projection(cusum, method, cfg);
        if (sol.v_hat.size() == 0 || sol.v_hat.squaredNorm() == 0.0)
            throw NoDirection("the penalised optimum is zero; no projection direction");
        return sol;
    } catch (const ThresholdTooLarge& e) {
        throw NoDirection(e.what());
    }
}

SingleDetection inspect_single_cusum(MatrixRef cusum, const SolverConfig& cfg, ConstraintSet method) {
    ProjectionSolution sol = estimate_direction(cusum, cfg, method);
    SingleDetection det;
    det.variant = SingleVariant::full;
    det.projected_cusum = cusum.transpose() * sol.v_hat;
    const auto [idx, value] = abs_argmax(det.projected_cusum);
    det.z_hat = idx + 1;
    det.t_max = value;
    det.v_hat = std::move(sol.v_hat);
    det.solver_iterations = sol.iterations;
    det.solver_converged = sol.converged;
    return det;
}

SingleDetection inspect_single(const ObservationMatrix& x, const SolverConfig& cfg, ConstraintSet method) {
    const SolverConfig resolved = resolve_lambda(cfg, x.p(), x.n());
    resolved.validate();
    const Matrix t = cusum_transform(MatrixRef(x.values()));
    return inspect_single_cusum(t, resolved, method);
}

std::pair<Matrix, Matrix> split_columns(MatrixRef x) {
    const Index half = x.cols() / 2;
    Matrix odd(x.rows(), half);
    Matrix even(x.rows(), half);
    for (Index t = 0; t < half; ++t) {
        odd.col(t) = x.col(2 * t);
        even.col(t) = x.col(2 * t + 1);
    }
    return {std::move(odd), std::move(even)};
}

SplitDirection split_direction(const ObservationMatrix& x, const SolverConfig& cfg, ConstraintSet method) {
    if (x.n() < 4) throw InvalidInput("sample splitting needs n >= 4");
    auto [odd, even] = split_columns(x.values());
    const SolverConfig resolved = resolve_lambda(cfg, x.p(), x.n());
    resolved.validate();
    const Matrix first_cusum = cusum_transform(MatrixRef(odd));
    SplitDirection out;
    out.direction = estimate_direction(first_cusum, resolved, method);
    out.second_cusum = cusum_transform(MatrixRef(even));
    out.first_half = std::move(odd);
    return out;
}

SingleDetection locate_split(const Vector& direction, MatrixRef second_cusum) {
    SingleDetection det;
    det.variant = SingleVariant::split;
    det.projected_cusum = second_cusum.transpose() * direction;
    const auto [idx, value] = abs_argmax(det.projected_cusum);
    det.z_hat = 2 * (idx + 1);
    det.t_max = value;
    det.v_hat = direction;
    return det;
}

SingleDetection inspect_single_split(const ObservationMatrix& x, const SolverConfig& cfg, ConstraintSet method) {
    SplitDirection stage = split_direction(x, cfg, method);
    SingleDetection det = locate_split(stage.direction.v_hat, stage.second_cusum);
    det.solver_iterations = stage.direction.iterations;
    det.solver_converged = stage.direction.converged;
    return det;
}

}  // namespace inspect

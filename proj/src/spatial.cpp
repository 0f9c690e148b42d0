#include "inspect/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inspect/cusum.hpp"

namespace inspect {

std::string_view to_string(DependenceKind kind) {
    switch (kind) {
        case DependenceKind::iid: return "iid";
        case DependenceKind::local_ar: return "local";
        case DependenceKind::global_equi: return "global";
        case DependenceKind::temporal_ar: return "temporal";
    }
    return "unknown";
}

DependenceKind dependence_kind_from_string(std::string_view name) {
    if (name == "iid") return DependenceKind::iid;
    if (name == "local" || name == "local_ar") return DependenceKind::local_ar;
    if (name == "global" || name == "global_equi") return DependenceKind::global_equi;
    if (name == "temporal" || name == "temporal_ar") return DependenceKind::temporal_ar;
    throw InvalidInput("unknown dependence kind '" + std::string(name) + "' (expected iid, local, global or temporal)");
}

void DependenceModel::validate() const {
    if (!(sigma2 > 0.0)) throw InvalidInput("sigma2 must be positive");
    switch (kind) {
        case DependenceKind::local_ar:
        case DependenceKind::temporal_ar:
            if (!(std::abs(rho) < 1.0)) throw InvalidInput("rho must satisfy |rho| < 1");
            break;
        case DependenceKind::global_equi:
            if (!(rho > -1.0)) throw InvalidInput("rho must exceed -1");
            break;
        case DependenceKind::iid: break;
    }
}

Matrix precision_local(double rho, Index p) {
    if (!(std::abs(rho) < 1.0)) throw InvalidInput("precision_local needs |rho| < 1");
    if (p < 2) throw InvalidInput("precision_local needs p >= 2");
    const double scale = 1.0 / (1.0 - rho * rho);
    Matrix theta = Matrix::Zero(p, p);
    for (Index j = 0; j < p; ++j) {
        theta(j, j) = (1.0 + rho * rho) * scale;
        if (j + 1 < p) theta(j, j + 1) = theta(j + 1, j) = -rho * scale;
    }
    theta(0, 0) = theta(p - 1, p - 1) = scale;
    return theta;
}

Matrix covariance_local(double rho, Index p) {
    if (!(std::abs(rho) < 1.0)) throw InvalidInput("covariance_local needs |rho| < 1");
    Matrix sigma(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    return sigma;
}

Matrix precision_global(double rho, Index p) {
    if (!(rho > -1.0)) throw InvalidInput("precision_global needs rho > -1");
    if (p < 1) throw InvalidInput("precision_global needs p >= 1");
    const double c = rho / (static_cast<double>(p) * (1.0 + rho));
    return Matrix::Identity(p, p) - Matrix::Constant(p, p, c);
}

Matrix covariance_global(double rho, Index p) {
    if (!(rho > -1.0)) throw InvalidInput("covariance_global needs rho > -1");
    return Matrix::Identity(p, p) + Matrix::Constant(p, p, rho / static_cast<double>(p));
}

Vector PrecisionEstimate::apply(const Vector& v) const {
    const double r = rho_used;
    const Index p = v.size();
    switch (kind) {
        case DependenceKind::local_ar: {
            if (p < 2) return v;
            const double scale = 1.0 / (1.0 - r * r);
            Vector out(p);
            for (Index j = 0; j < p; ++j) {
                const bool edge = j == 0 || j == p - 1;
                double value = (edge ? 1.0 : 1.0 + r * r) * v(j);
                if (j > 0) value -= r * v(j - 1);
                if (j + 1 < p) value -= r * v(j + 1);
                out(j) = scale * value;
            }
            return out;
        }
        case DependenceKind::global_equi: {
            const double c = r / (static_cast<double>(p) * (1.0 + r));
            return v.array() - c * v.sum();
        }
        default: return v;
    }
}

namespace {

struct LocalMoments {
    double trace = 0.0;     // tr S
    double first = 0.0;     // S_11
    double last = 0.0;      // S_pp
    double adjacent = 0.0;  // sum_j S_{j,j+1}
    Index p = 0;
};

LocalMoments local_moments(MatrixRef w) {
    const Index p = w.rows();
    const auto m = static_cast<double>(w.cols());
    LocalMoments out;
    out.p = p;
    out.trace = w.squaredNorm() / m;
    out.first = w.row(0).squaredNorm() / m;
    out.last = w.row(p - 1).squaredNorm() / m;
    for (Index j = 0; j + 1 < p; ++j) out.adjacent += w.row(j).dot(w.row(j + 1)) / m;
    return out;
}

// Profile log-likelihood of the local model per sample, up to constants.
double local_loglik(const LocalMoments& s, double rho) {
    const double one_minus = 1.0 - rho * rho;
    const double quad = s.trace + rho * rho * (s.trace - s.first - s.last) - 2.0 * rho * s.adjacent;
    return -0.5 * (static_cast<double>(s.p - 1) * std::log(one_minus) + quad / one_minus);
}

double cubic(double a, double b, double r) { return ((r - a) * r + (b - 1.0)) * r - a; }

void check_samples(MatrixRef samples) {
    if (samples.cols() < 1) throw InvalidInput("need at least one sample");
    if (!samples.allFinite()) throw InvalidInput("samples must be finite");
}

}  // namespace

std::pair<double, double> local_score_coefficients(MatrixRef samples) {
    check_samples(samples);
    if (samples.rows() < 2) throw InvalidInput("the local model needs p >= 2");
    const LocalMoments s = local_moments(samples);
    const auto pm1 = static_cast<double>(s.p - 1);
    return {s.adjacent / pm1, (2.0 * s.trace - s.first - s.last) / pm1};
}

std::vector<double> local_score_roots(double a, double b) {
    // Split [-1, 1] at the critical points so each piece is monotone, then bisect.
    std::vector<double> knots{-1.0, 1.0};
    const double disc = 4.0 * a * a - 12.0 * (b - 1.0);
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        for (double c : {(2.0 * a - root) / 6.0, (2.0 * a + root) / 6.0})
            if (c > -1.0 && c < 1.0) knots.push_back(c);
    }
    std::sort(knots.begin(), knots.end());
    std::vector<double> roots;
    auto add = [&roots](double r) {
        if (roots.empty() || std::abs(roots.back() - r) > 1e-12) roots.push_back(r);
    };
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        double flo = cubic(a, b, lo), fhi = cubic(a, b, hi);
        if (flo == 0.0) add(lo);
        if (fhi == 0.0) {
            add(hi);
            continue;
        }
        if ((flo < 0.0) == (fhi < 0.0) || flo == 0.0) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = cubic(a, b, mid);
            if (fmid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fmid < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        add(0.5 * (lo + hi));
    }
    return roots;
}

PrecisionEstimate estimate_rho_local(MatrixRef samples) {
    const auto [a, b] = local_score_coefficients(samples);
    const LocalMoments s = local_moments(samples);
    PrecisionEstimate est;
    est.kind = DependenceKind::local_ar;
    est.sample_count = samples.cols();
    const std::vector<double> roots = local_score_roots(a, b);
    if (roots.empty()) {
        est.rho_hat = cubic(a, b, 1.0) < 0.0 ? 1.0 : -1.0;
        est.diagnostics.push_back("local rho score has no root in [-1, 1]; using the nearer endpoint");
    } else {
        double best = -std::numeric_limits<double>::infinity();
        for (double r : roots) {
            const double ll = local_loglik(s, std::clamp(r, -1.0 + kRhoClamp, 1.0 - kRhoClamp));
            if (ll > best) {
                best = ll;
                est.rho_hat = r;
            }
        }
    }
    est.rho_used = std::clamp(est.rho_hat, -1.0 + kRhoClamp, 1.0 - kRhoClamp);
    if (est.rho_used != est.rho_hat) est.diagnostics.push_back("local rho estimate clamped into (-1, 1)");
    est.theta_hat = precision_local(est.rho_used, samples.rows());
    return est;
}

PrecisionEstimate estimate_rho_global(MatrixRef samples) {
    check_samples(samples);
    const auto p = static_cast<double>(samples.rows());
    const Vector sums = samples.colwise().sum().transpose();
    PrecisionEstimate est;
    est.kind = DependenceKind::global_equi;
    est.sample_count = samples.cols();
    est.rho_hat = sums.squaredNorm() / (p * static_cast<double>(samples.cols())) - 1.0;
    est.rho_used = std::max(est.rho_hat, -1.0 + kRhoClamp);
    if (est.rho_used != est.rho_hat) est.diagnostics.push_back("global rho estimate clamped above -1");
    est.theta_hat = precision_global(est.rho_used, samples.rows());
    return est;
}

Matrix build_residuals(MatrixRef x1, double tau_lb) {
    if (!(tau_lb > 0.0 && tau_lb < 1.0)) throw InvalidInput("tau lower bound must lie in (0, 1)");
    const Index n1 = x1.cols();
    const auto h = static_cast<Index>(std::floor(static_cast<double>(n1) * tau_lb / 2.0));
    if (h < 1) throw InvalidInput("n1 * tau is below 2; no residual pairs fit");
    if (4 * h + 1 > n1) throw InvalidInput("too few columns for disjoint residual pairs at both ends");
    const double scale = 1.0 / std::sqrt(2.0);
    Matrix out(x1.rows(), 2 * h);
    for (Index t = 1; t <= h; ++t) {
        out.col(t - 1) = scale * (x1.col(2 * t - 1) - x1.col(2 * t - 2));
        out.col(h + t - 1) = scale * (x1.col(n1 - 2 * t - 1) - x1.col(n1 - 2 * t));
    }
    return out;
}

PrecisionEstimate estimate_precision(MatrixRef residuals, DependenceKind kind) {
    switch (kind) {
        case DependenceKind::local_ar: return estimate_rho_local(residuals);
        case DependenceKind::global_equi: return estimate_rho_global(residuals);
        default: break;
    }
    PrecisionEstimate est;
    est.kind = kind;
    est.sample_count = residuals.cols();
    est.theta_hat = Matrix::Identity(residuals.rows(), residuals.rows());
    return est;
}

SpatialDetection inspect_single_spatial(const ObservationMatrix& x, const SolverConfig& cfg, DependenceKind kind,
                                        double tau_lb, ConstraintSet method) {
    SplitDirection stage = split_direction(x, cfg, method);
    SpatialDetection out;
    out.v_hat = stage.direction.v_hat;
    if (kind == DependenceKind::local_ar || kind == DependenceKind::global_equi) {
        const Matrix residuals = build_residuals(stage.first_half, tau_lb);
        try {
            if (kind == DependenceKind::local_ar && residuals.rows() < 2)
                throw InvalidInput("the local model needs p >= 2");
            out.precision = estimate_precision(residuals, kind);
        } catch (const InvalidInput& e) {
            out.precision = estimate_precision(residuals, DependenceKind::iid);
            out.precision.diagnostics.push_back(std::string("rho estimation failed, using the identity: ") + e.what());
        }
    } else {
        out.precision.kind = kind;
        out.precision.theta_hat = Matrix::Identity(x.p(), x.p());
    }
    Vector weighted = out.precision.apply(out.v_hat);
    const double norm = weighted.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        out.precision.diagnostics.push_back("weighted direction vanished; using the unweighted one");
        weighted = out.v_hat;
    } else {
        weighted /= norm;
    }
    out.detection = locate_split(weighted, stage.second_cusum);
    out.detection.solver_iterations = stage.direction.iterations;
    out.detection.solver_converged = stage.direction.converged;
    return out;
}

}  // namespace inspect

#include "inspect/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inspect/rng.hpp"

namespace inspect {

namespace {

// Substream tags.
constexpr std::uint64_t kNoiseRows = 0x6e6f697365ULL;
constexpr std::uint64_t kCommonFactor = 0x636f6d6dULL;
constexpr std::uint64_t kAsyncShift = 0x6173796eULL;

Matrix standard_rows(Index p, Index n, std::uint64_t seed, NoiseKind kind) {
    Matrix e(p, n);
    const double half_width = std::sqrt(3.0);
    for (Index j = 0; j < p; ++j) {
        RandomStream rng(derive_seed(seed, kNoiseRows, static_cast<std::uint64_t>(j)));
        for (Index t = 0; t < n; ++t) {
            switch (kind) {
                case NoiseKind::unif: e(j, t) = half_width * (2.0 * rng.uniform() - 1.0); break;
                case NoiseKind::exp: e(j, t) = rng.exponential() - 1.0; break;
                default: e(j, t) = rng.normal(); break;
            }
        }
    }
    return e;
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::unif: return "unif";
        case NoiseKind::exp: return "exp";
        case NoiseKind::cs_local: return "cs_local";
        case NoiseKind::cs_global: return "cs_global";
        case NoiseKind::temporal: return "temporal";
        case NoiseKind::async: return "async";
    }
    return "unknown";
}

NoiseKind noise_kind_from_string(std::string_view name) {
    for (NoiseKind k : {NoiseKind::gaussian, NoiseKind::unif, NoiseKind::exp, NoiseKind::cs_local,
                        NoiseKind::cs_global, NoiseKind::temporal, NoiseKind::async})
        if (to_string(k) == name) return k;
    throw InvalidInput("unknown noise model '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw InvalidInput("noise variance must be finite and >= 0");
    switch (kind) {
        case NoiseKind::cs_local:
            if (!(std::abs(parameter) < 1.0)) throw InvalidInput("cs_local needs |rho| < 1");
            break;
        case NoiseKind::cs_global:
            if (!(parameter >= 0.0 && parameter <= 1.0)) throw InvalidInput("cs_global needs 0 <= rho <= 1");
            break;
        case NoiseKind::temporal:
            if (!(parameter >= 0.0 && parameter < 1.0)) throw InvalidInput("temporal needs 0 <= rho < 1");
            break;
        case NoiseKind::async:
            if (!(parameter >= 0.0) || parameter != std::floor(parameter))
                throw InvalidInput("async needs a non-negative integer shift bound L");
            break;
        default: break;
    }
}

Matrix generate_noise(Index p, Index n, const NoiseModel& noise, std::uint64_t seed) {
    noise.validate();
    if (p < 1 || n < 1) throw InvalidInput("noise dimensions must be positive");
    Matrix w = standard_rows(p, n, seed, noise.kind);
    const double rho = noise.parameter;
    switch (noise.kind) {
        case NoiseKind::cs_local: {
            // AR(1) across coordinates reproduces Sigma_ij = rho^|i-j| exactly.
            const double innovation = std::sqrt(1.0 - rho * rho);
            for (Index j = 1; j < p; ++j) w.row(j) = rho * w.row(j - 1) + innovation * w.row(j);
            break;
        }
        case NoiseKind::cs_global: {
            RandomStream rng(derive_seed(seed, kCommonFactor));
            Eigen::RowVectorXd common(n);
            for (Index t = 0; t < n; ++t) common(t) = rng.normal();
            w *= std::sqrt(1.0 - rho);
            w.rowwise() += std::sqrt(rho / static_cast<double>(p)) * common;
            break;
        }
        case NoiseKind::temporal: {
            // Stationary start keeps every entry marginally N(0, 1).
            const double a = std::sqrt(rho);
            const double b = std::sqrt(1.0 - rho);
            for (Index t = 1; t < n; ++t) w.col(t) = a * w.col(t - 1) + b * w.col(t);
            break;
        }
        default: break;
    }
    return w * std::sqrt(noise.sigma2);
}

ObservationMatrix generate(const PiecewiseMeanSpec& spec, const NoiseModel& noise, std::uint64_t seed,
                           std::vector<std::string>* diagnostics) {
    spec.validate();
    noise.validate();
    Matrix mean;
    if (noise.kind == NoiseKind::async && noise.parameter > 0.0 && !spec.changepoints.empty()) {
        const auto thetas = spec.changes();
        const auto bound = static_cast<std::uint64_t>(noise.parameter);
        mean = spec.segment_means.front().replicate(1, spec.n);
        Index clamped = 0;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            RandomStream rng(derive_seed(seed, kAsyncShift, i));
            for (Index j = 0; j < spec.p; ++j) {
                if (thetas[i](j) == 0.0) continue;
                const auto shift = static_cast<Index>(rng.below(2 * bound + 1)) - static_cast<Index>(bound);
                Index z = spec.changepoints[i] + shift;
                if (z < 1 || z > spec.n - 1) {
                    z = std::clamp<Index>(z, 1, spec.n - 1);
                    ++clamped;
                }
                mean.row(j).tail(spec.n - z).array() += thetas[i](j);
            }
        }
        if (clamped > 0 && diagnostics)
            diagnostics->push_back(std::to_string(clamped) + " async changepoint(s) clamped into [1, n-1]");
    } else {
        mean = spec.mean_matrix();
    }
    if (noise.sigma2 > 0.0) mean += generate_noise(spec.p, spec.n, noise, seed);
    return ObservationMatrix(std::move(mean));
}

Vector harmonic_direction(Index p, Index k, double vartheta) {
    if (k < 1 || k > p) throw InvalidInput("need 1 <= k <= p");
    if (!(vartheta >= 0.0) || !std::isfinite(vartheta)) throw InvalidInput("vartheta must be finite and >= 0");
    Vector theta = Vector::Zero(p);
    for (Index i = 0; i < k; ++i) theta(i) = 1.0 / std::sqrt(static_cast<double>(i + 1));
    theta *= vartheta / theta.norm();
    return theta;
}

PiecewiseMeanSpec standard_signal(Index n, Index p, Index k, Index z, double vartheta) {
    if (z < 1 || z > n - 1) throw InvalidInput("need 1 <= z <= n-1");
    if (!(vartheta > 0.0)) throw InvalidInput("vartheta must be positive");
    PiecewiseMeanSpec spec;
    spec.n = n;
    spec.p = p;
    spec.changepoints = {z};
    spec.segment_means = {Vector::Zero(p), harmonic_direction(p, k, vartheta)};
    spec.validate();
    return spec;
}

PiecewiseMeanSpec null_signal(Index n, Index p) {
    PiecewiseMeanSpec spec;
    spec.n = n;
    spec.p = p;
    spec.segment_means = {Vector::Zero(p)};
    spec.validate();
    return spec;
}

std::string_view to_string(Overlap overlap) {
    switch (overlap) {
        case Overlap::complete: return "complete";
        case Overlap::half: return "half";
        case Overlap::none: return "none";
    }
    return "unknown";
}

Overlap overlap_from_string(std::string_view name) {
    if (name == "complete") return Overlap::complete;
    if (name == "half") return Overlap::half;
    if (name == "none") return Overlap::none;
    throw InvalidInput("unknown overlap '" + std::string(name) + "' (expected complete, half or none)");
}

PiecewiseMeanSpec overlap_signal(Index n, Index p, Index k, const std::vector<Index>& zs,
                                 const std::vector<double>& varthetas, Overlap overlap) {
    if (zs.size() != varthetas.size()) throw InvalidInput("need one vartheta per changepoint");
    if (k < 1) throw InvalidInput("need k >= 1");
    if (overlap == Overlap::half && k % 2 != 0) throw InvalidInput("half overlap needs an even k");
    PiecewiseMeanSpec spec;
    spec.n = n;
    spec.p = p;
    spec.changepoints = zs;
    spec.segment_means = {Vector::Zero(p)};
    const Vector pattern = harmonic_direction(k, k, 1.0);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const auto idx = static_cast<Index>(i);
        Index start = 0;
        if (overlap == Overlap::half) start = idx * k / 2;
        if (overlap == Overlap::none) start = idx * k;
        if (start + k > p) throw InvalidInput("coordinate window of change " + std::to_string(i + 1) + " exceeds p");
        if (!(varthetas[i] > 0.0)) throw InvalidInput("varthetas must be positive");
        Vector next = spec.segment_means.back();
        next.segment(start, k) += varthetas[i] * pattern;
        spec.segment_means.push_back(std::move(next));
    }
    spec.validate();
    return spec;
}

}  // namespace inspect

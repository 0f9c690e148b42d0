#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "inspect/types.hpp"

namespace inspect {

enum class NoiseKind { gaussian, unif, exp, cs_local, cs_global, temporal, async };

std::string_view to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(std::string_view name);

/// Noise law added to the mean matrix.
///
/// | kind      | parameter | law of W (before scaling by sigma)                       |
/// |-----------|-----------|-----------------------------------------------------------|
/// | gaussian  | unused    | iid N(0, 1)                                               |
/// | unif      | unused    | iid U[-sqrt 3, sqrt 3]                                    |
/// | exp       | unused    | iid Exp(1) - 1                                            |
/// | cs_local  | rho       | columns N(0, Sigma), Sigma_ij = rho^|i-j|, abs(rho) < 1   |
/// | cs_global | rho       | columns N(0, (1-rho) I + (rho/p) 11^T), 0 <= rho <= 1     |
/// | temporal  | rho       | each row a stationary AR(1) with coefficient sqrt(rho)    |
/// | async     | L         | gaussian noise; every changed coordinate gets its own     |
/// |           |           | changepoint drawn uniformly from {z-L, ..., z+L}          |
struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian;
    double sigma2 = 1.0;
    double parameter = 0.0;

    void validate() const;
};

/// X = mean + W for the given spec and noise model; bit-reproducible given the seed.
///
/// Each noise row j draws from its own substream derive_seed(seed, tag, j), so row
/// contents do not depend on the order rows are produced in. Shared draws (the
/// common factor of cs_global and the async shifts) use separate substreams.
/// Async changepoints leaving [1, n-1] are clamped and reported in diagnostics.
ObservationMatrix generate(const PiecewiseMeanSpec& spec, const NoiseModel& noise, std::uint64_t seed,
                           std::vector<std::string>* diagnostics = nullptr);

/// p x n noise matrix of the given model (async behaves as gaussian here).
Matrix generate_noise(Index p, Index n, const NoiseModel& noise, std::uint64_t seed);

/// theta proportional to (1, 2^{-1/2}, ..., k^{-1/2}, 0, ..., 0) with ||theta||_2 = vartheta.
Vector harmonic_direction(Index p, Index k, double vartheta);

/// Single change at z: mean 0 before, theta = harmonic_direction(p, k, vartheta) after.
PiecewiseMeanSpec standard_signal(Index n, Index p, Index k, Index z, double vartheta);

/// Spec with zero mean and no changepoints.
PiecewiseMeanSpec null_signal(Index n, Index p);

enum class Overlap { complete, half, none };

std::string_view to_string(Overlap overlap);
Overlap overlap_from_string(std::string_view name);

/// Multi-change spec on k-coordinate supports.
///
/// Change i (1-based) lives on coordinates 1..k (complete), (i-1)k/2+1..(i+1)k/2
/// (half; k must be even) or (i-1)k+1..ik (none). Within its support theta^(i)
/// follows the harmonic-root pattern scaled to ||theta^(i)||_2 = varthetas[i-1].
PiecewiseMeanSpec overlap_signal(Index n, Index p, Index k, const std::vector<Index>& zs,
                                 const std::vector<double>& varthetas, Overlap overlap);

}  // namespace inspect

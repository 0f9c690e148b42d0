#pragma once

#include <vector>

#include "inspect/types.hpp"

namespace inspect {

/// Changepoints of a length-n series; point t (1-based) lies in segment #{i : z_i < t}.
struct Segmentation {
    Index n = 0;
    std::vector<Index> changepoints;

    /// Requires strictly increasing changepoints inside [1, n-1].
    void validate() const;
    /// 0-based segment label of each time point.
    std::vector<Index> labels() const;
};

/// Hausdorff distance between two non-empty finite sets.
double hausdorff(const std::vector<double>& a, const std::vector<double>& b);

/// Finitely supported probability measure on the line.
struct PointMasses {
    std::vector<double> atoms;
    std::vector<double> weights;

    /// Equal weights 1/size on the given atoms.
    static PointMasses uniform(const std::vector<double>& atoms);
};

/// L1-Wasserstein distance, the integral over u of |F_P^{-1}(u) - F_Q^{-1}(u)|.
/// Both masses must total 1 within 1e-12.
double wasserstein1(const PointMasses& p, const PointMasses& q);

/// Adjusted Rand Index of the induced labelings.
///
/// When the expected index equals its maximum (e.g. both labelings are a single
/// segment) the ratio is undefined; it is then 1 for identical labelings and 0 otherwise.
double adjusted_rand_index(const Segmentation& a, const Segmentation& b);

}  // namespace inspect

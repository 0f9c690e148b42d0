#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "inspect/single_cp.hpp"
#include "inspect/sparse_projection.hpp"
#include "inspect/types.hpp"

namespace inspect {

/// Settings of the wild binary segmentation driver.
struct InspectConfig {
    /// Solver settings; solver.lambda unset means default_lambda(p, n) of the full data.
    SolverConfig solver;
    /// Acceptance threshold; unset means calibrate_threshold with n_null nulls.
    std::optional<double> xi;
    /// Burn-off fraction, 0 <= beta < 1/2.
    double beta = 0.0;
    /// Number of random intervals.
    Index q = 1000;
    std::uint64_t seed = 0;
    ConstraintSet method = ConstraintSet::l2_ball;
    Index n_null = 1000;
    /// Worker threads for the interval map; results do not depend on it.
    int threads = 1;

    void validate() const;
};

/// Q pairs (s_q, e_q), 0 <= s_q < e_q <= n, drawn uniformly; column window is [s_q, e_q).
struct IntervalDraw {
    std::vector<std::pair<Index, Index>> pairs;
};

IntervalDraw draw_intervals(Index n, Index q, std::uint64_t seed);

/// One segment visited by the recursion and its best candidate.
struct SegmentVisit {
    Index s = 0;
    Index e = 0;
    /// Index of the winning interval, or -1 when no interval fits the segment.
    Index q = -1;
    Index location = 0;
    double score = 0.0;
    bool accepted = false;
};

struct MultiDetection {
    /// 1-based, strictly increasing.
    std::vector<Index> changepoints;
    std::vector<double> scores;
    std::vector<std::pair<Index, Index>> intervals;
    std::vector<Vector> directions;
    /// Projected CUSUM series of each accepted interval, for plotting.
    std::vector<Vector> curves;
    /// Every segment visited, in visit order.
    std::vector<SegmentVisit> trace;
    double lambda = 0.0;
    double xi = 0.0;
};

/// Wild binary segmentation with sparse projections.
///
/// Every interval X[:, s_q:e_q) is scored once by inspect_single_cusum and the
/// result is reused by all segments that admit it. Intervals without a projection
/// direction are never selected. The data are used as given; normalise beforehand.
MultiDetection inspect_wbs(const ObservationMatrix& x, const InspectConfig& cfg);

/// Same, with a caller-supplied interval draw.
MultiDetection inspect_wbs(const ObservationMatrix& x, const InspectConfig& cfg, const IntervalDraw& draw);

/// Largest T_max of inspect_single over n_null standard Gaussian p x n datasets.
///
/// Null r uses substream r of the seed, so a run with more nulls extends a shorter one.
/// Nulls without a projection direction contribute 0.
double calibrate_threshold(Index n, Index p, const InspectConfig& cfg, Index n_null, std::uint64_t seed);

}  // namespace inspect

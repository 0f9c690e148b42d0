#include "inspect/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace inspect {

ObservationMatrix::ObservationMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 1) throw InvalidInput("observation matrix needs at least one row");
    if (values_.cols() < 2) throw InvalidInput("observation matrix needs at least two columns (n >= 2)");
    if (!values_.allFinite()) throw InvalidInput("observation matrix contains non-finite entries");
}

CusumMatrix::CusumMatrix(Matrix values, Index original_length)
    : values_(std::move(values)), original_length_(original_length) {
    if (values_.cols() != original_length_ - 1)
        throw InvalidInput("CUSUM matrix must have n - 1 columns");
    if (!values_.allFinite()) throw InvalidInput("CUSUM matrix contains non-finite entries");
}

void PiecewiseMeanSpec::validate() const {
    if (n < 2) throw InvalidInput("mean spec: n must be at least 2");
    if (p < 1) throw InvalidInput("mean spec: p must be at least 1");
    if (segment_means.size() != changepoints.size() + 1)
        throw InvalidInput("mean spec: need exactly one more segment mean than changepoints");
    Index prev = 0;
    for (Index z : changepoints) {
        if (z <= prev || z > n - 1)
            throw InvalidInput("mean spec: changepoints must be strictly increasing in [1, n-1], got " +
                               std::to_string(z));
        prev = z;
    }
    for (const auto& mu : segment_means) {
        if (mu.size() != p) throw InvalidInput("mean spec: segment mean has wrong length");
        if (!mu.allFinite()) throw InvalidInput("mean spec: segment mean is not finite");
    }
    for (std::size_t i = 1; i < segment_means.size(); ++i) {
        if ((segment_means[i] - segment_means[i - 1]).cwiseAbs().maxCoeff() == 0.0)
            throw InvalidInput("mean spec: consecutive segment means must differ");
    }
}

std::vector<Vector> PiecewiseMeanSpec::changes() const {
    std::vector<Vector> out;
    for (std::size_t i = 1; i < segment_means.size(); ++i) out.push_back(segment_means[i] - segment_means[i - 1]);
    return out;
}

Index PiecewiseMeanSpec::sparsity() const {
    Index k = 0;
    for (const auto& theta : changes()) k = std::max<Index>(k, (theta.array() != 0.0).count());
    return k;
}

double PiecewiseMeanSpec::spacing() const {
    Index gap = n;
    Index prev = 0;
    for (Index z : changepoints) {
        gap = std::min(gap, z - prev);
        prev = z;
    }
    gap = std::min(gap, n - prev);
    return static_cast<double>(gap) / static_cast<double>(n);
}

double PiecewiseMeanSpec::magnitude() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& theta : changes()) m = std::min(m, theta.norm());
    return m;
}

Matrix PiecewiseMeanSpec::mean_matrix() const {
    Matrix mu(p, n);
    Index start = 0;
    for (std::size_t i = 0; i < segment_means.size(); ++i) {
        const Index end = i < changepoints.size() ? changepoints[i] : n;
        for (Index t = start; t < end; ++t) mu.col(t) = segment_means[i];
        start = end;
    }
    return mu;
}

}  // namespace inspect

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "inspect/metrics.hpp"
#include "inspect/multi_cp.hpp"
#include "inspect/single_cp.hpp"

namespace inspect::cli {

using json = nlohmann::ordered_json;

struct ChangepointList {
    std::vector<Index> changepoints;
    /// 0 when the file does not state n.
    Index n = 0;
};

/// Changepoints from a detect report, a simulate sidecar or a plain list of integers
/// (separated by commas or whitespace). ParseError carries the line and column.
ChangepointList read_changepoint_list(const std::string& path);

/// {hausdorff, wasserstein1, ari, warnings}; distances are null when either set is empty.
json metrics_report(const std::vector<Index>& truth, const std::vector<Index>& estimate, Index n);

json noise_json(const NoiseProfile& profile, const std::vector<Index>& passthrough_rows);

void write_json(const std::string& path, const json& doc);

}  // namespace inspect::cli

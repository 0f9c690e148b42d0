#include "inspect/multi_cp.hpp"

#include <algorithm>
#include <cmath>

#include "inspect/cusum.hpp"
#include "inspect/rng.hpp"
#include "inspect/simgen.hpp"
#include "parallel.hpp"

namespace inspect {

namespace {

constexpr std::uint64_t kIntervals = 0x77627321ULL;
constexpr std::uint64_t kNulls = 0x6e756c6cULL;
// Segments shorter than this are not split further.
constexpr Index kMinSegment = 4;

struct IntervalScore {
    bool done = false;
    bool has_direction = false;
    Index location = 0;  // 1-based within the interval
    double score = 0.0;
    Vector direction;
    Vector curve;
};

}  // namespace

void InspectConfig::validate() const {
    solver.validate();
    if (xi && !(*xi >= 0.0)) throw InvalidInput("xi must be non-negative");
    if (!(beta >= 0.0 && beta < 0.5)) throw InvalidInput("beta must lie in [0, 1/2)");
    if (q < 1) throw InvalidInput("Q must be at least 1");
    if (n_null < 1) throw InvalidInput("the number of null datasets must be at least 1");
    if (method == ConstraintSet::brute_force_k_sparse) throw InvalidInput("WBS supports the soft and admm methods only");
}

IntervalDraw draw_intervals(Index n, Index q, std::uint64_t seed) {
    if (n < 2) throw InvalidInput("drawing intervals needs n >= 2");
    if (q < 1) throw InvalidInput("drawing intervals needs Q >= 1");
    // Pairs are enumerated by right end r = 1..n, each with r choices of l < r.
    const auto total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1) / 2;
    RandomStream rng(derive_seed(seed, kIntervals));
    IntervalDraw draw;
    draw.pairs.reserve(static_cast<std::size_t>(q));
    for (Index i = 0; i < q; ++i) {
        const std::uint64_t u = rng.below(total);
        auto r = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(u) + 1.0) - 1.0) / 2.0);
        while (r * (r + 1) / 2 > u) --r;
        while ((r + 1) * (r + 2) / 2 <= u) ++r;
        // Now r(r+1)/2 <= u < (r+1)(r+2)/2, so the right end is r + 1.
        const std::uint64_t l = u - r * (r + 1) / 2;
        draw.pairs.emplace_back(static_cast<Index>(l), static_cast<Index>(r + 1));
    }
    return draw;
}

MultiDetection inspect_wbs(const ObservationMatrix& x, const InspectConfig& cfg) {
    cfg.validate();
    return inspect_wbs(x, cfg, draw_intervals(x.n(), cfg.q, cfg.seed));
}

MultiDetection inspect_wbs(const ObservationMatrix& x, const InspectConfig& cfg, const IntervalDraw& draw) {
    cfg.validate();
    const Index n = x.n();
    for (const auto& [s, e] : draw.pairs)
        if (s < 0 || s >= e || e > n) throw InvalidInput("interval draw does not fit the data");

    const SolverConfig solver = resolve_lambda(cfg.solver, x.p(), n);
    MultiDetection out;
    out.lambda = solver.require_lambda();
    out.xi = cfg.xi ? *cfg.xi : calibrate_threshold(n, x.p(), cfg, cfg.n_null, cfg.seed);

    const PrefixSums sums(x.values());
    std::vector<IntervalScore> scores(draw.pairs.size());
    const double burn = static_cast<double>(n) * cfg.beta;

    auto score_interval = [&](std::size_t q) {
        IntervalScore& slot = scores[q];
        const auto [s, e] = draw.pairs[q];
        slot.done = true;
        if (e - s < 2) return;
        try {
            SingleDetection det = inspect_single_cusum(sums.window_cusum(s, e), solver, cfg.method);
            slot.has_direction = true;
            slot.location = det.z_hat;
            slot.score = det.t_max;
            slot.direction = std::move(det.v_hat);
            slot.curve = std::move(det.projected_cusum);
        } catch (const NoDirection&) {
        }
    };

    std::vector<std::pair<Index, Index>> pending{{0, n}};
    std::vector<Index> accepted;
    while (!pending.empty()) {
        const auto [s, e] = pending.back();
        pending.pop_back();
        if (e - s < kMinSegment) continue;

        std::vector<std::size_t> admissible, todo;
        for (std::size_t q = 0; q < draw.pairs.size(); ++q) {
            const auto [sq, eq] = draw.pairs[q];
            if (static_cast<double>(s) + burn <= static_cast<double>(sq) && sq < eq &&
                static_cast<double>(eq) <= static_cast<double>(e) - burn) {
                admissible.push_back(q);
                if (!scores[q].done) todo.push_back(q);
            }
        }
        detail::parallel_for(todo.size(), cfg.threads, [&](std::size_t i) { score_interval(todo[i]); });

        SegmentVisit visit{s, e};
        for (std::size_t q : admissible) {
            const IntervalScore& sc = scores[q];
            if (!sc.has_direction) continue;
            if (visit.q < 0 || sc.score > visit.score) {
                visit.q = static_cast<Index>(q);
                visit.score = sc.score;
                visit.location = draw.pairs[q].first + sc.location;
            }
        }
        visit.accepted = visit.q >= 0 && visit.score > out.xi;
        out.trace.push_back(visit);
        if (!visit.accepted) continue;
        accepted.push_back(static_cast<Index>(out.trace.size() - 1));
        pending.emplace_back(visit.location, e);
        pending.emplace_back(s, visit.location);
    }

    std::sort(accepted.begin(), accepted.end(), [&](Index a, Index b) {
        return out.trace[static_cast<std::size_t>(a)].location < out.trace[static_cast<std::size_t>(b)].location;
    });
    for (Index idx : accepted) {
        const SegmentVisit& v = out.trace[static_cast<std::size_t>(idx)];
        const IntervalScore& sc = scores[static_cast<std::size_t>(v.q)];
        out.changepoints.push_back(v.location);
        out.scores.push_back(v.score);
        out.intervals.push_back(draw.pairs[static_cast<std::size_t>(v.q)]);
        out.directions.push_back(sc.direction);
        out.curves.push_back(sc.curve);
    }
    return out;
}

double calibrate_threshold(Index n, Index p, const InspectConfig& cfg, Index n_null, std::uint64_t seed) {
    if (n_null < 1) throw InvalidInput("the number of null datasets must be at least 1");
    if (n < 2 || p < 1) throw InvalidInput("calibration needs n >= 2 and p >= 1");
    const SolverConfig solver = resolve_lambda(cfg.solver, p, n);
    solver.validate();
    const NoiseModel gaussian{};
    std::vector<double> maxima(static_cast<std::size_t>(n_null), 0.0);
    detail::parallel_for(maxima.size(), cfg.threads, [&](std::size_t r) {
        const Matrix noise = generate_noise(p, n, gaussian, derive_seed(seed, kNulls, r));
        try {
            maxima[r] = inspect_single_cusum(cusum_transform(MatrixRef(noise)), solver, cfg.method).t_max;
        } catch (const NoDirection&) {
        }
    });
    return *std::max_element(maxima.begin(), maxima.end());
}

}  // namespace inspect

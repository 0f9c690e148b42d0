#include "inspect/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

namespace inspect {

void Segmentation::validate() const {
    if (n < 1) throw InvalidInput("segmentation length must be positive");
    for (std::size_t i = 0; i < changepoints.size(); ++i) {
        if (changepoints[i] < 1 || changepoints[i] > n - 1)
            throw InvalidInput("changepoint " + std::to_string(changepoints[i]) + " outside [1, n-1]");
        if (i > 0 && changepoints[i] <= changepoints[i - 1])
            throw InvalidInput("changepoints must be strictly increasing");
    }
}

std::vector<Index> Segmentation::labels() const {
    validate();
    std::vector<Index> out(static_cast<std::size_t>(n));
    Index label = 0;
    std::size_t next = 0;
    for (Index t = 1; t <= n; ++t) {
        while (next < changepoints.size() && changepoints[next] < t) {
            ++label;
            ++next;
        }
        out[static_cast<std::size_t>(t - 1)] = label;
    }
    return out;
}

namespace {

double directed(const std::vector<double>& from, const std::vector<double>& sorted_to) {
    double worst = 0.0;
    for (double a : from) {
        auto it = std::lower_bound(sorted_to.begin(), sorted_to.end(), a);
        double best = std::numeric_limits<double>::infinity();
        if (it != sorted_to.end()) best = *it - a;
        if (it != sorted_to.begin()) best = std::min(best, a - *std::prev(it));
        worst = std::max(worst, best);
    }
    return worst;
}

void check_measure(const PointMasses& m) {
    if (m.atoms.empty() || m.atoms.size() != m.weights.size())
        throw InvalidInput("a measure needs matching non-empty atoms and weights");
    double total = 0.0;
    for (double w : m.weights) {
        if (!(w >= 0.0)) throw InvalidInput("weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("measure mass must be 1");
}

std::vector<std::pair<double, double>> sorted_masses(const PointMasses& m) {
    std::vector<std::pair<double, double>> out;
    out.reserve(m.atoms.size());
    for (std::size_t i = 0; i < m.atoms.size(); ++i) out.emplace_back(m.atoms[i], m.weights[i]);
    std::sort(out.begin(), out.end());
    return out;
}

double choose2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw InvalidInput("hausdorff distance needs non-empty sets");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return std::max(directed(a, sb), directed(b, sa));
}

PointMasses PointMasses::uniform(const std::vector<double>& atoms) {
    if (atoms.empty()) throw InvalidInput("a measure needs at least one atom");
    return {atoms, std::vector<double>(atoms.size(), 1.0 / static_cast<double>(atoms.size()))};
}

double wasserstein1(const PointMasses& p, const PointMasses& q) {
    check_measure(p);
    check_measure(q);
    const auto a = sorted_masses(p);
    const auto b = sorted_masses(q);
    // Walk both quantile functions; each step consumes the smaller remaining mass.
    std::size_t i = 0, j = 0;
    double left_a = a[0].second, left_b = b[0].second, cost = 0.0;
    while (i < a.size() && j < b.size()) {
        const double step = std::min(left_a, left_b);
        cost += step * std::abs(a[i].first - b[j].first);
        left_a -= step;
        left_b -= step;
        if (left_a <= 0.0 && ++i < a.size()) left_a = a[i].second;
        if (left_b <= 0.0 && ++j < b.size()) left_b = b[j].second;
    }
    return cost;
}

double adjusted_rand_index(const Segmentation& a, const Segmentation& b) {
    if (a.n != b.n) throw InvalidInput("segmentations must share n");
    const auto la = a.labels();
    const auto lb = b.labels();
    // Labels are monotone in t, so the contingency table has at most ka + kb - 1 non-zero cells.
    std::map<std::pair<Index, Index>, double> cells;
    std::vector<double> rows(a.changepoints.size() + 1, 0.0), cols(b.changepoints.size() + 1, 0.0);
    for (std::size_t t = 0; t < la.size(); ++t) {
        cells[{la[t], lb[t]}] += 1.0;
        rows[static_cast<std::size_t>(la[t])] += 1.0;
        cols[static_cast<std::size_t>(lb[t])] += 1.0;
    }
    double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, count] : cells) index += choose2(count);
    for (double r : rows) sum_rows += choose2(r);
    for (double c : cols) sum_cols += choose2(c);
    const double total = choose2(static_cast<double>(a.n));
    const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
    const double maximum = 0.5 * (sum_rows + sum_cols);
    if (std::abs(maximum - expected) <= 1e-12 * std::max(1.0, maximum))
        return a.changepoints == b.changepoints ? 1.0 : 0.0;
    return (index - expected) / (maximum - expected);
}

}  // namespace inspect

#include <doctest.h>

#include <algorithm>
#include <set>

#include "inspect/metrics.hpp"
#include "inspect/rng.hpp"
#include "oracles.hpp"

using namespace inspect;

namespace {

std::vector<double> random_set(RandomStream& rng, int max_size, double range) {
    std::vector<double> s(1 + rng.below(static_cast<std::uint64_t>(max_size)));
    for (double& x : s) x = static_cast<double>(rng.below(static_cast<std::uint64_t>(range)));
    return s;
}

Segmentation random_segmentation(RandomStream& rng, Index n) {
    std::set<Index> cps;
    const auto count = rng.below(5);
    for (std::uint64_t i = 0; i < count; ++i) cps.insert(1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1))));
    return Segmentation{n, std::vector<Index>(cps.begin(), cps.end())};
}

}  // namespace

TEST_CASE("hausdorff examples") {
    CHECK(hausdorff({1, 5}, {2}) == 3.0);
    CHECK(hausdorff({500, 1000, 1500}, {505, 998, 1507}) == 7.0);
    CHECK(hausdorff({3}, {3}) == 0.0);
    CHECK_THROWS_AS(hausdorff({}, {1}), InvalidInput);
}

TEST_CASE("hausdorff agrees with the brute-force definition") {
    RandomStream rng(1);
    for (int r = 0; r < 300; ++r) {
        const auto a = random_set(rng, 6, 100), b = random_set(rng, 6, 100), c = random_set(rng, 6, 100);
        CHECK(hausdorff(a, b) == oracle::hausdorff(a, b));
        CHECK(hausdorff(a, b) == hausdorff(b, a));
        CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c));
    }
}

TEST_CASE("wasserstein examples") {
    CHECK(wasserstein1(PointMasses::uniform({100}), PointMasses::uniform({110})) == doctest::Approx(10.0));
    CHECK(wasserstein1(PointMasses::uniform({0, 10}), PointMasses::uniform({5})) == doctest::Approx(5.0));
    CHECK(wasserstein1(PointMasses::uniform({1, 2, 3}), PointMasses::uniform({3, 1, 2})) == 0.0);
    CHECK_THROWS_AS(wasserstein1(PointMasses{{1.0}, {0.5}}, PointMasses::uniform({1})), InvalidInput);
    CHECK_THROWS_AS(PointMasses::uniform({}), InvalidInput);
}

TEST_CASE("wasserstein agrees with the CDF integral") {
    RandomStream rng(2);
    for (int r = 0; r < 300; ++r) {
        const auto a = random_set(rng, 7, 50), b = random_set(rng, 7, 50), c = random_set(rng, 7, 50);
        std::vector<double> wb(b.size());
        double total = 0;
        for (double& w : wb) total += (w = 1.0 + static_cast<double>(rng.below(9)));
        for (double& w : wb) w /= total;
        const PointMasses pa = PointMasses::uniform(a), pb{b, wb}, pc = PointMasses::uniform(c);
        CHECK(wasserstein1(pa, pb) == doctest::Approx(oracle::wasserstein_cdf(pa.atoms, pa.weights, pb.atoms, pb.weights)));
        CHECK(wasserstein1(pa, pc) <= wasserstein1(pa, pb) + wasserstein1(pb, pc) + 1e-9);
    }
}

TEST_CASE("adjusted rand index examples") {
    CHECK(adjusted_rand_index(Segmentation{4, {2}}, Segmentation{4, {1}}) == doctest::Approx(0.0));
    CHECK(adjusted_rand_index(Segmentation{10, {}}, Segmentation{10, {}}) == 1.0);
    CHECK(adjusted_rand_index(Segmentation{10, {}}, Segmentation{10, {5}}) == 0.0);
    CHECK(adjusted_rand_index(Segmentation{10, {3, 7}}, Segmentation{10, {3, 7}}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(adjusted_rand_index(Segmentation{10, {}}, Segmentation{11, {}}), InvalidInput);
    CHECK_THROWS_AS(Segmentation({10, {10}}).validate(), InvalidInput);
    CHECK_THROWS_AS(Segmentation({10, {4, 4}}).validate(), InvalidInput);
}

TEST_CASE("adjusted rand index agrees with pair counting") {
    RandomStream rng(3);
    for (int r = 0; r < 200; ++r) {
        const Index n = 2 + static_cast<Index>(rng.below(40));
        const Segmentation a = random_segmentation(rng, n), b = random_segmentation(rng, n);
        const auto la = a.labels(), lb = b.labels();
        const double expected = oracle::ari_pairs(std::vector<long>(la.begin(), la.end()),
                                                  std::vector<long>(lb.begin(), lb.end()));
        CHECK(adjusted_rand_index(a, b) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(adjusted_rand_index(a, b) == doctest::Approx(adjusted_rand_index(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("segment labels") {
    const auto labels = Segmentation{6, {2, 4}}.labels();
    CHECK(labels == std::vector<Index>{0, 0, 1, 1, 2, 2});
}

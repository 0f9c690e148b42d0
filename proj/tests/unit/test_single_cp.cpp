#include <doctest.h>

#include <cmath>

#include "inspect/cusum.hpp"
#include "inspect/simgen.hpp"
#include "inspect/single_cp.hpp"
#include "oracles.hpp"

using namespace inspect;

namespace {

SolverConfig with_lambda(double lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    return cfg;
}

ObservationMatrix step(Index p, Index n, Index z, const Vector& theta) {
    Matrix mu = Matrix::Zero(p, n);
    for (Index t = z; t < n; ++t) mu.col(t) = theta;
    return ObservationMatrix(mu);
}

}  // namespace

TEST_CASE("MAD noise estimate") {
    CHECK(estimate_noise_mad(ObservationMatrix(Matrix::Constant(1, 10, 4.0))).sigma_hat(0) == 0.0);

    // 0, 2, 0, 2, ... with n = 101: 50 differences of +2 and 50 of -2.
    Matrix alt(1, 101);
    for (Index t = 0; t < 101; ++t) alt(0, t) = (t % 2) * 2.0;
    CHECK(estimate_noise_mad(ObservationMatrix(alt)).sigma_hat(0) == doctest::Approx(2.1));
    // With n = 100 the differences are 50 x (+2) and 49 x (-2): the median is +2 and the MAD is 0.
    CHECK(estimate_noise_mad(ObservationMatrix(alt.leftCols(100))).sigma_hat(0) == 0.0);

    CHECK_THROWS_AS(estimate_noise_mad(ObservationMatrix(Matrix::Zero(1, 2))), InvalidInput);
}

TEST_CASE("MAD estimate of Gaussian scale") {
    int inside = 0;
    const NoiseModel noise{NoiseKind::gaussian, 4.0, 0.0};
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const double s = estimate_noise_mad(ObservationMatrix(generate_noise(1, 20000, noise, rep))).sigma_hat(0);
        if (s >= 1.9 && s <= 2.1) ++inside;
    }
    CHECK(inside >= 95);
}

TEST_CASE("normalisation") {
    const Matrix x = generate_noise(3, 20, NoiseModel{}, 4);
    const ObservationMatrix obs(x);
    NoiseProfile ones{Vector::Ones(3)};
    CHECK(normalize(obs, ones).data.values() == x);

    Matrix scaled = x;
    scaled.row(1) *= 3.0;
    NoiseProfile profile{Vector::Ones(3)};
    profile.sigma_hat(1) = 3.0;
    CHECK((normalize(ObservationMatrix(scaled), profile).data.values() - x).cwiseAbs().maxCoeff() < 1e-15);

    Matrix with_constant = x;
    with_constant.row(2).setConstant(5.0);
    const ObservationMatrix c(with_constant);
    const NormalizedData nd = normalize(c, estimate_noise_mad(c));
    REQUIRE(nd.passthrough_rows.size() == 1);
    CHECK(nd.passthrough_rows[0] == 2);
    CHECK(nd.data.values().row(2) == with_constant.row(2));

    CHECK_THROWS_AS(normalize(obs, NoiseProfile{Vector::Ones(2)}), InvalidInput);
}

TEST_CASE("default lambda") {
    CHECK(default_lambda(1000, 500) == doctest::Approx(std::sqrt(0.5 * std::log(1000 * std::log(500.0)))));
    CHECK(default_lambda(1, 2) == 1e-6);
    CHECK(resolve_lambda(SolverConfig{}, 10, 100).lambda.value() == doctest::Approx(default_lambda(10, 100)));
    CHECK(resolve_lambda(with_lambda(0.3), 10, 100).lambda.value() == 0.3);
}

TEST_CASE("noiseless single change is recovered exactly") {
    const ObservationMatrix x = step(2, 8, 4, Vector::Unit(2, 0));
    for (ConstraintSet method : {ConstraintSet::l2_ball, ConstraintSet::nuclear_ball}) {
        const SingleDetection d = inspect_single(x, with_lambda(0.1), method);
        CHECK(d.z_hat == 4);
        CHECK((d.v_hat - Vector::Unit(2, 0)).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(d.t_max == doctest::Approx(gamma_vector(8, 4).maxCoeff()).epsilon(1e-6));
    }
    // Any location and either method.
    for (Index z = 1; z < 12; ++z) {
        Vector theta(3);
        theta << 1.0, -0.5, 0.0;
        for (ConstraintSet method : {ConstraintSet::l2_ball, ConstraintSet::nuclear_ball})
            CHECK(inspect_single(step(3, 12, z, theta), with_lambda(0.05), method).z_hat == z);
    }
}

TEST_CASE("location is the exhaustive argmax of the projected CUSUM") {
    const auto spec = standard_signal(12, 3, 2, 5, 2.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ObservationMatrix x = generate(spec, NoiseModel{}, seed);
        const SingleDetection d = inspect_single(x, with_lambda(0.3));
        const Matrix t = oracle::cusum(x.values());
        Index best = -1;
        double value = -1;
        for (Index s = 0; s < t.cols(); ++s) {
            const double v = std::abs(d.v_hat.dot(t.col(s)));
            if (v > value + 1e-12) {
                value = v;
                best = s + 1;
            }
        }
        CHECK(d.z_hat == best);
        CHECK(d.t_max == doctest::Approx(value).epsilon(1e-10));
    }
}

TEST_CASE("ties in the argmax go to the lowest index") {
    Vector x(4);
    x << 1, -3, 3, 2;
    CHECK(abs_argmax(x).first == 1);
    CHECK(abs_argmax(x).second == 3.0);
}

TEST_CASE("sample-splitting variant") {
    const SingleDetection d = inspect_single_split(step(2, 16, 8, Vector::Unit(2, 0)), with_lambda(0.1));
    CHECK(d.z_hat == 8);
    CHECK(d.variant == SingleVariant::split);

    const auto spec = standard_signal(40, 5, 2, 17, 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(inspect_single_split(generate(spec, NoiseModel{}, seed), with_lambda(0.5)).z_hat % 2 == 0);

    const auto odd = standard_signal(17, 4, 2, 9, 3.0);
    const SingleDetection o = inspect_single_split(generate(odd, NoiseModel{}, 3), with_lambda(0.5));
    CHECK(o.z_hat <= 16);
    CHECK(o.projected_cusum.size() == 7);

    const auto [a, b] = split_columns(Matrix::Ones(2, 17));
    CHECK(a.cols() == 8);
    CHECK(b.cols() == 8);
    CHECK_THROWS_AS(inspect_single_split(ObservationMatrix(Matrix::Ones(2, 3)), with_lambda(0.5)), InvalidInput);
}

TEST_CASE("scale equivariance of the location") {
    const auto spec = standard_signal(60, 8, 3, 25, 2.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ObservationMatrix x = generate(spec, NoiseModel{}, seed);
        const double c = 3.5;
        const SingleDetection a = inspect_single(x, with_lambda(0.7));
        const SingleDetection b = inspect_single(ObservationMatrix(c * x.values()), with_lambda(0.7 * c));
        CHECK(a.z_hat == b.z_hat);
        CHECK(b.t_max == doctest::Approx(c * a.t_max).epsilon(1e-9));
    }
}

TEST_CASE("permuting coordinates permutes the direction") {
    const auto spec = standard_signal(50, 6, 3, 20, 2.5);
    const ObservationMatrix x = generate(spec, NoiseModel{}, 8);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
    perm.indices() << 4, 2, 0, 5, 1, 3;
    const SingleDetection a = inspect_single(x, with_lambda(0.6));
    const SingleDetection b = inspect_single(ObservationMatrix(perm * x.values()), with_lambda(0.6));
    CHECK(a.z_hat == b.z_hat);
    CHECK(a.t_max == doctest::Approx(b.t_max).epsilon(1e-9));
    CHECK(oracle::angle_deg(perm * a.v_hat, b.v_hat) < 1e-6);
}

TEST_CASE("no direction is reported as NoDirection") {
    const ObservationMatrix x(Matrix::Ones(3, 10));
    CHECK_THROWS_AS(inspect_single(x, with_lambda(1.0)), NoDirection);
}

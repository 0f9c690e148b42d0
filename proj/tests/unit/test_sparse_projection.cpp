#include <doctest.h>

#include <cmath>

#include "inspect/cusum.hpp"
#include "inspect/rng.hpp"
#include "inspect/simgen.hpp"
#include "inspect/sparse_projection.hpp"
#include "nuclear_projector.hpp"
#include "oracles.hpp"

using namespace inspect;

namespace {

Matrix random_matrix(Index p, Index n, std::uint64_t seed, double scale = 1.0) {
    RandomStream rng(seed);
    Matrix m(p, n);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = scale * rng.normal();
    return m;
}

SolverConfig with_lambda(double lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    return cfg;
}

}  // namespace

TEST_CASE("soft thresholding") {
    Matrix m(1, 2);
    m << 3, -0.5;
    const Matrix s = soft_threshold(m, 1.0);
    CHECK(s(0, 0) == 2.0);
    CHECK(s(0, 1) == 0.0);
    const Matrix r = random_matrix(4, 5, 1);
    CHECK(soft_threshold(r, 0.0) == r);
    CHECK(soft_threshold(r, r.cwiseAbs().maxCoeff()).isZero(0.0));
    Matrix neg(1, 1);
    neg << -3;
    CHECK(soft_threshold(neg, 1.0)(0, 0) == -2.0);
    CHECK_THROWS_AS(soft_threshold(r, -1.0), InvalidInput);
}

TEST_CASE("simplex projection examples") {
    auto proj = [](std::initializer_list<double> v) {
        Vector d(static_cast<Index>(v.size()));
        Index i = 0;
        for (double x : v) d(i++) = x;
        return project_simplex(d);
    };
    CHECK(proj({1, 0}).isApprox(Vector::Unit(2, 0)));
    const Vector half = proj({0.8, 0.8});
    CHECK(half(0) == doctest::Approx(0.5));
    CHECK(half(1) == doctest::Approx(0.5));
    const Vector top = proj({2, 1, 0});
    CHECK(top(0) == doctest::Approx(1.0));
    CHECK(top(1) == doctest::Approx(0.0));
    CHECK(top(2) == doctest::Approx(0.0));
}

TEST_CASE("simplex projection agrees with support enumeration") {
    RandomStream rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const Index r = 1 + static_cast<Index>(rng.below(7));
        Vector d(r);
        for (Index i = 0; i < r; ++i) d(i) = 3.0 * rng.uniform();
        const Vector x = project_simplex(d);
        CHECK((x - oracle::simplex_by_supports(d)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(x.sum() == doctest::Approx(1.0));
        CHECK(x.minCoeff() >= 0.0);
        CHECK((project_simplex(x) - x).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("simplex projection is 1-Lipschitz") {
    RandomStream rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        Vector a(5), b(5);
        for (Index i = 0; i < 5; ++i) {
            a(i) = 2.0 * rng.uniform();
            b(i) = 2.0 * rng.uniform();
        }
        CHECK((project_simplex(a) - project_simplex(b)).norm() <= (a - b).norm() + 1e-12);
    }
}

TEST_CASE("nuclear-ball projection examples") {
    Matrix inside = random_matrix(3, 4, 3);
    inside *= 0.7 / oracle::nuclear_norm(inside);
    CHECK((project_nuclear_ball(inside) - inside).cwiseAbs().maxCoeff() < 1e-14);

    Matrix d31 = Matrix::Zero(2, 2);
    d31.diagonal() << 3, 1;
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1;
    CHECK((project_nuclear_ball(d31) - expected).cwiseAbs().maxCoeff() < 1e-12);

    const Matrix d22 = 2.0 * Matrix::Identity(2, 2);
    CHECK((project_nuclear_ball(d22) - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nuclear-ball projection matches the Jacobi oracle and is idempotent") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix m = random_matrix(6, 5, seed, 2.0);
        const Matrix y = project_nuclear_ball(m);
        CHECK((y - oracle::nuclear_projection(m)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(oracle::nuclear_norm(y) <= 1.0 + 1e-8);
        CHECK((project_nuclear_ball(y) - y).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("truncated projector reproduces the exact projection along an ADMM run") {
    const auto spec = standard_signal(200, 120, 10, 80, 4.0);
    const ObservationMatrix x = generate(spec, NoiseModel{}, 5);
    const Matrix t = cusum_transform(MatrixRef(x.values()));
    const double lambda = 2.0;
    detail::NuclearProjector projector;
    Matrix y = Matrix::Zero(t.rows(), t.cols()), z = y, r = y;
    double worst = 0.0;
    for (int it = 0; it < 150; ++it) {
        const Matrix in = z - r + t;
        y = projector.project(in);
        worst = std::max(worst, (y - project_nuclear_ball(in)).cwiseAbs().maxCoeff());
        z = soft_threshold(y + r, lambda);
        r += y - z;
    }
    CHECK(projector.truncated_calls() > 0);
    CHECK(worst < 1e-9);
}

TEST_CASE("leading left singular vector") {
    Vector u(3), w(4);
    u << 1, -2, 2;
    w << 0.5, 1, -1, 3;
    const SingularVector rank1 = leading_left_singular_vector(u * w.transpose());
    CHECK((rank1.vector - u.normalized()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(rank1.singular_value == doctest::Approx(u.norm() * w.norm()));

    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 3, 1;
    CHECK((leading_left_singular_vector(d).vector - Vector::Unit(2, 0)).cwiseAbs().maxCoeff() < 1e-10);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix m = random_matrix(10, 9, seed);
        const SingularVector v = leading_left_singular_vector(m, 1e-14, 100000);
        CHECK(oracle::angle_deg(v.vector, oracle::leading_left(m)) < 1e-6 * 180.0 / M_PI);
        CHECK(v.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(leading_left_singular_vector(Matrix::Zero(3, 3)), InvalidInput);
}

TEST_CASE("sparse and dense power iterations agree") {
    Matrix m = soft_threshold(random_matrix(30, 40, 4), 1.8);
    REQUIRE((m.array() != 0.0).count() < m.size() / 4);
    const SingularVector sparse = leading_left_singular_vector(m, 1e-13, 100000);
    CHECK(oracle::angle_deg(sparse.vector, oracle::leading_left(m)) < 1e-4);
    const SingularVector rows = leading_left_singular_vector_sparse_rows(m, 1e-13, 100000);
    CHECK((rows.vector - sparse.vector).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("closed-form l2-ball solution") {
    const Matrix t = random_matrix(5, 7, 2);
    const ProjectionSolution zero = closed_form_s2(t, 0.0);
    CHECK((zero.m_hat - t / t.norm()).cwiseAbs().maxCoeff() < 1e-14);

    Matrix col(2, 1);
    col << 3, -1;
    const ProjectionSolution s = closed_form_s2(col, 1.0);
    CHECK(s.m_hat(0, 0) == doctest::Approx(1.0));
    CHECK(s.m_hat(1, 0) == 0.0);
    CHECK(s.objective == doctest::Approx(2.0));
    CHECK(s.certificate == doctest::Approx(2.0));
    CHECK_THROWS_AS(closed_form_s2(col, 3.0), ThresholdTooLarge);
}

TEST_CASE("ADMM on small inputs") {
    const ProjectionSolution zero = admm_solve(Matrix::Zero(3, 4), with_lambda(1.0));
    CHECK(zero.objective == 0.0);
    CHECK(zero.v_hat.isZero(0.0));

    Matrix t = Matrix::Zero(4, 4);
    t(0, 0) = 10;
    SolverConfig tight = with_lambda(1.0);
    tight.primal_dual_tol = 1e-9;
    const ProjectionSolution s = admm_solve(t, tight);
    CHECK(s.converged);
    Matrix e11 = Matrix::Zero(4, 4);
    e11(0, 0) = 1;
    CHECK((s.m_hat - e11).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(s.objective == doctest::Approx(9.0).epsilon(1e-6));
    CHECK((s.v_hat - Vector::Unit(4, 0)).cwiseAbs().maxCoeff() < 1e-8);
    // Rank-one grid search over feasible u w^T with unit u, w in the first two coordinates.
    double grid_best = -1e300;
    for (int i = 0; i < 360; ++i)
        for (int j = 0; j < 360; ++j) {
            const double a = i * M_PI / 180.0, b = j * M_PI / 180.0;
            Matrix m = Matrix::Zero(4, 4);
            m.block(0, 0, 2, 2) = Eigen::Vector2d(std::cos(a), std::sin(a)) * Eigen::RowVector2d(std::cos(b), std::sin(b));
            grid_best = std::max(grid_best, penalised_objective(t, m, 1.0));
        }
    CHECK(s.objective >= grid_best - 1e-6);
}

TEST_CASE("duality sandwich on random instances") {
    RandomStream rng(31);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Matrix t = random_matrix(6, 5, seed, 1.5);
        const double lambda = 0.5;
        const ProjectionSolution a = admm_solve(t, with_lambda(lambda));
        const ProjectionSolution s = closed_form_s2(t, lambda);
        CHECK(a.objective <= s.objective + 1e-6);
        CHECK(s.objective <= soft_threshold(t, lambda).norm() + 1e-6);
        CHECK(oracle::nuclear_norm(a.m_hat) <= 1.0 + 1e-8);
        CHECK(s.m_hat.norm() <= 1.0 + 1e-12);
        CHECK(a.v_hat.norm() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(s.v_hat.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("solve_projection dispatch and config validation") {
    const Matrix t = random_matrix(3, 4, 9, 3.0);
    CHECK(solve_projection(t, ConstraintSet::l2_ball, with_lambda(0.5)).constraint_set == ConstraintSet::l2_ball);
    CHECK(solve_projection(t, ConstraintSet::nuclear_ball, with_lambda(0.5)).constraint_set == ConstraintSet::nuclear_ball);
    CHECK_THROWS_AS(solve_projection(t, ConstraintSet::brute_force_k_sparse, with_lambda(0.5)), InvalidInput);
    CHECK_THROWS_AS(solve_projection(t, ConstraintSet::l2_ball, SolverConfig{}), InvalidInput);
    SolverConfig bad;
    bad.lambda = -1;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    CHECK(constraint_set_from_string("soft") == ConstraintSet::l2_ball);
    CHECK(constraint_set_from_string("admm") == ConstraintSet::nuclear_ball);
    CHECK_THROWS_AS(constraint_set_from_string("lasso"), InvalidInput);
}

TEST_CASE("brute-force sparse singular vector") {
    const Matrix t = random_matrix(5, 8, 12);
    CHECK((brute_force_sparse_svd(t, 5) - leading_left_singular_vector(t, 1e-14, 100000).vector).cwiseAbs().maxCoeff() < 1e-8);

    const Vector g = gamma_vector(20, 8);
    Matrix dominant = 5.0 * Vector::Unit(6, 1) * g.transpose() + 0.1 * random_matrix(6, 19, 13);
    CHECK((brute_force_sparse_svd(dominant, 1) - Vector::Unit(6, 1)).cwiseAbs().maxCoeff() < 1e-12);

    // Two identical rows: the lexicographically first subset wins.
    Matrix tied = Matrix::Zero(3, 4);
    tied.row(1) = Eigen::RowVector4d(1, 2, 3, 4);
    tied.row(2) = tied.row(1);
    CHECK((brute_force_sparse_svd(tied, 1) - Vector::Unit(3, 1)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(brute_force_sparse_svd(Matrix::Ones(40, 3), 10), TooManySubsets);
    CHECK_THROWS_AS(brute_force_sparse_svd(t, 0), InvalidInput);
}

TEST_CASE("brute-force direction obeys the perturbation bound") {
    const Index n = 20, p = 6, k = 2, z = 8;
    Vector theta = Vector::Zero(p);
    theta(0) = 3;
    theta(3) = -2;
    const Vector g = gamma_vector(n, z);
    RandomStream rng(17);
    Matrix e(p, n - 1);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < n - 1; ++j) e(i, j) = 0.2 * (2.0 * rng.uniform() - 1.0);
    const Vector v = brute_force_sparse_svd(theta * g.transpose() + e, k);
    const double ntau = static_cast<double>(std::min(z, n - z));
    const double bound = 8.0 * std::sqrt(2.0 * k) * e.cwiseAbs().maxCoeff() * std::sqrt(static_cast<double>(n)) /
                         (theta.norm() * ntau / 4.0);
    CHECK(std::sin(oracle::angle_deg(v, theta) * M_PI / 180.0) < bound);
}

TEST_CASE("angle recovery at the theoretical lambda") {
    const Index n = 200, p = 50, k = 3, z = 80;
    const double vartheta = 100.0;
    const double lambda = 2.0 * std::sqrt(std::log(p * std::log(static_cast<double>(n))));
    const double tau = static_cast<double>(z) / static_cast<double>(n);
    const double bound = 32.0 * lambda * std::sqrt(static_cast<double>(k)) / (tau * vartheta * std::sqrt(static_cast<double>(n)));
    REQUIRE(bound < 1.0);
    const auto spec = standard_signal(n, p, k, z, vartheta);
    const Vector v = spec.changes()[0].normalized();
    int good = 0;
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
        const ObservationMatrix x = generate(spec, NoiseModel{}, 1000 + rep);
        const ProjectionSolution s = closed_form_s2(cusum_transform(MatrixRef(x.values())), lambda);
        if (std::sin(oracle::angle_deg(s.v_hat, v) * M_PI / 180.0) < bound) ++good;
    }
    CHECK(good >= 180);
}

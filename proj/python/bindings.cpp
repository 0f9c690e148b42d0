#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "inspect/cusum.hpp"
#include "inspect/metrics.hpp"
#include "inspect/multi_cp.hpp"
#include "inspect/simgen.hpp"
#include "inspect/single_cp.hpp"
#include "inspect/sparse_projection.hpp"
#include "inspect/spatial.hpp"

namespace py = pybind11;
using namespace inspect;

namespace {

SolverConfig solver(std::optional<double> lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    return cfg;
}

py::dict detection_dict(const SingleDetection& d) {
    py::dict out;
    out["z_hat"] = d.z_hat;
    out["t_max"] = d.t_max;
    out["v_hat"] = d.v_hat;
    out["projected_cusum"] = d.projected_cusum;
    out["variant"] = std::string(to_string(d.variant));
    out["converged"] = d.solver_converged;
    return out;
}

py::dict solution_dict(const ProjectionSolution& s) {
    py::dict out;
    out["m_hat"] = s.m_hat;
    out["v_hat"] = s.v_hat;
    out["objective"] = s.objective;
    out["iterations"] = s.iterations;
    out["converged"] = s.converged;
    out["certificate"] = s.certificate;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse-projection changepoint detection";
    m.attr("__version__") = INSPECT_VERSION;

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NoDirection>(m, "NoDirection", PyExc_RuntimeError);

    m.def("cusum_transform", [](const Matrix& x) { return cusum_transform(MatrixRef(x)); }, py::arg("x"),
          "p x (n-1) CUSUM contrasts of a p x n array.");
    m.def("soft_threshold", [](const Matrix& x, double lambda) { return soft_threshold(x, lambda); }, py::arg("x"),
          py::arg("lambda_"));
    m.def("project_simplex", [](const Vector& d) { return project_simplex(d); }, py::arg("d"));
    m.def("project_nuclear_ball", [](const Matrix& x) { return project_nuclear_ball(x); }, py::arg("x"));
    m.def(
        "closed_form_s2", [](const Matrix& t, double lambda) { return solution_dict(closed_form_s2(t, lambda)); },
        py::arg("t"), py::arg("lambda_"));
    m.def(
        "admm_solve",
        [](const Matrix& t, double lambda, double tol, int max_iterations) {
            SolverConfig cfg = solver(lambda);
            cfg.primal_dual_tol = tol;
            cfg.max_iterations = max_iterations;
            return solution_dict(admm_solve(t, cfg));
        },
        py::arg("t"), py::arg("lambda_"), py::arg("tol") = 1e-4, py::arg("max_iterations") = 10000);
    m.def("default_lambda", &default_lambda, py::arg("p"), py::arg("n"));

    m.def(
        "estimate_noise",
        [](const Matrix& x) { return estimate_noise_mad(ObservationMatrix(x)).sigma_hat; }, py::arg("x"),
        "Per-row robust scale, 1.05 * MAD of first differences.");
    m.def(
        "normalize",
        [](const Matrix& x) {
            const ObservationMatrix obs(x);
            NormalizedData out = normalize(obs, estimate_noise_mad(obs));
            return py::make_tuple(out.data.values(), out.passthrough_rows);
        },
        py::arg("x"), "Rows divided by their scale estimate, plus the 0-based rows left unscaled.");

    m.def(
        "inspect_single",
        [](const Matrix& x, std::optional<double> lambda, const std::string& method, bool split) {
            const ObservationMatrix obs(x);
            const ConstraintSet set = constraint_set_from_string(method);
            const SolverConfig cfg = solver(lambda);
            return detection_dict(split ? inspect_single_split(obs, cfg, set) : inspect_single(obs, cfg, set));
        },
        py::arg("x"), py::arg("lambda_") = std::nullopt, py::arg("method") = "soft", py::arg("split") = false,
        "Single changepoint; z_hat is 1-based (last index of the left segment).");

    m.def(
        "inspect",
        [](const Matrix& x, std::optional<double> xi, std::optional<double> lambda, Index q, double beta,
           std::uint64_t seed, Index n_null, const std::string& method, int threads) {
            InspectConfig cfg;
            cfg.solver = solver(lambda);
            cfg.xi = xi;
            cfg.q = q;
            cfg.beta = beta;
            cfg.seed = seed;
            cfg.n_null = n_null;
            cfg.method = constraint_set_from_string(method);
            cfg.threads = threads;
            MultiDetection d;
            {
                py::gil_scoped_release release;
                d = inspect_wbs(ObservationMatrix(x), cfg);
            }
            py::dict out;
            out["changepoints"] = d.changepoints;
            out["scores"] = d.scores;
            out["intervals"] = d.intervals;
            out["lambda"] = d.lambda;
            out["xi"] = d.xi;
            return out;
        },
        py::arg("x"), py::arg("xi") = std::nullopt, py::arg("lambda_") = std::nullopt, py::arg("Q") = 1000,
        py::arg("beta") = 0.0, py::arg("seed") = 0, py::arg("n_null") = 1000, py::arg("method") = "soft",
        py::arg("threads") = 1, "Multiple changepoints by wild binary segmentation.");

    m.def(
        "calibrate",
        [](Index n, Index p, Index n_null, std::uint64_t seed, std::optional<double> lambda, int threads) {
            InspectConfig cfg;
            cfg.solver = solver(lambda);
            cfg.threads = threads;
            py::gil_scoped_release release;
            return calibrate_threshold(n, p, cfg, n_null, seed);
        },
        py::arg("n"), py::arg("p"), py::arg("n_null") = 1000, py::arg("seed") = 0, py::arg("lambda_") = std::nullopt,
        py::arg("threads") = 1);

    m.def(
        "simulate",
        [](Index n, Index p, Index k, const std::vector<Index>& z, const std::vector<double>& vartheta,
           const std::string& overlap, const std::string& noise, double sigma2, double param, std::uint64_t seed) {
            PiecewiseMeanSpec spec;
            if (z.empty()) spec = null_signal(n, p);
            else if (z.size() == 1 && overlap.empty()) spec = standard_signal(n, p, k, z[0], vartheta.at(0));
            else spec = overlap_signal(n, p, k, z, vartheta, overlap_from_string(overlap.empty() ? "none" : overlap));
            const NoiseModel model{noise_kind_from_string(noise), sigma2, param};
            return generate(spec, model, seed).values();
        },
        py::arg("n"), py::arg("p"), py::arg("k") = 1, py::arg("z") = std::vector<Index>{},
        py::arg("vartheta") = std::vector<double>{}, py::arg("overlap") = "", py::arg("noise") = "gaussian",
        py::arg("sigma2") = 1.0, py::arg("param") = 0.0, py::arg("seed") = 0);

    m.def(
        "inspect_spatial",
        [](const Matrix& x, const std::string& dependence, double tau_lb, std::optional<double> lambda) {
            const SpatialDetection d =
                inspect_single_spatial(ObservationMatrix(x), solver(lambda), dependence_kind_from_string(dependence), tau_lb);
            py::dict out = detection_dict(d.detection);
            out["v_unweighted"] = d.v_hat;
            out["rho_hat"] = d.precision.rho_hat;
            out["diagnostics"] = d.precision.diagnostics;
            return out;
        },
        py::arg("x"), py::arg("dependence") = "local", py::arg("tau_lb") = 0.1, py::arg("lambda_") = std::nullopt);

    m.def(
        "hausdorff", [](const std::vector<double>& a, const std::vector<double>& b) { return hausdorff(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "wasserstein1",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return wasserstein1(PointMasses::uniform(a), PointMasses::uniform(b));
        },
        py::arg("a"), py::arg("b"), "Distance between the uniform measures on two point sets.");
    m.def(
        "adjusted_rand_index",
        [](Index n, const std::vector<Index>& a, const std::vector<Index>& b) {
            return adjusted_rand_index(Segmentation{n, a}, Segmentation{n, b});
        },
        py::arg("n"), py::arg("a"), py::arg("b"));
}

// Command-line front end: detect, calibrate, simulate, metrics.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "inspect/csv.hpp"
#include "inspect/multi_cp.hpp"
#include "inspect/simgen.hpp"
#include "inspect/single_cp.hpp"
#include "report.hpp"

using namespace inspect;
using inspect::cli::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kIo = 3, kSolver = 4 };

struct CommonSolverFlags {
    std::optional<double> lambda;
    std::string method = "soft";
    int threads = 1;
    std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App* cmd, CommonSolverFlags& f) {
    cmd->add_option("--lambda", f.lambda, "soft-threshold level (default: sqrt(log(p log n)/2))")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--method", f.method, "projection method")->check(CLI::IsMember({"soft", "admm"}));
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

// detect ----------------------------------------------------------------------

struct DetectFlags {
    std::string input;
    std::string output;
    CommonSolverFlags solver;
    std::optional<double> xi;
    Index nulls = 1000;
    double beta = 0.0;
    Index q = 1000;
    bool single = false;
    bool split = false;
    bool header = false;
    bool transpose = false;
    bool no_normalize = false;
    bool no_timings = false;
    std::string delimiter = ",";
    std::string emit_curves;
};

void write_curves(const std::string& dir, const MultiDetection& det) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < det.changepoints.size(); ++i) {
        const std::string path = dir + "/curve_" + std::to_string(i + 1) + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << "t,projected_cusum\n";
        const Index s = det.intervals[i].first;
        for (Index t = 0; t < det.curves[i].size(); ++t)
            out << s + t + 1 << ',' << format_double(det.curves[i](t)) << '\n';
    }
    const std::string path = dir + "/candidates.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "segment_start,segment_end,interval_index,location,score,xi,accepted\n";
    for (const auto& v : det.trace) {
        out << v.s << ',' << v.e << ',' << v.q << ',' << v.location << ',' << format_double(v.score) << ','
            << format_double(det.xi) << ',' << (v.accepted ? 1 : 0) << '\n';
    }
}

void write_single_curve(const std::string& dir, const SingleDetection& det) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/curve_1.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "t,projected_cusum\n";
    const Index stride = det.variant == SingleVariant::split ? 2 : 1;
    for (Index t = 0; t < det.projected_cusum.size(); ++t)
        out << stride * (t + 1) << ',' << format_double(det.projected_cusum(t)) << '\n';
}

int run_detect(const DetectFlags& f) {
    if (f.delimiter.size() != 1) throw InvalidInput("--delimiter must be a single character");
    if (f.split && !f.single) throw InvalidInput("--split requires --single");
    const auto start = std::chrono::steady_clock::now();
    json timings;

    CsvOptions csv{f.delimiter[0], f.header, f.transpose};
    ObservationMatrix raw(read_matrix_csv(f.input, csv));
    timings["read"] = seconds_since(start);

    json warnings = json::array();
    auto stage = std::chrono::steady_clock::now();
    json noise;
    ObservationMatrix data = raw;
    if (!f.no_normalize) {
        if (raw.n() < 3) throw InvalidInput("noise estimation needs at least 3 time points (use --no-normalize)");
        const NoiseProfile profile = estimate_noise_mad(raw);
        NormalizedData normalized = normalize(raw, profile);
        std::vector<Index> passthrough;
        for (Index j : normalized.passthrough_rows) passthrough.push_back(j + 1);
        if (!passthrough.empty())
            warnings.push_back(std::to_string(passthrough.size()) + " row(s) with zero estimated scale left unscaled");
        noise = cli::noise_json(profile, passthrough);
        data = std::move(normalized.data);
    } else {
        noise = json{{"estimator", "none"}};
    }
    timings["normalize"] = seconds_since(stage);

    InspectConfig cfg;
    cfg.solver.lambda = f.solver.lambda;
    cfg.solver = resolve_lambda(cfg.solver, data.p(), data.n());
    cfg.method = constraint_set_from_string(f.solver.method);
    cfg.seed = f.solver.seed;
    cfg.threads = f.solver.threads;
    cfg.beta = f.beta;
    cfg.q = f.q;
    cfg.n_null = f.nulls;
    cfg.xi = f.xi;
    cfg.validate();

    json config{{"n", data.n()},
                {"p", data.p()},
                {"mode", f.single ? (f.split ? "single_split" : "single") : "wbs"},
                {"method", f.solver.method},
                {"lambda", *cfg.solver.lambda},
                {"normalize", !f.no_normalize},
                {"seed", cfg.seed}};
    json changepoints = json::array();

    stage = std::chrono::steady_clock::now();
    if (f.single) {
        config["xi"] = cfg.xi ? json(*cfg.xi) : json(nullptr);
        try {
            const SingleDetection det = f.split ? inspect_single_split(data, cfg.solver, cfg.method)
                                                : inspect_single(data, cfg.solver, cfg.method);
            if (!det.solver_converged) warnings.push_back("solver hit its iteration limit");
            if (!cfg.xi || det.t_max > *cfg.xi)
                changepoints.push_back({{"location", det.z_hat}, {"score", det.t_max}, {"interval", {0, data.n()}}});
            if (!f.emit_curves.empty()) write_single_curve(f.emit_curves, det);
        } catch (const NoDirection& e) {
            warnings.push_back(std::string("no projection direction: ") + e.what());
        }
    } else {
        if (!cfg.xi) {
            const auto calib = std::chrono::steady_clock::now();
            cfg.xi = calibrate_threshold(data.n(), data.p(), cfg, cfg.n_null, cfg.seed);
            timings["calibrate"] = seconds_since(calib);
        }
        config["xi"] = *cfg.xi;
        config["xi_source"] = f.xi ? "user" : "calibrated";
        config["nulls"] = cfg.n_null;
        config["beta"] = cfg.beta;
        config["Q"] = cfg.q;
        const MultiDetection det = inspect_wbs(data, cfg);
        for (std::size_t i = 0; i < det.changepoints.size(); ++i)
            changepoints.push_back({{"location", det.changepoints[i]},
                                    {"score", det.scores[i]},
                                    {"interval", {det.intervals[i].first, det.intervals[i].second}}});
        if (!f.emit_curves.empty()) write_curves(f.emit_curves, det);
    }
    config["threads"] = cfg.threads;
    timings["detect"] = seconds_since(stage);
    timings["total"] = seconds_since(start);

    json report{{"changepoints", changepoints}, {"config", config}, {"noise", noise}, {"warnings", warnings},
                {"version", INSPECT_VERSION}};
    if (!f.no_timings) report["timings"] = timings;
    if (f.output.empty()) std::cout << report.dump(2) << '\n';
    else cli::write_json(f.output, report);
    return kOk;
}

// calibrate -------------------------------------------------------------------

struct CalibrateFlags {
    Index n = 0;
    Index p = 0;
    Index nulls = 1000;
    CommonSolverFlags solver;
    std::string output;
};

int run_calibrate(const CalibrateFlags& f) {
    InspectConfig cfg;
    cfg.solver.lambda = f.solver.lambda;
    cfg.solver = resolve_lambda(cfg.solver, f.p, f.n);
    cfg.method = constraint_set_from_string(f.solver.method);
    cfg.threads = f.solver.threads;
    cfg.n_null = f.nulls;
    cfg.validate();
    const double xi = calibrate_threshold(f.n, f.p, cfg, f.nulls, f.solver.seed);
    std::cout << format_double(xi) << '\n';
    if (!f.output.empty()) {
        cli::write_json(f.output, json{{"xi", xi},
                                       {"n", f.n},
                                       {"p", f.p},
                                       {"nulls", f.nulls},
                                       {"seed", f.solver.seed},
                                       {"method", f.solver.method},
                                       {"lambda", *cfg.solver.lambda},
                                       {"version", INSPECT_VERSION}});
    }
    return kOk;
}

// simulate --------------------------------------------------------------------

struct SimulateFlags {
    Index n = 0;
    Index p = 0;
    Index k = 1;
    std::string zs;
    std::string varthetas;
    std::string overlap;
    std::string noise = "gaussian";
    double sigma2 = 1.0;
    double parameter = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    std::string truth;
    bool transpose = false;
    std::string delimiter = ",";
};

int run_simulate(const SimulateFlags& f) {
    if (f.delimiter.size() != 1) throw InvalidInput("--delimiter must be a single character");
    std::vector<Index> zs;
    std::vector<double> thetas;
    try {
        for (const auto& s : split_list(f.zs)) zs.push_back(std::stoll(s));
        for (const auto& s : split_list(f.varthetas)) thetas.push_back(std::stod(s));
    } catch (const std::exception&) {
        throw InvalidInput("--z and --vartheta take comma-separated numbers");
    }
    if (zs.size() != thetas.size()) throw InvalidInput("--z and --vartheta need the same number of entries");
    if (zs.size() > 1 && f.overlap.empty()) throw InvalidInput("several changepoints need --overlap");

    PiecewiseMeanSpec spec;
    if (zs.empty()) spec = null_signal(f.n, f.p);
    else if (f.overlap.empty()) spec = standard_signal(f.n, f.p, f.k, zs[0], thetas[0]);
    else spec = overlap_signal(f.n, f.p, f.k, zs, thetas, overlap_from_string(f.overlap));

    NoiseModel noise{noise_kind_from_string(f.noise), f.sigma2, f.parameter};
    std::vector<std::string> diagnostics;
    const ObservationMatrix x = generate(spec, noise, f.seed, &diagnostics);
    const char delim = f.delimiter[0];
    if (f.transpose) write_matrix_csv(f.output, x.values().transpose(), delim);
    else write_matrix_csv(f.output, x.values(), delim);

    json sidecar{{"n", f.n},
                 {"p", f.p},
                 {"k", f.k},
                 {"changepoints", spec.changepoints},
                 {"varthetas", thetas},
                 {"overlap", f.overlap.empty() ? (zs.empty() ? "none" : "single") : f.overlap},
                 {"noise", {{"kind", to_string(noise.kind)}, {"sigma2", noise.sigma2}, {"parameter", noise.parameter}}},
                 {"seed", f.seed},
                 {"orientation", f.transpose ? "time_by_coordinate" : "coordinate_by_time"},
                 {"diagnostics", diagnostics},
                 {"version", INSPECT_VERSION}};
    cli::write_json(f.truth.empty() ? f.output + ".truth.json" : f.truth, sidecar);
    for (const auto& d : diagnostics) std::cerr << "warning: " << d << '\n';
    return kOk;
}

// metrics ---------------------------------------------------------------------

struct MetricsFlags {
    std::string truth;
    std::string estimate;
    Index n = 0;
};

int run_metrics(const MetricsFlags& f) {
    const auto truth = cli::read_changepoint_list(f.truth);
    const auto estimate = cli::read_changepoint_list(f.estimate);
    Index n = f.n;
    for (Index candidate : {truth.n, estimate.n}) {
        if (candidate == 0) continue;
        if (n != 0 && n != candidate) throw InvalidInput("truth and estimate disagree on n");
        n = candidate;
    }
    if (n == 0) throw InvalidInput("n is unknown; pass --n");
    json out = cli::metrics_report(truth.changepoints, estimate.changepoints, n);
    for (const auto& w : out["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    std::cout << out.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-projection changepoint detection for high-dimensional series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", INSPECT_VERSION);

    DetectFlags detect;
    auto* d = app.add_subcommand("detect", "estimate changepoints in a CSV matrix");
    d->add_option("input", detect.input, "CSV file (rows = coordinates, columns = time)")->required();
    d->add_option("-o,--output", detect.output, "report path (default: stdout)");
    add_solver_flags(d, detect.solver);
    d->add_option("--xi", detect.xi, "acceptance threshold (default: calibrated)")->check(CLI::NonNegativeNumber);
    d->add_option("--nulls", detect.nulls, "null datasets for calibration")->check(CLI::PositiveNumber);
    d->add_option("--beta", detect.beta, "burn-off fraction in [0, 1/2)");
    d->add_option("--Q", detect.q, "number of random intervals")->check(CLI::PositiveNumber);
    d->add_flag("--single", detect.single, "single changepoint on the whole series");
    d->add_flag("--split", detect.split, "sample-splitting variant (with --single)");
    d->add_flag("--header", detect.header, "skip the first line");
    d->add_flag("--transpose", detect.transpose, "file is time x coordinates");
    d->add_option("--delimiter", detect.delimiter, "field separator");
    d->add_flag("--no-normalize", detect.no_normalize, "skip per-row MAD scaling");
    d->add_flag("--no-timings", detect.no_timings, "omit wall-clock timings from the report");
    d->add_option("--emit-curves", detect.emit_curves, "directory for projected CUSUM and candidate CSVs");

    CalibrateFlags calibrate;
    auto* c = app.add_subcommand("calibrate", "threshold from null simulations");
    c->add_option("--n", calibrate.n, "series length")->required()->check(CLI::Range(Index{2}, Index{1} << 40));
    c->add_option("--p", calibrate.p, "dimension")->required()->check(CLI::PositiveNumber);
    c->add_option("--nulls", calibrate.nulls, "null datasets")->check(CLI::PositiveNumber);
    add_solver_flags(c, calibrate.solver);
    c->add_option("-o,--output", calibrate.output, "also write a JSON record here");

    SimulateFlags simulate;
    auto* s = app.add_subcommand("simulate", "generate a synthetic dataset");
    s->add_option("--n", simulate.n, "series length")->required();
    s->add_option("--p", simulate.p, "dimension")->required();
    s->add_option("--k", simulate.k, "coordinates changed per changepoint");
    s->add_option("--z", simulate.zs, "comma-separated changepoints (empty: no change)");
    s->add_option("--vartheta", simulate.varthetas, "comma-separated change magnitudes");
    s->add_option("--overlap", simulate.overlap, "support layout for several changes")
        ->check(CLI::IsMember({"complete", "half", "none"}));
    s->add_option("--noise", simulate.noise, "noise model")
        ->check(CLI::IsMember({"gaussian", "unif", "exp", "cs_local", "cs_global", "temporal", "async"}));
    s->add_option("--sigma2", simulate.sigma2, "noise variance");
    s->add_option("--param", simulate.parameter, "rho of the dependent models, L of async");
    s->add_option("--seed", simulate.seed, "random seed");
    s->add_option("-o,--output", simulate.output, "CSV path")->required();
    s->add_option("--truth", simulate.truth, "sidecar path (default: <output>.truth.json)");
    s->add_flag("--transpose", simulate.transpose, "write time x coordinates");
    s->add_option("--delimiter", simulate.delimiter, "field separator");

    MetricsFlags metrics;
    auto* m = app.add_subcommand("metrics", "compare estimated and true changepoints");
    m->add_option("truth", metrics.truth, "sidecar, report or integer list")->required();
    m->add_option("estimate", metrics.estimate, "report, sidecar or integer list")->required();
    m->add_option("--n", metrics.n, "series length when the files do not state it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*d) return run_detect(detect);
        if (*c) return run_calibrate(calibrate);
        if (*s) return run_simulate(simulate);
        if (*m) return run_metrics(metrics);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    }
    return kUsage;
}

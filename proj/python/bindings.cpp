#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "salsacast/baselines.hpp"
#include "salsacast/causal.hpp"
#include "salsacast/errors.hpp"
#include "salsacast/experiment.hpp"
#include "salsacast/ingest.hpp"
#include "salsacast/montecarlo.hpp"
#include "salsacast/report.hpp"
#include "salsacast/salsa.hpp"

namespace py = pybind11;
using namespace salsacast;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
    if (a.ndim() != 1) throw ValidationError("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) {
    return Array(static_cast<py::ssize_t>(v.size()), v.data());
}

SalsaParams salsa_params(double mu, double lambda, std::size_t n_basis, std::size_t n_iter, double threshold_scale) {
    SalsaParams p;
    p.mu = mu;
    p.lambda = lambda;
    p.n_basis = n_basis;
    p.n_iter = n_iter;
    p.threshold_scale = threshold_scale;
    return p;
}

CausalParams causal_params(double omega, double nu, std::size_t n_harmonics, std::size_t ma_width) {
    CausalParams p;
    p.omega = omega;
    p.nu = nu;
    p.n_harmonics = n_harmonics;
    p.ma_width = ma_width;
    return p;
}

py::dict experiment_to_dict(const ExperimentResult& r) {
    py::dict methods;
    for (const MethodResult& m : r.methods) {
        py::dict d;
        d["track"] = to_array(m.track);
        d["window_per_point"] = to_array(m.window_per_point);
        d["failed_windows"] = m.failed_windows;
        d["total_l2"] = m.residual.total_l2;
        d["per_point"] = m.residual.per_point;
        d["n_points"] = m.residual.n_points;
        d["wall_seconds"] = m.wall_seconds;
        methods[py::str(std::string(to_string(m.method)))] = d;
    }
    py::dict out;
    out["window_len"] = r.window_len;
    out["horizon"] = r.horizon;
    out["stride"] = r.stride;
    out["n_windows"] = r.n_windows;
    out["target_indices"] = r.target_indices;
    out["truth"] = to_array(r.truth);
    out["smoothed"] = to_array(r.smoothed);
    out["methods"] = methods;
    out["report_text"] = render_report(r, ReportFormat::text);
    out["report_csv"] = render_report(r, ReportFormat::csv);
    out["report_json"] = render_report(r, ReportFormat::json);
    out["plot_data"] = render_plot_data(r);
    return out;
}

}  // namespace

PYBIND11_MODULE(_salsacast, m) {
    m.doc() = "Bindings for the salsacast forecasting library";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "salsa_forecast",
        [](const Array& history, std::size_t horizon, double mu, double lambda, std::size_t n_basis,
           std::size_t n_iter, double threshold_scale) {
            const auto h = to_vector(history);
            const auto p = salsa_params(mu, lambda, n_basis, n_iter, threshold_scale);
            std::vector<double> f;
            {
                py::gil_scoped_release release;
                f = salsa_forecast(h, horizon, p);
            }
            return to_array(f);
        },
        py::arg("history"), py::arg("horizon"), py::arg("mu") = 0.6, py::arg("lam") = 1.0,
        py::arg("n_basis") = 200, py::arg("n_iter") = 1000, py::arg("threshold_scale") = 0.5);

    m.def(
        "salsa_solve",
        [](const Array& history, std::size_t horizon, double mu, double lambda, std::size_t n_basis,
           std::size_t n_iter, double threshold_scale) {
            const auto h = to_vector(history);
            ComplexVector masked(h.size() + horizon, Complex{});
            std::copy(h.begin(), h.end(), masked.begin());
            const auto state = salsa_solve(masked, ObservationMask::leading(masked.size(), h.size()),
                                           salsa_params(mu, lambda, n_basis, n_iter, threshold_scale));
            py::array_t<std::complex<double>> coeffs(static_cast<py::ssize_t>(state.coefficients.size()),
                                                     state.coefficients.data());
            return py::make_tuple(coeffs, to_array(state.cost_history));
        },
        py::arg("history"), py::arg("horizon"), py::arg("mu") = 0.6, py::arg("lam") = 1.0,
        py::arg("n_basis") = 200, py::arg("n_iter") = 1000, py::arg("threshold_scale") = 0.5,
        "Runs the solver on history followed by `horizon` masked samples; returns (coefficients, cost_history).");

    m.def(
        "causal_forecast",
        [](const Array& history, std::size_t horizon, double omega, double nu, std::size_t n_harmonics,
           std::size_t ma_width) {
            return to_array(causal_forecast(to_vector(history), horizon, causal_params(omega, nu, n_harmonics, ma_width)));
        },
        py::arg("history"), py::arg("horizon"), py::arg("omega") = CausalParams{}.omega, py::arg("nu") = 0.1,
        py::arg("n_harmonics") = 45, py::arg("ma_width") = 5);

    m.def(
        "linear_forecast",
        [](const Array& history, std::size_t horizon, std::size_t lookback, const std::string& variant) {
            return to_array(linear_forecast(to_vector(history), horizon, {lookback, parse_linear_variant(variant)}));
        },
        py::arg("history"), py::arg("horizon"), py::arg("lookback") = 1, py::arg("variant") = "code_slope");

    m.def(
        "generate_path",
        [](std::size_t length, std::uint64_t seed, double a_low, double a_high, double noise_std, double offset) {
            SimParams p;
            p.length = length;
            p.seed = seed;
            p.a_low = a_low;
            p.a_high = a_high;
            p.noise_std = noise_std;
            p.offset = offset;
            const auto s = generate_path(p);
            return to_array({s.values().begin(), s.values().end()});
        },
        py::arg("length"), py::arg("seed"), py::arg("a_low") = 0.0, py::arg("a_high") = 1.0,
        py::arg("noise_std") = 1.0, py::arg("offset") = 80.0);

    m.def(
        "read_csv_column",
        [](const std::filesystem::path& path, const std::variant<std::size_t, std::string>& column, bool skip_header,
           const std::string& missing) {
            CsvSpec spec;
            spec.path = path;
            spec.column = column;
            spec.skip_header = skip_header;
            spec.missing_policy = parse_missing_policy(missing);
            const auto s = read_csv_column(spec);
            return to_array({s.values().begin(), s.values().end()});
        },
        py::arg("path"), py::arg("column") = std::size_t{1}, py::arg("skip_header") = true,
        py::arg("missing") = "drop");

    m.def(
        "run_experiment",
        [](const Array& series, std::size_t window, std::size_t horizon, std::optional<std::size_t> stride,
           const std::vector<std::string>& methods, double mu, double lambda, std::size_t n_basis, std::size_t n_iter,
           double omega, double nu, bool paper_emulation, std::size_t threads) {
            ExperimentConfig cfg;
            cfg.window_len = window;
            cfg.horizon = horizon;
            cfg.stride = stride;
            cfg.methods.clear();
            for (const auto& name : methods) cfg.methods.push_back(parse_method(name));
            cfg.salsa = salsa_params(mu, lambda, n_basis, n_iter, SalsaParams{}.threshold_scale);
            cfg.causal.omega = omega;
            cfg.causal.nu = nu;
            cfg.paper_emulation = paper_emulation;
            cfg.threads = threads;
            const TimeSeries ts(to_vector(series));
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(ts, cfg);
            }
            return experiment_to_dict(r);
        },
        py::arg("series"), py::arg("window") = 91, py::arg("horizon") = 7, py::arg("stride") = py::none(),
        py::arg("methods") = std::vector<std::string>{"causal", "salsa", "linear"}, py::arg("mu") = 0.6,
        py::arg("lam") = 1.0, py::arg("n_basis") = 200, py::arg("n_iter") = 1000,
        py::arg("omega") = CausalParams{}.omega, py::arg("nu") = 0.1, py::arg("paper_emulation") = false,
        py::arg("threads") = 1);

    m.def(
        "run_sweep",
        [](const std::vector<double>& mu, const std::vector<double>& lambda, const std::vector<std::size_t>& n_basis,
           std::size_t trials, std::size_t window, std::size_t horizon, std::size_t n_iter, std::uint64_t seed,
           std::size_t threads) {
            SweepGrid g;
            g.mu_values = mu;
            g.lambda_values = lambda;
            g.n_basis_values = n_basis;
            g.trials = trials;
            g.window = window;
            g.horizon = horizon;
            g.base.n_iter = n_iter;
            SimParams sim;
            sim.seed = seed;
            SweepOptions opts;
            opts.threads = threads;
            SweepTable t;
            {
                py::gil_scoped_release release;
                t = run_sweep(g, sim, opts);
            }
            py::list rows;
            for (const auto& r : t.rows) {
                py::dict d;
                d["mu"] = r.mu;
                d["lambda"] = r.lambda;
                d["n_basis"] = r.n_basis;
                d["mean_residual_per_point"] = r.mean_residual_per_point;
                d["trials_run"] = r.trials_run;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["complete"] = t.complete;
            out["csv"] = sweep_to_csv(t);
            out["json"] = sweep_to_json(t);
            return out;
        },
        py::arg("mu"), py::arg("lam") = std::vector<double>{1.0}, py::arg("n_basis") = std::vector<std::size_t>{200},
        py::arg("trials") = 1000, py::arg("window") = 91, py::arg("horizon") = 7, py::arg("n_iter") = 1000,
        py::arg("seed") = 0, py::arg("threads") = 1);
}

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "salsacast/baselines.hpp"
#include "salsacast/causal.hpp"
#include "salsacast/errors.hpp"
#include "salsacast/experiment.hpp"
#include "salsacast/format.hpp"
#include "salsacast/ingest.hpp"
#include "salsacast/montecarlo.hpp"
#include "salsacast/report.hpp"
#include "salsacast/salsa.hpp"

namespace fs = std::filesystem;
using namespace salsacast;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

struct InputOptions {
    std::string path;
    std::string column = "1";
    bool no_header = false;
    std::string missing = "drop";
};

struct OutputOptions {
    std::string dir;
    std::string format = "text";
};

struct SimOptions {
    std::optional<std::uint64_t> seed;
    std::size_t length = SimParams{}.length;
    double a_low = SimParams{}.a_low;
    double a_high = SimParams{}.a_high;
    double noise_std = SimParams{}.noise_std;
    double offset = SimParams{}.offset;
};

void add_input(CLI::App* cmd, InputOptions& in, bool required) {
    auto* opt = cmd->add_option("--input,-i", in.path, "CSV file holding the series");
    if (required) opt->required();
    cmd->add_option("--column", in.column, "1-based column index or header name");
    cmd->add_flag("--no-header", in.no_header, "the CSV has no header row");
    cmd->add_option("--missing", in.missing, "gap policy: drop, forward_fill or error");
}

void add_output(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--output-dir,-o", out.dir, "directory for output files (stdout when omitted)");
    cmd->add_option("--format", out.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
}

void add_salsa(CLI::App* cmd, SalsaParams& p) {
    cmd->add_option("--mu", p.mu, "SALSA penalty weight mu");
    cmd->add_option("--lambda", p.lambda, "sparsity weight lambda");
    cmd->add_option("--n-basis", p.n_basis, "dictionary size N");
    cmd->add_option("--n-iter", p.n_iter, "SALSA iterations");
    cmd->add_option("--threshold-scale", p.threshold_scale, "soft threshold is threshold-scale * lambda / mu");
}

void add_causal(CLI::App* cmd, CausalParams& p) {
    cmd->add_option("--omega", p.omega, "band limit Omega");
    cmd->add_option("--nu", p.nu, "Tikhonov weight nu");
    cmd->add_option("--n-harmonics", p.n_harmonics, "sinc harmonics on each side; the window is 2n+1");
    cmd->add_option("--ma-width", p.ma_width, "moving-average width");
}

void add_linear(CLI::App* cmd, LinearParams& p, std::string& variant) {
    cmd->add_option("--lookback", p.lookback, "span A for two_point_span");
    cmd->add_option("--linear-variant", variant, "code_slope or two_point_span");
}

void add_sim(CLI::App* cmd, SimOptions& s, bool with_length) {
    cmd->add_option("--seed", s.seed, "master seed (generated and printed when omitted)");
    if (with_length) cmd->add_option("--length", s.length, "simulated series length");
    cmd->add_option("--a-low", s.a_low, "lower bound of A(t)");
    cmd->add_option("--a-high", s.a_high, "upper bound of A(t)");
    cmd->add_option("--noise-std", s.noise_std, "standard deviation of the driving noise");
    cmd->add_option("--offset", s.offset, "level added to every sample");
}

SimParams resolve_sim(const SimOptions& s) {
    SimParams p;
    p.length = s.length;
    p.a_low = s.a_low;
    p.a_high = s.a_high;
    p.noise_std = s.noise_std;
    p.offset = s.offset;
    if (s.seed) {
        p.seed = *s.seed;
    } else {
        std::random_device rd;
        p.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::cerr << "seed: " << p.seed << '\n';
    }
    return p;
}

TimeSeries load_series(const InputOptions& in) {
    CsvSpec spec;
    spec.path = in.path;
    spec.skip_header = !in.no_header;
    spec.missing_policy = parse_missing_policy(in.missing);
    double index = 0.0;
    if (parse_double(in.column, index) && index >= 0 && index == static_cast<double>(static_cast<std::size_t>(index))) {
        spec.column = static_cast<std::size_t>(index);
    } else {
        spec.column = in.column;
    }
    return read_csv_column(spec);
}

// Writes to output_dir/name, or to stdout when no directory was given.
void emit(const OutputOptions& out, const std::string& name, const std::string& text) {
    if (out.dir.empty()) {
        std::cout << text;
        return;
    }
    std::error_code ec;
    fs::create_directories(out.dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out.dir + "': " + ec.message());
    write_text_file(fs::path(out.dir) / name, text);
}

using ParamList = std::vector<std::pair<std::string, std::string>>;

ParamList method_params(Method m, const SalsaParams& s, const CausalParams& c, const LinearParams& l) {
    switch (m) {
        case Method::salsa:
            return {{"mu", format_double(s.mu)},
                    {"lambda", format_double(s.lambda)},
                    {"n_basis", std::to_string(s.n_basis)},
                    {"n_iter", std::to_string(s.n_iter)},
                    {"threshold_scale", format_double(s.threshold_scale)}};
        case Method::causal:
            return {{"omega", format_double(c.omega)},
                    {"nu", format_double(c.nu)},
                    {"n_harmonics", std::to_string(c.n_harmonics)},
                    {"ma_width", std::to_string(c.ma_width)}};
        case Method::linear:
            return {{"variant", std::string(to_string(l.variant))}, {"lookback", std::to_string(l.lookback)}};
    }
    return {};
}

struct ForecastConfig {
    InputOptions input;
    OutputOptions output;
    std::string method = "salsa";
    std::size_t window = 91;
    std::size_t horizon = 7;
    SalsaParams salsa;
    CausalParams causal;
    LinearParams linear;
    std::string linear_variant = "code_slope";
};

int cmd_forecast(ForecastConfig& cfg) {
    const Method method = parse_method(cfg.method);
    cfg.linear.variant = parse_linear_variant(cfg.linear_variant);
    const ReportFormat format = parse_report_format(cfg.output.format);
    if (cfg.window == 0) throw ValidationError("window must be at least 1");
    if (cfg.horizon == 0) throw ValidationError("horizon must be at least 1");

    const TimeSeries series = load_series(cfg.input);
    if (series.size() < cfg.window) {
        throw ValidationError("series has " + std::to_string(series.size()) + " samples, fewer than the window " +
                              std::to_string(cfg.window));
    }
    const auto history = series.values().last(cfg.window);
    std::vector<double> forecast;
    switch (method) {
        case Method::salsa: forecast = salsa_forecast(history, cfg.horizon, cfg.salsa); break;
        case Method::causal: forecast = causal_forecast(history, cfg.horizon, cfg.causal); break;
        case Method::linear: forecast = linear_forecast(history, cfg.horizon, cfg.linear); break;
    }

    const std::int64_t first = series.origin_index() + static_cast<std::int64_t>(series.size());
    ParamList params{{"method", std::string(to_string(method))},
                     {"window", std::to_string(cfg.window)},
                     {"horizon", std::to_string(cfg.horizon)}};
    for (auto& kv : method_params(method, cfg.salsa, cfg.causal, cfg.linear)) params.push_back(std::move(kv));

    std::ostringstream out;
    switch (format) {
        case ReportFormat::text:
            for (const auto& [k, v] : params) out << k << ' ' << v << '\n';
            out << '\n' << "index forecast\n";
            for (std::size_t j = 0; j < forecast.size(); ++j) {
                out << first + static_cast<std::int64_t>(j) << ' ' << format_double(forecast[j]) << '\n';
            }
            break;
        case ReportFormat::csv:
            out << "index,forecast\n";
            for (std::size_t j = 0; j < forecast.size(); ++j) {
                out << first + static_cast<std::int64_t>(j) << ',' << format_double(forecast[j]) << '\n';
            }
            break;
        case ReportFormat::json: {
            nlohmann::ordered_json doc;
            nlohmann::ordered_json p;
            for (const auto& [k, v] : params) p[k] = v;
            doc["parameters"] = p;
            doc["first_index"] = first;
            doc["forecast"] = forecast;
            out << doc.dump(2) << '\n';
            break;
        }
    }
    emit(cfg.output, "forecast." + std::string(file_extension(format)), out.str());
    return 0;
}

struct ExperimentCli {
    InputOptions input;
    OutputOptions output;
    SimOptions sim;
    std::vector<std::string> methods{"causal", "salsa", "linear"};
    std::optional<std::size_t> stride;
    ExperimentConfig config;
    std::string linear_variant = "code_slope";
    bool timing = false;
};

int cmd_experiment(ExperimentCli& cli) {
    ExperimentConfig& cfg = cli.config;
    cfg.methods.clear();
    for (const std::string& m : cli.methods) cfg.methods.push_back(parse_method(m));
    cfg.stride = cli.stride;
    cfg.linear.variant = parse_linear_variant(cli.linear_variant);
    const ReportFormat format = parse_report_format(cli.output.format);
    cfg.validate();

    const TimeSeries series = cli.input.path.empty() ? generate_path(resolve_sim(cli.sim)) : load_series(cli.input);
    const ExperimentResult result = run_experiment(series, cfg);

    ReportOptions ropts;
    ropts.include_timing = cli.timing;
    if (cli.output.dir.empty()) {
        std::cout << render_report(result, format, ropts);
        return 0;
    }
    for (ReportFormat f : {ReportFormat::text, ReportFormat::csv, ReportFormat::json}) {
        emit(cli.output, "report." + std::string(file_extension(f)), render_report(result, f, ropts));
    }
    emit(cli.output, "plot_data.csv", render_plot_data(result));
    if (cli.input.path.empty()) emit(cli.output, "series.csv", series_to_csv(series));
    return 0;
}

struct SweepCli {
    OutputOptions output;
    SimOptions sim;
    SweepGrid grid;
    std::size_t threads = 1;
    bool resume = false;
    std::optional<std::size_t> max_cells;
};

std::vector<double> default_mu_grid() {
    std::vector<double> mu;
    for (int i = 1; i <= 20; ++i) mu.push_back(i / 10.0);
    return mu;
}

std::string sweep_text(const SweepTable& table) {
    std::ostringstream out;
    out << "mu        lambda    n_basis   mean residual per point   trials\n";
    char buf[128];
    for (const SweepRow& r : table.rows) {
        std::snprintf(buf, sizeof(buf), "%-9g %-9g %-9zu %-25s %zu\n", r.mu, r.lambda, r.n_basis,
                      format_double(r.mean_residual_per_point).c_str(), r.trials_run);
        out << buf;
    }
    if (!table.complete) out << "(partial table)\n";
    return out.str();
}

int cmd_sweep(SweepCli& cli) {
    const ReportFormat format = parse_report_format(cli.output.format);
    cli.grid.validate();
    const fs::path dir = cli.output.dir.empty() ? fs::path(".") : fs::path(cli.output.dir);
    const fs::path csv_path = dir / "sweep.csv";

    SweepTable prior;
    if (cli.resume) {
        if (!fs::exists(csv_path)) throw IoError("--resume given but '" + csv_path.string() + "' does not exist");
        prior = sweep_from_csv(read_text_file(csv_path));
        std::cerr << "resuming with " << prior.rows.size() << " recorded row(s)\n";
    }
    const SimParams sim = resolve_sim(cli.sim);

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    // Checkpoint after every cell so an interrupted sweep can be resumed.
    SweepTable progress;
    SweepOptions opts;
    opts.threads = cli.threads;
    opts.max_cells = cli.max_cells;
    if (cli.resume) opts.resume_from = &prior;
    opts.should_stop = [] { return g_interrupted.load(); };
    opts.on_row = [&](const SweepRow& row, std::size_t index) {
        progress.rows.push_back(row);
        write_text_file(csv_path, sweep_to_csv(progress));
        std::cerr << "cell " << index + 1 << "/" << cli.grid.cell_count() << " mu=" << format_double(row.mu)
                  << " lambda=" << format_double(row.lambda) << " n_basis=" << row.n_basis << " -> "
                  << format_double(row.mean_residual_per_point) << '\n';
    };

    std::signal(SIGINT, on_sigint);
    const SweepTable table = run_sweep(cli.grid, sim, opts);
    std::signal(SIGINT, SIG_DFL);

    write_text_file(csv_path, sweep_to_csv(table));
    write_text_file(dir / "sweep.json", sweep_to_json(table));
    switch (format) {
        case ReportFormat::text: std::cout << sweep_text(table); break;
        case ReportFormat::csv: std::cout << sweep_to_csv(table); break;
        case ReportFormat::json: std::cout << sweep_to_json(table); break;
    }
    if (!table.complete) std::cerr << "sweep stopped early; rerun with --resume to finish\n";
    return 0;
}

struct SimulateCli {
    OutputOptions output;
    SimOptions sim;
};

int cmd_simulate(SimulateCli& cli) {
    const ReportFormat format = parse_report_format(cli.output.format);
    const SimParams params = resolve_sim(cli.sim);
    const TimeSeries series = generate_path(params);
    std::string text;
    switch (format) {
        case ReportFormat::csv: text = series_to_csv(series); break;
        case ReportFormat::text:
            for (double v : series.values()) text += format_double(v) + '\n';
            break;
        case ReportFormat::json: {
            nlohmann::ordered_json doc;
            doc["seed"] = params.seed;
            doc["values"] = std::vector<double>(series.values().begin(), series.values().end());
            text = doc.dump(2) + "\n";
            break;
        }
    }
    emit(cli.output, "series." + std::string(file_extension(format)), text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-Fourier (SALSA), band-limited sinc and linear forecasting of time series"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    ForecastConfig fc;
    auto* forecast = app.add_subcommand("forecast", "forecast the tail of a series with one method");
    add_input(forecast, fc.input, true);
    add_output(forecast, fc.output);
    forecast->add_option("--method", fc.method, "salsa, causal or linear");
    forecast->add_option("--window", fc.window, "history length taken from the end of the series");
    forecast->add_option("--horizon", fc.horizon, "points to forecast");
    add_salsa(forecast, fc.salsa);
    add_causal(forecast, fc.causal);
    add_linear(forecast, fc.linear, fc.linear_variant);

    ExperimentCli ec;
    auto* experiment = app.add_subcommand("experiment", "rolling-window comparison of the methods");
    add_input(experiment, ec.input, false);
    add_output(experiment, ec.output);
    add_sim(experiment, ec.sim, true);
    experiment->add_option("--methods", ec.methods, "comma-separated subset of causal,salsa,linear")
        ->delimiter(',');
    experiment->add_option("--window", ec.config.window_len, "history length per window");
    experiment->add_option("--horizon", ec.config.horizon, "points forecast per window");
    experiment->add_option("--stride", ec.stride, "window advance (defaults to the horizon)");
    experiment->add_option("--threads", ec.config.threads, "worker threads");
    experiment->add_flag("--paper-emulation", ec.config.paper_emulation,
                         "smooth the whole series once before windowing (leaks future samples into each window)");
    experiment->add_flag("--timing", ec.timing, "include wall times in the reports");
    add_salsa(experiment, ec.config.salsa);
    add_causal(experiment, ec.config.causal);
    add_linear(experiment, ec.config.linear, ec.linear_variant);

    SweepCli sc;
    sc.grid.mu_values = default_mu_grid();
    sc.grid.lambda_values = {1.0};
    sc.grid.n_basis_values = {200};
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo grid sweep of the SALSA parameters");
    add_output(sweep, sc.output);
    add_sim(sweep, sc.sim, false);
    sweep->add_option("--mu", sc.grid.mu_values, "mu values")->delimiter(',');
    sweep->add_option("--lambda", sc.grid.lambda_values, "lambda values")->delimiter(',');
    sweep->add_option("--n-basis", sc.grid.n_basis_values, "N values")->delimiter(',');
    sweep->add_option("--n-iter", sc.grid.base.n_iter, "SALSA iterations");
    sweep->add_option("--threshold-scale", sc.grid.base.threshold_scale, "soft threshold scale");
    sweep->add_option("--trials", sc.grid.trials, "simulated paths per cell");
    sweep->add_option("--window", sc.grid.window, "history length");
    sweep->add_option("--horizon", sc.grid.horizon, "points forecast per trial");
    sweep->add_option("--threads", sc.threads, "worker threads");
    sweep->add_flag("--resume", sc.resume, "continue from sweep.csv in the output directory");
    sweep->add_option("--max-cells", sc.max_cells, "stop after this many newly computed cells");

    SimulateCli mc;
    auto* simulate = app.add_subcommand("simulate", "write a random-coefficient AR path");
    add_output(simulate, mc.output);
    mc.output.format = "csv";
    add_sim(simulate, mc.sim, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*forecast) return cmd_forecast(fc);
        if (*experiment) return cmd_experiment(ec);
        if (*sweep) return cmd_sweep(sc);
        if (*simulate) return cmd_simulate(mc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

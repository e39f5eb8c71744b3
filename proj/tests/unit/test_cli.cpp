#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>

#include "salsacast/experiment.hpp"
#include "salsacast/format.hpp"
#include "salsacast/ingest.hpp"
#include "salsacast/montecarlo.hpp"
#include "salsacast/report.hpp"
#include "salsacast/salsa.hpp"

using namespace salsacast;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = SALSACAST_TEST_TMP;

int run(const std::string& args) {
    fs::create_directories(kTmp);
    const std::string cmd = std::string("\"") + SALSACAST_CLI_PATH + "\" " + args + " >\"" +
                            (kTmp / "stdout.txt").string() + "\" 2>\"" + (kTmp / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

fs::path fresh_dir(const std::string& name) {
    const fs::path d = kTmp / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::vector<double> forecast_column(const fs::path& csv) {
    const auto rows = parse_csv(slurp(csv));
    std::vector<double> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2) continue;
        double v = 0.0;
        REQUIRE(parse_double(rows[r][1], v));
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("linear forecast of a constant series") {
    const auto dir = fresh_dir("constant");
    write_text_file(dir / "in.csv", series_to_csv(TimeSeries(std::vector<double>(100, 3.25))));
    CHECK(run("forecast --input \"" + (dir / "in.csv").string() + "\" --column value --method linear --horizon 5 "
              "--format csv --output-dir \"" + dir.string() + "\"") == 0);
    const auto f = forecast_column(dir / "forecast.csv");
    REQUIRE(f.size() == 5);
    for (double v : f) CHECK(v == 3.25);
}

TEST_CASE("exit codes") {
    CHECK(run("forecast --input \"" + (kTmp / "missing.csv").string() + "\"") == 2);
    CHECK(run("simulate --length 0 --seed 1") == 1);
    CHECK(run("forecast --input x.csv --mu") == 1);
    CHECK(run("bogus") == 1);
    CHECK(run("--help") == 0);
    const auto dir = fresh_dir("short");
    write_text_file(dir / "in.csv", "v\n1\n2\n3\n");
    CHECK(run("forecast --input \"" + (dir / "in.csv").string() + "\" --window 91") == 1);
    CHECK(run("forecast --input \"" + (dir / "in.csv").string() + "\" --window 2 --mu -1") == 1);
}

TEST_CASE("forecast file equals the library result") {
    const auto dir = fresh_dir("tone");
    std::vector<double> tone(120);
    for (std::size_t t = 0; t < tone.size(); ++t) {
        tone[t] = 5.0 + 2.0 * std::cos(2.0 * std::numbers::pi * 12.0 * static_cast<double>(t) / 200.0);
    }
    const TimeSeries series(tone);
    write_text_file(dir / "tone.csv", series_to_csv(series));
    REQUIRE(run("forecast --input \"" + (dir / "tone.csv").string() + "\" --column 2 --method salsa --horizon 10 "
                "--window 91 --format csv --output-dir \"" + dir.string() + "\"") == 0);
    const auto cli = forecast_column(dir / "forecast.csv");
    const auto lib = salsa_forecast(series.values().last(91), 10, SalsaParams{});
    REQUIRE(cli.size() == lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i) CHECK(cli[i] == lib[i]);

    REQUIRE(run("forecast --input \"" + (dir / "tone.csv").string() + "\" --column 2 --method causal --horizon 4 "
                "--format csv --output-dir \"" + dir.string() + "\"") == 0);
    const auto causal = causal_forecast(series.values().last(91), 4);
    const auto cli_causal = forecast_column(dir / "forecast.csv");
    REQUIRE(cli_causal.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(cli_causal[i] == causal[i]);
}

TEST_CASE("simulate is seeded and matches the generator") {
    const auto a = fresh_dir("sim_a");
    const auto b = fresh_dir("sim_b");
    REQUIRE(run("simulate --seed 17 --length 500 --output-dir \"" + a.string() + "\"") == 0);
    REQUIRE(run("simulate --seed 17 --length 500 --output-dir \"" + b.string() + "\"") == 0);
    CHECK(slurp(a / "series.csv") == slurp(b / "series.csv"));
    SimParams p;
    p.length = 500;
    p.seed = 17;
    CHECK(slurp(a / "series.csv") == series_to_csv(generate_path(p)));

    REQUIRE(run("simulate --length 10 --output-dir \"" + a.string() + "\"") == 0);
    CHECK(slurp(kTmp / "stderr.txt").rfind("seed: ", 0) == 0);

    REQUIRE(run("simulate --seed 3 --length 10000 --output-dir \"" + a.string() + "\"") == 0);
    CsvSpec spec;
    spec.path = a / "series.csv";
    spec.column = std::string("value");
    const auto s = read_csv_column(spec);
    REQUIRE(s.size() == 10000);
    const double mean = summary_stats(s).mean;
    CHECK(mean >= 70.0);
    CHECK(mean <= 90.0);
}

TEST_CASE("experiment reports 127 windows on a 345-sample series") {
    const auto dir = fresh_dir("exp");
    REQUIRE(run("experiment --seed 9 --length 345 --horizon 2 --stride 2 --window 91 --n-iter 50 --output-dir \"" +
                dir.string() + "\"") == 0);
    for (const char* f : {"report.txt", "report.csv", "report.json", "plot_data.csv", "series.csv"}) {
        CHECK(fs::exists(dir / f));
    }
    CHECK(slurp(dir / "report.txt").find("127 windows") != std::string::npos);

    // Same run through the library.
    SimParams p;
    p.length = 345;
    p.seed = 9;
    ExperimentConfig cfg;
    cfg.horizon = 2;
    cfg.stride = 2;
    cfg.salsa.n_iter = 50;
    const auto result = run_experiment(generate_path(p), cfg);
    CHECK(slurp(dir / "report.csv") == render_report(result, ReportFormat::csv));
    CHECK(slurp(dir / "plot_data.csv") == render_plot_data(result));

    const auto again = fresh_dir("exp_threads");
    REQUIRE(run("experiment --seed 9 --length 345 --horizon 2 --stride 2 --n-iter 50 --threads 3 --output-dir \"" +
                again.string() + "\"") == 0);
    CHECK(slurp(again / "report.json") == slurp(dir / "report.json"));
    CHECK(slurp(again / "plot_data.csv") == slurp(dir / "plot_data.csv"));
}

TEST_CASE("sweep interrupted and resumed matches an uninterrupted run") {
    const std::string grid = "--seed 5 --mu 0.2,0.6,1.4 --lambda 1 --n-basis 128 --trials 8 --n-iter 40 ";
    const auto full = fresh_dir("sweep_full");
    REQUIRE(run("sweep " + grid + "--output-dir \"" + full.string() + "\"") == 0);

    const auto part = fresh_dir("sweep_part");
    REQUIRE(run("sweep " + grid + "--max-cells 1 --output-dir \"" + part.string() + "\"") == 0);
    CHECK(sweep_from_csv(slurp(part / "sweep.csv")).rows.size() == 1);
    CHECK(slurp(part / "sweep.json").find("\"complete\": false") != std::string::npos);
    REQUIRE(run("sweep " + grid + "--resume --output-dir \"" + part.string() + "\"") == 0);
    CHECK(slurp(part / "sweep.csv") == slurp(full / "sweep.csv"));
    CHECK(slurp(part / "sweep.json") == slurp(full / "sweep.json"));

    const auto rows = sweep_from_csv(slurp(full / "sweep.csv")).rows;
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].mu == 0.2);
    CHECK(rows[2].mu == 1.4);

    const auto one = fresh_dir("sweep_one");
    REQUIRE(run("sweep --seed 1 --mu 0.6 --trials 1 --n-iter 20 --output-dir \"" + one.string() + "\"") == 0);
    CHECK(sweep_from_csv(slurp(one / "sweep.csv")).rows.size() == 1);

    CHECK(run("sweep --seed 1 --resume --output-dir \"" + fresh_dir("sweep_none").string() + "\"") == 2);
}

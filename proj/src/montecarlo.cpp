#include "salsacast/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "salsacast/errors.hpp"
#include "salsacast/format.hpp"
#include "salsacast/ingest.hpp"

namespace salsacast {

void SimParams::validate() const {
    if (length < 2) throw ValidationError("simulation length must be at least 2");
    if (!std::isfinite(a_low) || !std::isfinite(a_high) || a_low > a_high) {
        throw ValidationError("A(t) bounds must be finite with a_low <= a_high");
    }
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw ValidationError("noise_std must be nonnegative");
    if (!std::isfinite(offset)) throw ValidationError("offset must be finite");
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    std::uint64_t z = parent ^ (index + 0x9E3779B97F4A7C15ULL + (parent << 6) + (parent >> 2));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TimeSeries generate_path(const SimParams& params, std::uint64_t seed) {
    params.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coefficient(params.a_low, params.a_high);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<double> z(params.length);
    double prev = params.noise_std * noise(rng);
    z[0] = prev;
    for (std::size_t t = 1; t < params.length; ++t) {
        // a_low == a_high is a degenerate but valid distribution.
        const double a = params.a_low == params.a_high ? params.a_low : coefficient(rng);
        prev = a * prev + params.noise_std * noise(rng);
        z[t] = prev;
    }
    for (double& v : z) v += params.offset;
    return TimeSeries(std::move(z));
}

TimeSeries generate_path(const SimParams& params) { return generate_path(params, params.seed); }

void SweepGrid::validate() const {
    if (mu_values.empty() || lambda_values.empty() || n_basis_values.empty()) {
        throw ValidationError("sweep grid lists must be nonempty");
    }
    if (trials == 0) throw ValidationError("trials must be at least 1");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    if (window == 0) throw ValidationError("window must be at least 1");
    for (std::size_t i = 0; i < cell_count(); ++i) {
        const Cell c = cell(i);
        SalsaParams p = base;
        p.mu = c.mu;
        p.lambda = c.lambda;
        p.n_basis = c.n_basis;
        p.validate();
        if (window + horizon > c.n_basis) {
            throw ValidationError("window + horizon exceeds n_basis " + std::to_string(c.n_basis));
        }
    }
}

std::size_t SweepGrid::cell_count() const noexcept {
    return mu_values.size() * lambda_values.size() * n_basis_values.size();
}

SweepGrid::Cell SweepGrid::cell(std::size_t index) const {
    if (index >= cell_count()) throw ValidationError("sweep cell index out of range");
    const std::size_t nb = n_basis_values.size();
    const std::size_t nl = lambda_values.size();
    return Cell{mu_values[index / (nl * nb)], lambda_values[(index / nb) % nl], n_basis_values[index % nb]};
}

namespace {

SweepRow run_cell(const SweepGrid& grid, const SimParams& sim, std::size_t index, std::size_t threads) {
    const SweepGrid::Cell cell = grid.cell(index);
    SweepRow row;
    row.mu = cell.mu;
    row.lambda = cell.lambda;
    row.n_basis = cell.n_basis;

    SalsaParams params = grid.base;
    params.mu = cell.mu;
    params.lambda = cell.lambda;
    params.n_basis = cell.n_basis;

    SimParams path_params = sim;
    path_params.length = grid.window + grid.horizon;
    const std::uint64_t cell_seed = derive_seed(sim.seed, index);

    std::vector<double> per_trial(grid.trials, 0.0);
    try {
        detail::parallel_for(grid.trials, threads, [&](std::size_t trial) {
            const TimeSeries path = generate_path(path_params, derive_seed(cell_seed, trial));
            const auto values = path.values();
            const auto forecast = salsa_forecast(values.first(grid.window), grid.horizon, params);
            per_trial[trial] = l2_residual(forecast, values.subspan(grid.window, grid.horizon)).per_point;
        });
    } catch (const std::exception& e) {
        row.mean_residual_per_point = std::numeric_limits<double>::quiet_NaN();
        row.trials_run = 0;
        row.error = e.what();
        return row;
    }

    double sum = 0.0;
    for (double v : per_trial) sum += v;
    row.mean_residual_per_point = sum / static_cast<double>(grid.trials);
    row.trials_run = grid.trials;
    if (!std::isfinite(row.mean_residual_per_point)) row.error = "non-finite residual";
    return row;
}

bool reusable(const SweepRow& row, const SweepGrid::Cell& cell, std::size_t trials) {
    return row.error.empty() && row.trials_run == trials && row.mu == cell.mu && row.lambda == cell.lambda &&
           row.n_basis == cell.n_basis && std::isfinite(row.mean_residual_per_point);
}

}  // namespace

SweepTable run_sweep(const SweepGrid& grid, const SimParams& sim, const SweepOptions& options) {
    grid.validate();
    sim.validate();

    SweepTable table;
    const std::size_t cells = grid.cell_count();
    std::size_t executed = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        if (options.resume_from != nullptr && i < options.resume_from->rows.size()) {
            const SweepRow& prior = options.resume_from->rows[i];
            const SweepGrid::Cell cell = grid.cell(i);
            if (prior.mu != cell.mu || prior.lambda != cell.lambda || prior.n_basis != cell.n_basis) {
                throw ValidationError("resume table row " + std::to_string(i + 1) + " does not match the sweep grid");
            }
            if (reusable(prior, cell, grid.trials)) {
                table.rows.push_back(prior);
                if (options.on_row) options.on_row(prior, i);
                continue;
            }
        }
        if (options.max_cells && executed >= *options.max_cells) return table;
        if (options.should_stop && options.should_stop()) return table;

        table.rows.push_back(run_cell(grid, sim, i, options.threads));
        ++executed;
        if (options.on_row) options.on_row(table.rows.back(), i);
    }
    table.complete = true;
    return table;
}

std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "mu,lambda,n_basis,mean_residual_per_point,trials_run\n";
    for (const SweepRow& row : table.rows) {
        out << format_double(row.mu) << ',' << format_double(row.lambda) << ',' << row.n_basis << ','
            << format_double(row.mean_residual_per_point) << ',' << row.trials_run << '\n';
    }
    return out.str();
}

SweepTable sweep_from_csv(std::string_view text) {
    const auto rows = parse_csv(text);
    if (rows.empty() || rows.front().size() < 5 || rows.front()[0] != "mu") {
        throw ValidationError("sweep table must start with the header mu,lambda,n_basis,mean_residual_per_point,trials_run");
    }
    SweepTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& cells = rows[r];
        if (cells.size() == 1 && cells[0].empty()) continue;
        if (cells.size() < 5) throw ValidationError("sweep table row " + std::to_string(r + 1) + " is truncated");
        SweepRow row;
        double n_basis = 0.0;
        double trials = 0.0;
        const bool ok = parse_double(cells[0], row.mu) && parse_double(cells[1], row.lambda) &&
                        parse_double(cells[2], n_basis) && parse_double(cells[4], trials);
        if (!ok || n_basis < 0 || trials < 0) {
            throw ValidationError("sweep table row " + std::to_string(r + 1) + " is malformed");
        }
        row.n_basis = static_cast<std::size_t>(n_basis);
        row.trials_run = static_cast<std::size_t>(trials);
        if (!parse_double(cells[3], row.mean_residual_per_point) || !std::isfinite(row.mean_residual_per_point)) {
            row.mean_residual_per_point = std::numeric_limits<double>::quiet_NaN();
            row.error = "cell failed";
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string sweep_to_json(const SweepTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& row : table.rows) {
        nlohmann::ordered_json j;
        j["mu"] = row.mu;
        j["lambda"] = row.lambda;
        j["n_basis"] = row.n_basis;
        if (std::isfinite(row.mean_residual_per_point)) {
            j["mean_residual_per_point"] = row.mean_residual_per_point;
        } else {
            j["mean_residual_per_point"] = nullptr;
        }
        j["trials_run"] = row.trials_run;
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["complete"] = table.complete;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace salsacast

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salsacast/salsa.hpp"
#include "salsacast/timeseries.hpp"

namespace salsacast {

/// Random-coefficient AR(1) process z(t) = A(t) z(t-1) + g(t), plus a constant offset.
struct SimParams {
    std::size_t length = 98;
    double a_low = 0.0;  ///< A(t) ~ U[a_low, a_high]
    double a_high = 1.0;
    double noise_std = 1.0;  ///< g(t) ~ N(0, noise_std^2)
    double offset = 80.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// splitmix64 finalizer over (parent, index); used for every per-cell and per-trial stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// z(0) = g(0); z(t) = A(t) z(t-1) + g(t); offset added to every sample.
[[nodiscard]] TimeSeries generate_path(const SimParams& params);
[[nodiscard]] TimeSeries generate_path(const SimParams& params, std::uint64_t seed);

struct SweepGrid {
    std::vector<double> mu_values;
    std::vector<double> lambda_values;
    std::vector<std::size_t> n_basis_values;
    std::size_t trials = 1000;
    std::size_t horizon = 7;
    std::size_t window = 91;
    SalsaParams base;  ///< n_iter, threshold_scale, rel_tol; mu/lambda/n_basis come from the grid

    void validate() const;
    [[nodiscard]] std::size_t cell_count() const noexcept;

    struct Cell {
        double mu;
        double lambda;
        std::size_t n_basis;
    };
    /// Cells are ordered mu-major, then lambda, then n_basis.
    [[nodiscard]] Cell cell(std::size_t index) const;
};

struct SweepRow {
    double mu = 0.0;
    double lambda = 0.0;
    std::size_t n_basis = 0;
    double mean_residual_per_point = 0.0;
    std::size_t trials_run = 0;
    std::string error;  ///< non-empty when the cell failed
};

struct SweepTable {
    std::vector<SweepRow> rows;
    bool complete = false;  ///< false when the sweep stopped before the last cell
};

struct SweepOptions {
    std::size_t threads = 1;
    std::optional<std::size_t> max_cells;      ///< stop after this many newly executed cells
    const SweepTable* resume_from = nullptr;   ///< completed leading rows are reused verbatim
    std::function<bool()> should_stop;         ///< polled between cells
    std::function<void(const SweepRow&, std::size_t index)> on_row;
};

/**
 * For each grid cell, simulates `trials` paths of length window + horizon with
 * seeds derived from (sim.seed, cell index, trial), forecasts the last
 * `horizon` samples from the first `window` with SALSA, and averages the
 * per-point squared residual. Output is independent of `threads`.
 */
[[nodiscard]] SweepTable run_sweep(const SweepGrid& grid, const SimParams& sim, const SweepOptions& options = {});

/// Columns: mu,lambda,n_basis,mean_residual_per_point,trials_run[,error]
[[nodiscard]] std::string sweep_to_csv(const SweepTable& table);
[[nodiscard]] SweepTable sweep_from_csv(std::string_view text);
[[nodiscard]] std::string sweep_to_json(const SweepTable& table);

}  // namespace salsacast

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "salsacast/baselines.hpp"
#include "salsacast/causal.hpp"
#include "salsacast/salsa.hpp"
#include "salsacast/timeseries.hpp"

namespace salsacast {

/// Report column order: Causal, Salsa, Linear.
enum class Method { causal, salsa, linear };

inline constexpr std::array<Method, 3> kAllMethods{Method::causal, Method::salsa, Method::linear};

[[nodiscard]] std::string_view to_string(Method method) noexcept;
[[nodiscard]] std::string_view display_name(Method method) noexcept;
[[nodiscard]] Method parse_method(std::string_view name);

struct ExperimentConfig {
    std::size_t window_len = 91;
    std::size_t horizon = 7;
    std::optional<std::size_t> stride;  ///< defaults to horizon
    std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
    SalsaParams salsa;
    CausalParams causal;
    LinearParams linear;
    /// Smooth the whole series once before windowing (leaks future samples into the
    /// last smoothed points of each window). Off by default.
    bool paper_emulation = false;
    std::size_t threads = 1;

    [[nodiscard]] std::size_t effective_stride() const noexcept { return stride.value_or(horizon); }
    void validate() const;
};

struct MethodResult {
    Method method = Method::causal;
    /// Concatenated forecasts; entry i targets truth index window_len + (i / horizon) * stride + i % horizon.
    /// Entries of failed windows are NaN.
    std::vector<double> track;
    std::vector<double> window_per_point;  ///< per-window residual per point (NaN for failed windows)
    std::vector<std::size_t> failed_windows;
    ResidualReport residual;  ///< over successful windows
    SummaryStats track_stats;
    double wall_seconds = 0.0;
};

struct ExperimentResult {
    std::size_t window_len = 0;
    std::size_t horizon = 0;
    std::size_t stride = 0;
    std::size_t n_windows = 0;
    std::vector<double> series;    ///< raw input
    std::vector<double> smoothed;  ///< moving average of the whole series, for plotting
    std::vector<std::size_t> target_indices;
    std::vector<double> truth;  ///< series at target_indices
    SummaryStats truth_stats;
    std::vector<MethodResult> methods;

    [[nodiscard]] const MethodResult* find(Method method) const noexcept;
};

/// Rolling-window forecast comparison. Windows may run in parallel; the result does not depend on threads.
/// @throws ValidationError if the config is invalid or the series is too short for one window.
[[nodiscard]] ExperimentResult run_experiment(const TimeSeries& series, const ExperimentConfig& config);

}  // namespace salsacast

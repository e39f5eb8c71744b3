#include "salsacast/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "parallel.hpp"
#include "salsacast/errors.hpp"

namespace salsacast {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::causal: return "causal";
        case Method::salsa: return "salsa";
        case Method::linear: return "linear";
    }
    return "unknown";
}

std::string_view display_name(Method method) noexcept {
    switch (method) {
        case Method::causal: return "Causal";
        case Method::salsa: return "Salsa";
        case Method::linear: return "Linear";
    }
    return "Unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (name == to_string(m) || name == display_name(m)) return m;
    }
    throw ValidationError("unknown method '" + std::string(name) + "' (expected causal, salsa or linear)");
}

void ExperimentConfig::validate() const {
    if (window_len == 0) throw ValidationError("window length must be at least 1");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    if (stride && *stride == 0) throw ValidationError("stride must be at least 1");
    if (methods.empty()) throw ValidationError("no methods");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i] == methods[j]) throw ValidationError("method listed twice");
        }
    }
    for (Method m : methods) {
        switch (m) {
            case Method::salsa:
                salsa.validate();
                if (window_len + horizon > salsa.n_basis) {
                    throw ValidationError("window + horizon exceeds SALSA n_basis");
                }
                break;
            case Method::causal:
                causal.validate();
                if (causal.coefficient_count() != window_len) {
                    throw ValidationError("causal method needs window length 2 * n_harmonics + 1 = " +
                                          std::to_string(causal.coefficient_count()));
                }
                if (window_len < causal.ma_width) throw ValidationError("window shorter than moving-average width");
                break;
            case Method::linear:
                linear.validate();
                break;
        }
    }
}

const MethodResult* ExperimentResult::find(Method method) const noexcept {
    for (const MethodResult& r : methods) {
        if (r.method == method) return &r;
    }
    return nullptr;
}

ExperimentResult run_experiment(const TimeSeries& series, const ExperimentConfig& config) {
    config.validate();
    const std::size_t stride = config.effective_stride();
    const auto windows = rolling_windows(series, config.window_len, config.horizon, stride);
    const auto values = series.values();

    ExperimentResult result;
    result.window_len = config.window_len;
    result.horizon = config.horizon;
    result.stride = stride;
    result.n_windows = windows.size();
    result.series.assign(values.begin(), values.end());

    const std::size_t width = config.causal.ma_width;
    if (values.size() >= width && width % 2 == 1) result.smoothed = moving_average(values, width);

    result.target_indices.reserve(windows.size() * config.horizon);
    for (const RollingWindow& w : windows) {
        for (std::size_t j = 0; j < config.horizon; ++j) {
            result.target_indices.push_back(static_cast<std::size_t>(w.window.s) + 1 + j);
        }
    }
    result.truth.reserve(result.target_indices.size());
    for (std::size_t idx : result.target_indices) result.truth.push_back(values[idx]);
    result.truth_stats = summary_stats(result.truth);

    std::optional<CausalModel> causal_model;
    std::vector<double> full_smoothed;
    for (Method m : config.methods) {
        if (m != Method::causal) continue;
        causal_model.emplace(config.causal);
        if (config.paper_emulation) full_smoothed = moving_average(values, width);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (Method method : config.methods) {
        MethodResult mr;
        mr.method = method;
        mr.track.assign(windows.size() * config.horizon, nan);
        mr.window_per_point.assign(windows.size(), nan);
        std::vector<char> failed(windows.size(), 0);

        const auto start = std::chrono::steady_clock::now();
        detail::parallel_for(windows.size(), config.threads, [&](std::size_t w) {
            const RollingWindow& rw = windows[w];
            const auto q = static_cast<std::size_t>(rw.window.q);
            const auto history = values.subspan(q, config.window_len);
            try {
                std::vector<double> forecast;
                switch (method) {
                    case Method::salsa:
                        forecast = salsa_forecast(history, config.horizon, config.salsa);
                        break;
                    case Method::causal:
                        forecast = config.paper_emulation
                                       ? causal_model->forecast_smoothed(
                                             std::span<const double>(full_smoothed).subspan(q, config.window_len),
                                             config.horizon)
                                       : causal_model->forecast(history, config.horizon);
                        break;
                    case Method::linear:
                        forecast = linear_forecast(history, config.horizon, config.linear);
                        break;
                }
                for (double v : forecast) {
                    if (!std::isfinite(v)) throw ValidationError("non-finite forecast");
                }
                std::copy(forecast.begin(), forecast.end(),
                          mr.track.begin() + static_cast<std::ptrdiff_t>(w * config.horizon));
                mr.window_per_point[w] = l2_residual(forecast, rw.truth).per_point;
            } catch (const std::exception&) {
                failed[w] = 1;
            }
        });
        mr.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::vector<double> ok_track;
        std::vector<double> ok_truth;
        for (std::size_t w = 0; w < windows.size(); ++w) {
            if (failed[w]) {
                mr.failed_windows.push_back(w);
                continue;
            }
            for (std::size_t j = 0; j < config.horizon; ++j) {
                ok_track.push_back(mr.track[w * config.horizon + j]);
                ok_truth.push_back(windows[w].truth[j]);
            }
        }
        if (!ok_track.empty()) {
            mr.residual = l2_residual(ok_track, ok_truth);
            mr.track_stats = summary_stats(ok_track);
        } else {
            mr.residual = ResidualReport{nan, nan, 0};
            mr.track_stats = SummaryStats{nan, nan, nan, nan, nan};
        }
        result.methods.push_back(std::move(mr));
    }
    return result;
}

}  // namespace salsacast

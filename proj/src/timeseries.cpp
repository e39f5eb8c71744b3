#include "salsacast/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salsacast/errors.hpp"

namespace salsacast {

TimeSeries::TimeSeries(std::vector<double> values, std::int64_t origin_index, double step)
    : values_(std::move(values)), origin_index_(origin_index), step_(step) {
    if (values_.empty()) {
        throw ValidationError("empty input");
    }
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw ValidationError("time series step must be positive and finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("time series value at position " + std::to_string(i) + " is not finite");
        }
    }
}

SummaryStats summary_stats(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("empty input");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    SummaryStats stats;
    stats.min = *lo;
    stats.max = *hi;
    stats.range = stats.max - stats.min;

    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    // Keep mean inside [min, max] despite rounding.
    stats.mean = std::clamp(sum / n, stats.min, stats.max);

    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.std = std::sqrt(ss / (n - 1.0));
    }
    return stats;
}

SummaryStats summary_stats(const TimeSeries& series) { return summary_stats(series.values()); }

ResidualReport l2_residual(std::span<const double> forecast, std::span<const double> actual) {
    if (forecast.empty() || actual.empty()) {
        throw ValidationError("empty input");
    }
    if (forecast.size() != actual.size()) {
        throw ValidationError("l2_residual: length mismatch (" + std::to_string(forecast.size()) + " vs " +
                              std::to_string(actual.size()) + ")");
    }
    ResidualReport report;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        const double e = forecast[i] - actual[i];
        report.total_l2 += e * e;
    }
    report.n_points = forecast.size();
    report.per_point = report.total_l2 / static_cast<double>(report.n_points);
    return report;
}

std::size_t rolling_window_count(std::size_t length, std::size_t window_len, std::size_t horizon,
                                 std::size_t stride) noexcept {
    if (stride == 0 || window_len + horizon > length) return 0;
    return (length - window_len - horizon) / stride + 1;
}

std::vector<RollingWindow> rolling_windows(const TimeSeries& series, std::size_t window_len, std::size_t horizon,
                                           std::size_t stride) {
    if (stride == 0) throw ValidationError("stride must be at least 1");
    if (window_len == 0) throw ValidationError("window length must be at least 1");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    if (window_len + horizon > series.size()) {
        throw ValidationError("series too short: " + std::to_string(series.size()) + " samples for window " +
                              std::to_string(window_len) + " + horizon " + std::to_string(horizon));
    }
    const std::size_t count = rolling_window_count(series.size(), window_len, horizon, stride);
    const auto values = series.values();

    std::vector<RollingWindow> out;
    out.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t start = w * stride;
        RollingWindow rw;
        rw.window = Window{static_cast<std::int64_t>(start), static_cast<std::int64_t>(start + window_len - 1)};
        const auto truth = values.subspan(start + window_len, horizon);
        rw.truth.assign(truth.begin(), truth.end());
        out.push_back(std::move(rw));
    }
    return out;
}

}  // namespace salsacast

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace salsacast {

/**
 * Uniformly sampled, finite, real-valued series.
 *
 * The sample at position i has time index origin_index() + i and
 * physical time (origin_index() + i) * step().
 */
class TimeSeries {
public:
    /// @throws ValidationError if values is empty, contains non-finite entries, or step <= 0.
    explicit TimeSeries(std::vector<double> values, std::int64_t origin_index = 0, double step = 1.0);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::int64_t origin_index() const noexcept { return origin_index_; }
    [[nodiscard]] double step() const noexcept { return step_; }

private:
    std::vector<double> values_;
    std::int64_t origin_index_;
    double step_;
};

/// Inclusive index range [q, s] into a series.
struct Window {
    std::int64_t q = 0;
    std::int64_t s = 0;

    [[nodiscard]] std::size_t length() const noexcept { return static_cast<std::size_t>(s - q + 1); }
    friend bool operator==(const Window&, const Window&) = default;
};

struct SummaryStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation (n - 1 denominator); 0 for a single sample
    double range = 0.0;
};

struct ResidualReport {
    double total_l2 = 0.0;  ///< sum of squared errors (no square root)
    double per_point = 0.0;
    std::size_t n_points = 0;
};

struct RollingWindow {
    Window window;
    std::vector<double> truth;  ///< the `horizon` samples following the window
};

/// @throws ValidationError "empty input" on an empty sequence.
[[nodiscard]] SummaryStats summary_stats(std::span<const double> values);
[[nodiscard]] SummaryStats summary_stats(const TimeSeries& series);

/// Sum of squared differences and its per-point mean.
/// @throws ValidationError on empty input or length mismatch.
[[nodiscard]] ResidualReport l2_residual(std::span<const double> forecast, std::span<const double> actual);

/// floor((length - window_len - horizon) / stride) + 1, or 0 if the series is too short.
[[nodiscard]] std::size_t rolling_window_count(std::size_t length, std::size_t window_len, std::size_t horizon,
                                               std::size_t stride) noexcept;

/// Windows start at offsets 0, stride, 2*stride, ... while the following truth segment fits.
/// @throws ValidationError if stride, window_len or horizon is zero, or the series is too short for one window.
[[nodiscard]] std::vector<RollingWindow> rolling_windows(const TimeSeries& series, std::size_t window_len,
                                                         std::size_t horizon, std::size_t stride);

}  // namespace salsacast

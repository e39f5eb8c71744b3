#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace salsacast {

enum class LinearVariant {
    two_point_span,  ///< line through z(t0 - A) and z(t0)
    code_slope,      ///< (z(t0) - z(t0 - 1)) / horizon
};

struct LinearParams {
    std::size_t lookback = 1;  ///< A, only used by two_point_span
    LinearVariant variant = LinearVariant::code_slope;

    void validate() const;
};

[[nodiscard]] LinearVariant parse_linear_variant(std::string_view name);
[[nodiscard]] std::string_view to_string(LinearVariant variant) noexcept;

/// forecast_j = z(t0) + slope * j, j = 1..horizon, with t0 the last history sample.
[[nodiscard]] std::vector<double> linear_forecast(std::span<const double> history, std::size_t horizon,
                                                  const LinearParams& params = {});

}  // namespace salsacast

#include "salsacast/baselines.hpp"

#include <cmath>
#include <string>

#include "salsacast/errors.hpp"

namespace salsacast {

void LinearParams::validate() const {
    if (lookback == 0) throw ValidationError("linear lookback must be at least 1");
}

LinearVariant parse_linear_variant(std::string_view name) {
    if (name == "two_point_span" || name == "two-point-span") return LinearVariant::two_point_span;
    if (name == "code_slope" || name == "code-slope") return LinearVariant::code_slope;
    throw ValidationError("unknown linear variant '" + std::string(name) + "'");
}

std::string_view to_string(LinearVariant variant) noexcept {
    switch (variant) {
        case LinearVariant::two_point_span: return "two_point_span";
        case LinearVariant::code_slope: return "code_slope";
    }
    return "unknown";
}

std::vector<double> linear_forecast(std::span<const double> history, std::size_t horizon, const LinearParams& params) {
    params.validate();
    if (horizon == 0) throw ValidationError("horizon must be at least 1");

    const std::size_t needed = params.variant == LinearVariant::two_point_span ? params.lookback + 1 : 2;
    if (history.size() < needed) {
        throw ValidationError("linear forecast needs at least " + std::to_string(needed) + " history samples, got " +
                              std::to_string(history.size()));
    }
    const double last = history.back();
    double slope = 0.0;
    switch (params.variant) {
        case LinearVariant::two_point_span:
            slope = (last - history[history.size() - 1 - params.lookback]) / static_cast<double>(params.lookback);
            break;
        case LinearVariant::code_slope:
            slope = (last - history[history.size() - 2]) / static_cast<double>(horizon);
            break;
    }
    if (!std::isfinite(slope) || !std::isfinite(last)) throw ValidationError("non-finite input");

    std::vector<double> out(horizon);
    for (std::size_t j = 0; j < horizon; ++j) out[j] = last + slope * static_cast<double>(j + 1);
    return out;
}

}  // namespace salsacast

#pragma once

#include <string>
#include <string_view>

namespace salsacast {

/// Shortest decimal form that parses back to the same double; "nan"/"inf"/"-inf" for non-finite values.
[[nodiscard]] std::string format_double(double value);

/// Parses a complete decimal token; returns false on failure or trailing garbage.
[[nodiscard]] bool parse_double(std::string_view token, double& out) noexcept;

}  // namespace salsacast

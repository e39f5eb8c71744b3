#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "salsacast/timeseries.hpp"

namespace salsacast {

enum class MissingPolicy { drop, forward_fill, error };

[[nodiscard]] MissingPolicy parse_missing_policy(std::string_view name);

struct CsvSpec {
    std::filesystem::path path;
    /// 1-based column index or header name (header names require skip_header).
    std::variant<std::size_t, std::string> column = std::size_t{1};
    bool skip_header = true;
    MissingPolicy missing_policy = MissingPolicy::drop;
};

using CsvRow = std::vector<std::string>;

/// RFC-4180 style parsing: comma delimiter, double-quoted fields, "" escapes, CRLF or LF.
[[nodiscard]] std::vector<CsvRow> parse_csv(std::string_view text);

/**
 * Reads one numeric column. Blank cells and cells that do not parse as a
 * finite number are gaps, handled per missing_policy; forward_fill drops
 * leading gaps. Row order is kept.
 *
 * @throws IoError if the file cannot be read.
 * @throws ValidationError on an unresolvable column, a gap under the error policy, or no usable rows.
 */
[[nodiscard]] TimeSeries read_csv_column(const CsvSpec& spec);

/// Two-column CSV "t,<name>" with values in shortest round-trip form.
[[nodiscard]] std::string series_to_csv(const TimeSeries& series, std::string_view name = "value");

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace salsacast

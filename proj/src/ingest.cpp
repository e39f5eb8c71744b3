#include "salsacast/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "salsacast/errors.hpp"
#include "salsacast/format.hpp"

namespace salsacast {

MissingPolicy parse_missing_policy(std::string_view name) {
    if (name == "drop") return MissingPolicy::drop;
    if (name == "forward_fill" || name == "forward-fill" || name == "ffill") return MissingPolicy::forward_fill;
    if (name == "error") return MissingPolicy::error;
    throw ValidationError("unknown missing-value policy '" + std::string(name) +
                          "' (expected drop, forward_fill or error)");
}

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_row();
                break;
            case '\n':
                end_row();
                break;
            default:
                field.push_back(ch);
                row_has_content = true;
        }
    }
    if (in_quotes) throw ValidationError("unterminated quoted CSV field");
    if (row_has_content || !row.empty()) end_row();
    return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

std::size_t resolve_column(const CsvSpec& spec, const std::vector<CsvRow>& rows) {
    if (const auto* index = std::get_if<std::size_t>(&spec.column)) {
        if (*index == 0) throw ValidationError("CSV column index is 1-based");
        return *index - 1;
    }
    const std::string& name = std::get<std::string>(spec.column);
    if (!spec.skip_header) throw ValidationError("column '" + name + "' given by name but the file has no header");
    if (rows.empty()) throw ValidationError("CSV file is empty");
    const CsvRow& header = rows.front();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return i;
    }
    throw ValidationError("column '" + name + "' not found in the CSV header");
}

std::optional<double> cell_value(const CsvRow& row, std::size_t column) {
    if (column >= row.size()) return std::nullopt;
    double v = 0.0;
    if (!parse_double(row[column], v) || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

TimeSeries read_csv_column(const CsvSpec& spec) {
    const std::string text = read_text_file(spec.path);
    const auto rows = parse_csv(text);
    const std::size_t column = resolve_column(spec, rows);

    std::size_t max_width = 0;
    for (const CsvRow& r : rows) max_width = std::max(max_width, r.size());
    if (!rows.empty() && column >= max_width) {
        throw ValidationError("column " + std::to_string(column + 1) + " is beyond the widest row (" +
                              std::to_string(max_width) + " columns)");
    }

    std::vector<double> values;
    values.reserve(rows.size());
    std::optional<double> last;
    for (std::size_t r = spec.skip_header ? 1 : 0; r < rows.size(); ++r) {
        const auto v = cell_value(rows[r], column);
        if (v) {
            values.push_back(*v);
            last = v;
            continue;
        }
        switch (spec.missing_policy) {
            case MissingPolicy::drop:
                break;
            case MissingPolicy::forward_fill:
                if (last) values.push_back(*last);
                break;
            case MissingPolicy::error:
                throw ValidationError("missing or non-numeric value in row " + std::to_string(r + 1) + ", column " +
                                      std::to_string(column + 1) + " of '" + spec.path.string() + "'");
        }
    }
    if (values.empty()) throw ValidationError("no usable rows in '" + spec.path.string() + "'");
    return TimeSeries(std::move(values));
}

std::string series_to_csv(const TimeSeries& series, std::string_view name) {
    std::ostringstream out;
    out << "t," << name << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.origin_index() + static_cast<std::int64_t>(i) << ',' << format_double(series[i]) << '\n';
    }
    return out.str();
}

}  // namespace salsacast

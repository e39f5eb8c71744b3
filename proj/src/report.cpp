#include "salsacast/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "salsacast/errors.hpp"
#include "salsacast/format.hpp"

namespace salsacast {

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text" || name == "txt") return ReportFormat::text;
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw ValidationError("unsupported report format '" + std::string(name) + "' (expected text, csv or json)");
}

std::string_view file_extension(ReportFormat format) noexcept {
    switch (format) {
        case ReportFormat::text: return "txt";
        case ReportFormat::csv: return "csv";
        case ReportFormat::json: return "json";
    }
    return "txt";
}

namespace {

// Methods present in the result, in report column order.
std::vector<const MethodResult*> ordered_methods(const ExperimentResult& result) {
    std::vector<const MethodResult*> out;
    for (Method m : kAllMethods) {
        if (const MethodResult* r = result.find(m)) out.push_back(r);
    }
    return out;
}

constexpr std::array<const char*, 5> kStatLabels{"Min", "Max", "Mean", "STD", "Range"};
constexpr std::array<const char*, 5> kStatKeys{"min", "max", "mean", "std", "range"};

double stat_at(const SummaryStats& s, std::size_t i) {
    switch (i) {
        case 0: return s.min;
        case 1: return s.max;
        case 2: return s.mean;
        case 3: return s.std;
        default: return s.range;
    }
}

std::string short_number(double v) {
    if (!std::isfinite(v)) return format_double(v);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void pad_right(std::ostringstream& out, const std::string& s, std::size_t width) {
    out << s;
    for (std::size_t i = s.size(); i < width; ++i) out << ' ';
}

void pad_left(std::ostringstream& out, const std::string& s, std::size_t width) {
    for (std::size_t i = s.size(); i < width; ++i) out << ' ';
    out << s;
}

std::string render_text(const ExperimentResult& result, const std::vector<const MethodResult*>& methods,
                        const ReportOptions& options) {
    constexpr std::size_t label_w = 28;
    constexpr std::size_t col_w = 14;
    std::ostringstream out;
    out << "Rolling-window forecast comparison: window " << result.window_len << ", horizon " << result.horizon
        << ", stride " << result.stride << ", " << result.n_windows << " windows\n\n";

    pad_right(out, "Data Type", label_w);
    pad_left(out, "Raw Data", col_w);
    for (const MethodResult* m : methods) pad_left(out, std::string(display_name(m->method)), col_w);
    out << '\n';

    for (std::size_t i = 0; i < kStatLabels.size(); ++i) {
        pad_right(out, kStatLabels[i], label_w);
        pad_left(out, short_number(stat_at(result.truth_stats, i)), col_w);
        for (const MethodResult* m : methods) pad_left(out, short_number(stat_at(m->track_stats, i)), col_w);
        out << '\n';
    }
    pad_right(out, "Total L2 residual", label_w);
    pad_left(out, "", col_w);
    for (const MethodResult* m : methods) pad_left(out, short_number(m->residual.total_l2), col_w);
    out << '\n';
    pad_right(out, "Total L2 residual per point", label_w);
    pad_left(out, "", col_w);
    for (const MethodResult* m : methods) pad_left(out, short_number(m->residual.per_point), col_w);
    out << '\n';

    for (const MethodResult* m : methods) {
        if (!m->failed_windows.empty()) {
            out << display_name(m->method) << ": " << m->failed_windows.size() << " failed window(s)\n";
        }
    }
    if (options.include_timing) {
        out << "\nWall time (s):";
        for (const MethodResult* m : methods) out << ' ' << display_name(m->method) << '=' << short_number(m->wall_seconds);
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const ExperimentResult& result, const std::vector<const MethodResult*>& methods,
                       const ReportOptions& options) {
    std::ostringstream out;
    out << "statistic,raw";
    for (const MethodResult* m : methods) out << ',' << to_string(m->method);
    out << '\n';
    for (std::size_t i = 0; i < kStatKeys.size(); ++i) {
        out << kStatKeys[i] << ',' << format_double(stat_at(result.truth_stats, i));
        for (const MethodResult* m : methods) out << ',' << format_double(stat_at(m->track_stats, i));
        out << '\n';
    }
    out << "total_l2,";
    for (const MethodResult* m : methods) out << ',' << format_double(m->residual.total_l2);
    out << "\nper_point,";
    for (const MethodResult* m : methods) out << ',' << format_double(m->residual.per_point);
    out << "\nn_points," << result.truth.size();
    for (const MethodResult* m : methods) out << ',' << m->residual.n_points;
    out << "\nfailed_windows,";
    for (const MethodResult* m : methods) out << ',' << m->failed_windows.size();
    out << '\n';
    if (options.include_timing) {
        out << "wall_seconds,";
        for (const MethodResult* m : methods) out << ',' << format_double(m->wall_seconds);
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

nlohmann::ordered_json stats_json(const SummaryStats& s) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < kStatKeys.size(); ++i) j[kStatKeys[i]] = number_or_null(stat_at(s, i));
    return j;
}

std::string render_json(const ExperimentResult& result, const std::vector<const MethodResult*>& methods,
                        const ReportOptions& options) {
    nlohmann::ordered_json doc;
    doc["window_len"] = result.window_len;
    doc["horizon"] = result.horizon;
    doc["stride"] = result.stride;
    doc["n_windows"] = result.n_windows;
    doc["raw"] = stats_json(result.truth_stats);
    nlohmann::ordered_json ms = nlohmann::ordered_json::object();
    for (const MethodResult* m : methods) {
        nlohmann::ordered_json j;
        j["stats"] = stats_json(m->track_stats);
        j["total_l2"] = number_or_null(m->residual.total_l2);
        j["per_point"] = number_or_null(m->residual.per_point);
        j["n_points"] = m->residual.n_points;
        j["failed_windows"] = m->failed_windows;
        if (options.include_timing) j["wall_seconds"] = m->wall_seconds;
        ms[std::string(to_string(m->method))] = std::move(j);
    }
    doc["methods"] = std::move(ms);
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const ExperimentResult& result, ReportFormat format, const ReportOptions& options) {
    const auto methods = ordered_methods(result);
    if (methods.empty()) throw ValidationError("no methods");
    switch (format) {
        case ReportFormat::text: return render_text(result, methods, options);
        case ReportFormat::csv: return render_csv(result, methods, options);
        case ReportFormat::json: return render_json(result, methods, options);
    }
    throw ValidationError("unsupported report format");
}

std::string render_plot_data(const ExperimentResult& result) {
    const auto methods = ordered_methods(result);
    if (methods.empty()) throw ValidationError("no methods");

    const std::size_t n = result.series.size();
    // Overlapping windows (stride < horizon): the latest window's forecast wins.
    std::vector<std::vector<double>> tracks(methods.size(), std::vector<double>(n, std::nan("")));
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const auto& track = methods[m]->track;
        for (std::size_t i = 0; i < track.size() && i < result.target_indices.size(); ++i) {
            tracks[m][result.target_indices[i]] = track[i];
        }
    }

    std::ostringstream out;
    out << "index,raw,smoothed";
    for (const MethodResult* m : methods) out << ',' << to_string(m->method);
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << i << ',' << format_double(result.series[i]) << ',';
        if (i < result.smoothed.size()) out << format_double(result.smoothed[i]);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            out << ',';
            if (std::isfinite(tracks[m][i])) out << format_double(tracks[m][i]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace salsacast

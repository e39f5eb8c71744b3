#pragma once

#include <string>
#include <string_view>

#include "salsacast/experiment.hpp"

namespace salsacast {

enum class ReportFormat { text, csv, json };

[[nodiscard]] ReportFormat parse_report_format(std::string_view name);
[[nodiscard]] std::string_view file_extension(ReportFormat format) noexcept;

struct ReportOptions {
    bool include_timing = false;  ///< wall times make output run-dependent
};

/// Statistics table: rows Min/Max/Mean/STD/Range/Total L2 residual/per point,
/// columns Raw Data then one per method in Causal, Salsa, Linear order.
/// @throws ValidationError "no methods" if the result holds no method.
[[nodiscard]] std::string render_report(const ExperimentResult& result, ReportFormat format,
                                        const ReportOptions& options = {});

/// One row per series index: t,raw,smoothed,<method>... Forecast cells are blank outside the tracks.
[[nodiscard]] std::string render_plot_data(const ExperimentResult& result);

}  // namespace salsacast

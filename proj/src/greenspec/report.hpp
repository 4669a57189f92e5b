#pragma once

#include <string>
#include <string_view>

#include "greenspec/analysis.hpp"

namespace greenspec {

enum class ReportFormat { Csv, Json, Markdown };

/// Accepts csv, json and md.
ReportFormat parse_report_format(std::string_view name);

/// CSV and JSON carry full precision; markdown prints errors with three
/// significant digits and rates with two decimals.
std::string render_report(const StudyReport& report, ReportFormat format);

/// Inverse of the JSON rendering.
StudyReport parse_report_json(std::string_view text);

}  // namespace greenspec

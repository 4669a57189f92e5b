#include "greenspec/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace greenspec {

namespace {

std::string format_double(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::string full(double value) { return format_double("%.17g", value); }

std::string optional_full(const std::optional<double>& value) { return value ? full(*value) : ""; }

std::string render_csv(const StudyReport& report) {
    std::string out = "n,lambda,lambda_error,eoc_lambda,vector_error,eoc_vector,wall_time_ms\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.n) + ',' + full(row.lambda) + ',' + full(row.lambda_error) + ',' +
               optional_full(row.eoc_lambda) + ',' + full(row.vector_error) + ',' + optional_full(row.eoc_vector) +
               ',' + format_double("%.3f", row.wall_time_ms) + '\n';
    }
    return out;
}

nlohmann::json optional_json(const std::optional<double>& value) {
    return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

std::string render_json(const StudyReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"n", row.n},
                        {"lambda", row.lambda},
                        {"lambda_error", row.lambda_error},
                        {"eoc_lambda", optional_json(row.eoc_lambda)},
                        {"vector_error", row.vector_error},
                        {"eoc_vector", optional_json(row.eoc_vector)},
                        {"lambda_floor", row.lambda_floor},
                        {"vector_floor", row.vector_floor},
                        {"wall_time_ms", row.wall_time_ms}});
    }
    nlohmann::json doc = {
        {"config",
         {{"kernel", report.kernel},
          {"method", to_string(report.method)},
          {"r", report.r},
          {"n_list", report.n_list},
          {"quad_order", report.quad_order},
          {"grid_points", report.grid_points},
          {"reference", {{"source", to_string(report.reference_source)}, {"lambda", report.lambda_ref}}}}},
        {"rows", rows}};
    return doc.dump(2) + '\n';
}

std::string sci(double value) { return format_double("%.2e", value); }

std::string rate(const std::optional<double>& value, bool floored) {
    if (value) return format_double("%.2f", *value);
    return floored ? "floor" : "";
}

std::string render_markdown(const StudyReport& report) {
    std::string out = "kernel " + report.kernel + ", method " + to_string(report.method) +
                      ", r = " + std::to_string(report.r) + ", reference " + to_string(report.reference_source) +
                      " (lambda = " + full(report.lambda_ref) + ")\n\n";
    out += "| n | error | rate | vector error | vector rate |\n";
    out += "|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const bool first = i == 0;
        out += "| " + std::to_string(row.n) + " | " + sci(row.lambda_error) + " | " +
               (first ? "" : rate(row.eoc_lambda, true)) + " | " + sci(row.vector_error) + " | " +
               (first ? "" : rate(row.eoc_vector, true)) + " |\n";
    }
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "md") return ReportFormat::Markdown;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "' (valid: csv, json, md)");
}

std::string render_report(const StudyReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: return render_csv(report);
        case ReportFormat::Json: return render_json(report);
        case ReportFormat::Markdown: return render_markdown(report);
    }
    return {};
}

StudyReport parse_report_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("report is not valid JSON: ") + e.what());
    }
    try {
        StudyReport report;
        const auto& config = doc.at("config");
        report.kernel = config.at("kernel").get<std::string>();
        report.method = parse_method_tag(config.at("method").get<std::string>());
        report.r = config.at("r").get<int>();
        report.n_list = config.at("n_list").get<std::vector<int>>();
        report.quad_order = config.at("quad_order").get<int>();
        report.grid_points = config.at("grid_points").get<int>();
        report.reference_source = config.at("reference").at("source").get<std::string>() == "exact"
                                      ? ReferenceSource::Exact
                                      : ReferenceSource::FineMesh;
        report.lambda_ref = config.at("reference").at("lambda").get<double>();
        for (const auto& r : doc.at("rows")) {
            StudyRow row;
            row.n = r.at("n").get<int>();
            row.lambda = r.at("lambda").get<double>();
            row.lambda_error = r.at("lambda_error").get<double>();
            row.vector_error = r.at("vector_error").get<double>();
            if (!r.at("eoc_lambda").is_null()) row.eoc_lambda = r.at("eoc_lambda").get<double>();
            if (!r.at("eoc_vector").is_null()) row.eoc_vector = r.at("eoc_vector").get<double>();
            row.lambda_floor = r.at("lambda_floor").get<bool>();
            row.vector_floor = r.at("vector_floor").get<bool>();
            row.wall_time_ms = r.at("wall_time_ms").get<double>();
            report.rows.push_back(row);
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed report JSON: ") + e.what());
    }
}

}  // namespace greenspec

#include "greenspec.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "greenspec/analysis.hpp"
#include "greenspec/kernel.hpp"
#include "greenspec/methods.hpp"
#include "greenspec/report.hpp"

using namespace greenspec;

struct gs_kernel {
    GreenKernel rep;
};

struct gs_result {
    MethodResult rep;
};

struct gs_report {
    StudyReport rep;
};

namespace {

thread_local std::string last_error;

gs_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return GS_ERR_INVALID_ARGUMENT;
        case ErrorCode::InvalidMesh: return GS_ERR_INVALID_MESH;
        case ErrorCode::IndexOutOfRange: return GS_ERR_INDEX_OUT_OF_RANGE;
        case ErrorCode::OutOfDomain: return GS_ERR_OUT_OF_DOMAIN;
        case ErrorCode::Parse: return GS_ERR_PARSE;
        case ErrorCode::UnknownIdentifier: return GS_ERR_UNKNOWN_IDENTIFIER;
        case ErrorCode::Domain: return GS_ERR_DOMAIN;
        case ErrorCode::Continuity: return GS_ERR_CONTINUITY;
        case ErrorCode::UnknownKernel: return GS_ERR_UNKNOWN_KERNEL;
        case ErrorCode::NonConvergence: return GS_ERR_NON_CONVERGENCE;
        case ErrorCode::NoRealCandidate: return GS_ERR_NO_REAL_CANDIDATE;
        case ErrorCode::DegenerateVector: return GS_ERR_DEGENERATE_VECTOR;
        case ErrorCode::ZeroFunction: return GS_ERR_ZERO_FUNCTION;
        case ErrorCode::ZeroEigenvalue: return GS_ERR_ZERO_EIGENVALUE;
        case ErrorCode::NonDoubling: return GS_ERR_NON_DOUBLING;
        case ErrorCode::NonPositiveError: return GS_ERR_NON_POSITIVE_ERROR;
        case ErrorCode::Io: return GS_ERR_IO;
    }
    return GS_ERR_INTERNAL;
}

template <class F>
gs_status guarded(F&& body) {
    try {
        body();
        return GS_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GS_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return GS_ERR_INTERNAL;
    }
}

gs_status null_argument(const char* what) {
    last_error = std::string("null argument: ") + what;
    return GS_ERR_INVALID_ARGUMENT;
}

MethodOptions method_options(const gs_options* options) {
    gs_options defaults;
    gs_options_init(&defaults);
    const gs_options& o = options ? *options : defaults;
    MethodOptions out;
    out.quad_order = o.quad_order;
    out.grid_points = o.grid_points;
    if (o.selector == GS_SELECT_CLOSEST)
        out.selector = Selector::closest_to(o.selector_target);
    else if (o.selector == GS_SELECT_LARGEST)
        out.selector = Selector::largest();
    else
        throw Error(ErrorCode::InvalidArgument, "unknown selector kind");
    return out;
}

StudyOptions study_options(const gs_options* options) {
    gs_options defaults;
    gs_options_init(&defaults);
    const gs_options& o = options ? *options : defaults;
    StudyOptions out;
    out.method = method_options(options);
    out.threads = o.threads;
    out.fallback_n = o.fallback_n;
    out.fallback_r = o.fallback_r;
    return out;
}

std::vector<int> copy_list(const int* n_list, size_t count) {
    if (!n_list && count > 0) throw Error(ErrorCode::InvalidArgument, "null n-list");
    return std::vector<int>(n_list, n_list + count);
}

double nan_if_absent(const std::optional<double>& value) {
    return value ? *value : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

const char* gs_version(void) { return "1.0.0"; }

const char* gs_last_error(void) { return last_error.c_str(); }

const char* gs_status_name(gs_status status) {
    switch (status) {
        case GS_OK: return "OK";
        case GS_ERR_INTERNAL: return "InternalError";
        default: break;
    }
    for (int c = 0; c <= static_cast<int>(ErrorCode::Io); ++c)
        if (to_status(static_cast<ErrorCode>(c)) == status) return to_string(static_cast<ErrorCode>(c));
    return "UnknownStatus";
}

void gs_options_init(gs_options* options) {
    if (!options) return;
    options->quad_order = kDefaultQuadOrder;
    options->grid_points = 1001;
    options->selector = GS_SELECT_LARGEST;
    options->selector_target = 0.0;
    options->threads = 0;
    options->fallback_n = 128;
    options->fallback_r = 1;
}

void gs_string_free(char* text) { delete[] text; }

size_t gs_builtin_kernel_count(void) { return builtin_kernel_names().size(); }

const char* gs_builtin_kernel_name(size_t index) {
    static const std::vector<std::string> names = builtin_kernel_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

gs_status gs_kernel_builtin(const char* name, gs_kernel** out) {
    if (!name || !out) return null_argument("name/out");
    return guarded([&] { *out = new gs_kernel{builtin_kernel(name)}; });
}

gs_status gs_kernel_from_json(const char* json_text, gs_kernel** out) {
    if (!json_text || !out) return null_argument("json_text/out");
    return guarded([&] { *out = new gs_kernel{make_kernel(parse_kernel_config(json_text))}; });
}

gs_status gs_kernel_from_file(const char* path, gs_kernel** out) {
    if (!path || !out) return null_argument("path/out");
    return guarded([&] { *out = new gs_kernel{make_kernel(load_kernel_config(path))}; });
}

gs_status gs_kernel_open(const char* name_or_path, gs_kernel** out) {
    if (!name_or_path || !out) return null_argument("name_or_path/out");
    for (const auto& name : builtin_kernel_names())
        if (name == name_or_path) return gs_kernel_builtin(name_or_path, out);
    return guarded([&] {
        const std::string source = name_or_path;
        if (source.find('/') == std::string::npos && source.find(".json") == std::string::npos)
            builtin_kernel(source);  // unknown builtin: throws with the list of valid names
        *out = new gs_kernel{make_kernel(load_kernel_config(source))};
    });
}

const char* gs_kernel_name(const gs_kernel* kernel) { return kernel ? kernel->rep.name().c_str() : nullptr; }

int gs_kernel_alpha(const gs_kernel* kernel, int* alpha) {
    if (!kernel || !kernel->rep.alpha()) return 0;
    if (alpha) *alpha = *kernel->rep.alpha();
    return 1;
}

int gs_kernel_exact_eigenvalue(const gs_kernel* kernel, double* eigenvalue) {
    if (!kernel || !kernel->rep.exact()) return 0;
    if (eigenvalue) *eigenvalue = kernel->rep.exact()->eigenvalue;
    return 1;
}

gs_status gs_kernel_eval(const gs_kernel* kernel, double s, double t, double* value) {
    if (!kernel || !value) return null_argument("kernel/value");
    return guarded([&] { *value = kernel_eval(kernel->rep, s, t); });
}

void gs_kernel_free(gs_kernel* kernel) { delete kernel; }

size_t gs_method_count(void) { return all_method_tags().size(); }

const char* gs_method_name(size_t index) {
    const auto& tags = all_method_tags();
    return index < tags.size() ? to_string(tags[index]) : nullptr;
}

gs_status gs_method_check(const char* name) {
    if (!name) return null_argument("name");
    return guarded([&] { parse_method_tag(name); });
}

gs_status gs_solve(const gs_kernel* kernel, const char* method, int n, int r, const gs_options* options,
                   gs_result** out) {
    if (!kernel || !method || !out) return null_argument("kernel/method/out");
    return guarded([&] {
        *out = new gs_result{run_method(parse_method_tag(method), kernel->rep, n, r, method_options(options))};
    });
}

double gs_result_lambda(const gs_result* result) {
    return result ? result->rep.lambda : std::numeric_limits<double>::quiet_NaN();
}

int gs_result_classical_lambda(const gs_result* result, double* lambda) {
    if (!result || !result->rep.classical_lambda) return 0;
    if (lambda) *lambda = *result->rep.classical_lambda;
    return 1;
}

gs_status gs_result_eval(const gs_result* result, double t, double* value) {
    if (!result || !value) return null_argument("result/value");
    return guarded([&] {
        if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::OutOfDomain, "evaluation point outside [0,1]");
        *value = result->rep.phi(t);
    });
}

size_t gs_result_coeff_count(const gs_result* result) { return result ? result->rep.coeffs.size() : 0; }

gs_status gs_result_coeffs(const gs_result* result, double* out, size_t capacity) {
    if (!result || !out) return null_argument("result/out");
    if (capacity < result->rep.coeffs.size()) {
        last_error = "coefficient buffer too small";
        return GS_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(out, result->rep.coeffs.data(), result->rep.coeffs.size() * sizeof(double));
    return GS_OK;
}

void gs_result_free(gs_result* result) { delete result; }

gs_status gs_study(const gs_kernel* kernel, const char* method, int r, const int* n_list, size_t count,
                   const gs_options* options, gs_report** out) {
    if (!kernel || !method || !out) return null_argument("kernel/method/out");
    return guarded([&] {
        const auto list = copy_list(n_list, count);
        *out = new gs_report{run_study(kernel->rep, parse_method_tag(method), r, list, study_options(options))};
    });
}

size_t gs_report_row_count(const gs_report* report) { return report ? report->rep.rows.size() : 0; }

gs_status gs_report_row(const gs_report* report, size_t index, gs_study_row* row) {
    if (!report || !row) return null_argument("report/row");
    if (index >= report->rep.rows.size()) {
        last_error = "row index out of range";
        return GS_ERR_INDEX_OUT_OF_RANGE;
    }
    const StudyRow& src = report->rep.rows[index];
    row->n = src.n;
    row->lambda = src.lambda;
    row->lambda_error = src.lambda_error;
    row->eoc_lambda = nan_if_absent(src.eoc_lambda);
    row->vector_error = src.vector_error;
    row->eoc_vector = nan_if_absent(src.eoc_vector);
    row->lambda_floor = src.lambda_floor ? 1 : 0;
    row->vector_floor = src.vector_floor ? 1 : 0;
    row->wall_time_ms = src.wall_time_ms;
    return GS_OK;
}

gs_status gs_format_parse(const char* name, gs_format* format) {
    if (!name || !format) return null_argument("name/format");
    return guarded([&] {
        switch (parse_report_format(name)) {
            case ReportFormat::Csv: *format = GS_FORMAT_CSV; break;
            case ReportFormat::Json: *format = GS_FORMAT_JSON; break;
            case ReportFormat::Markdown: *format = GS_FORMAT_MARKDOWN; break;
        }
    });
}

gs_status gs_report_render(const gs_report* report, gs_format format, char** text) {
    if (!report || !text) return null_argument("report/text");
    return guarded([&] {
        ReportFormat f;
        switch (format) {
            case GS_FORMAT_CSV: f = ReportFormat::Csv; break;
            case GS_FORMAT_JSON: f = ReportFormat::Json; break;
            case GS_FORMAT_MARKDOWN: f = ReportFormat::Markdown; break;
            default: throw Error(ErrorCode::InvalidArgument, "unknown report format");
        }
        const std::string rendered = render_report(report->rep, f);
        auto buffer = std::make_unique<char[]>(rendered.size() + 1);
        std::memcpy(buffer.get(), rendered.c_str(), rendered.size() + 1);
        *text = buffer.release();
    });
}

void gs_report_free(gs_report* report) { delete report; }

gs_status gs_rates(const gs_kernel* kernel, const char* x_expr, gs_family family, int r, const int* n_list,
                   size_t count, const gs_options* options, double* residuals, double* rates) {
    if (!kernel || !x_expr || !residuals || (count > 1 && !rates)) return null_argument("kernel/x_expr/output");
    return guarded([&] {
        const Expr x = parse_expr(x_expr);
        const EvalFn fn = [x](double t) { return x(t, t); };
        const auto list = copy_list(n_list, count);
        const Family fam = family == GS_FAMILY_ORTHOGONAL ? Family::Orthogonal : Family::Interpolatory;
        const RateDiagnostic diag = residual_rate_diagnostic(kernel->rep, fn, fam, r, list, method_options(options));
        for (size_t i = 0; i < diag.residuals.size(); ++i) residuals[i] = diag.residuals[i];
        for (size_t i = 0; i < diag.rates.size(); ++i) rates[i] = nan_if_absent(diag.rates[i]);
    });
}

}  // extern "C"

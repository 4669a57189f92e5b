// greenspec command-line front end. Talks to the library only through greenspec.h.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greenspec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError {
    std::string reason;
};

int exit_code_for(gs_status status) {
    switch (status) {
        case GS_OK: return kExitOk;
        case GS_ERR_NON_CONVERGENCE:
        case GS_ERR_NO_REAL_CANDIDATE:
        case GS_ERR_DEGENERATE_VECTOR:
        case GS_ERR_ZERO_FUNCTION:
        case GS_ERR_ZERO_EIGENVALUE:
        case GS_ERR_NON_POSITIVE_ERROR:
        case GS_ERR_INTERNAL: return kExitNumerical;
        default: return kExitUsage;
    }
}

int fail(gs_status status) {
    std::cerr << "error: " << gs_status_name(status) << ": " << gs_last_error() << '\n';
    return exit_code_for(status);
}

struct Common {
    std::string kernel = "greens_laplace";
    std::string method = "galerkin";
    int r = 0;
    int quad = 10;
    int grid = 1001;
    std::string select = "largest";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_method) {
    cmd->add_option("--kernel", c.kernel, "builtin kernel name or JSON config path")->capture_default_str();
    if (with_method) cmd->add_option("--method", c.method, "projection method")->capture_default_str();
    cmd->add_option("--r", c.r, "polynomial degree parameter (degree 2r)")->capture_default_str();
    cmd->add_option("--quad", c.quad, "Gauss nodes per panel")->capture_default_str();
    cmd->add_option("--grid", c.grid, "uniform points of the evaluation grid")->capture_default_str();
    cmd->add_option("--select", c.select, "largest | closest:<value>")->capture_default_str();
    cmd->add_option("--out", c.out, "write output here instead of stdout");
}

void check_ranges(const Common& c) {
    if (c.r < 0 || c.r > 3) throw UsageError{"--r must be in [0, 3]"};
    if (c.quad < 2 || c.quad > 64) throw UsageError{"--quad must be in [2, 64]"};
    if (c.grid < 2) throw UsageError{"--grid must be at least 2"};
}

gs_options make_options(const Common& c) {
    gs_options o;
    gs_options_init(&o);
    o.quad_order = c.quad;
    o.grid_points = c.grid;
    if (c.select == "largest") {
        o.selector = GS_SELECT_LARGEST;
    } else if (c.select.rfind("closest:", 0) == 0) {
        const std::string value = c.select.substr(8);
        char* end = nullptr;
        o.selector_target = std::strtod(value.c_str(), &end);
        if (value.empty() || *end != '\0' || !std::isfinite(o.selector_target))
            throw UsageError{"--select closest:<value> needs a number, got '" + value + "'"};
        o.selector = GS_SELECT_CLOSEST;
    } else {
        throw UsageError{"--select must be 'largest' or 'closest:<value>', got '" + c.select + "'"};
    }
    return o;
}

std::string method_list() {
    std::string names;
    for (size_t i = 0; i < gs_method_count(); ++i) names += (i ? ", " : "") + std::string(gs_method_name(i));
    return names;
}

void check_method(const std::string& method) {
    if (gs_method_check(method.c_str()) != GS_OK)
        throw UsageError{"unknown method '" + method + "' (valid: " + method_list() + ")"};
}

class KernelHandle {
public:
    explicit KernelHandle(const std::string& source) { status_ = gs_kernel_open(source.c_str(), &k_); }
    ~KernelHandle() { gs_kernel_free(k_); }
    KernelHandle(const KernelHandle&) = delete;
    KernelHandle& operator=(const KernelHandle&) = delete;
    gs_status status() const { return status_; }
    const gs_kernel* get() const { return k_; }

private:
    gs_kernel* k_ = nullptr;
    gs_status status_ = GS_OK;
};

void warn_smoothness(const gs_kernel* k, int r) {
    int alpha = 0;
    if (gs_kernel_alpha(k, &alpha) && r >= alpha)
        std::cerr << "warning: r = " << r << " >= alpha = " << alpha
                  << " for kernel " << gs_kernel_name(k) << "; rates may saturate\n";
}

int emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: Io: cannot open '" << out << "' for writing\n";
        return kExitUsage;
    }
    f << text;
    return f ? kExitOk : kExitUsage;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string fmt17(double v) { return fmt("%.17g", v); }

// solve output is for reading; 15 digits hides last-bit quadrature noise
std::string fmt15(double v) { return fmt("%.15g", v); }

int run_solve(const Common& c, int n) {
    check_ranges(c);
    check_method(c.method);
    const gs_options options = make_options(c);
    KernelHandle k(c.kernel);
    if (k.status() != GS_OK) return fail(k.status());
    warn_smoothness(k.get(), c.r);

    gs_result* res = nullptr;
    if (const gs_status st = gs_solve(k.get(), c.method.c_str(), n, c.r, &options, &res); st != GS_OK)
        return fail(st);
    std::ostringstream os;
    os << "kernel " << gs_kernel_name(k.get()) << '\n';
    os << "method " << c.method << '\n';
    os << "n " << n << '\n' << "r " << c.r << '\n';
    const double lambda = gs_result_lambda(res);
    os << "lambda " << fmt15(lambda) << '\n';
    double classical = 0.0;
    if (gs_result_classical_lambda(res, &classical)) os << "classical_lambda " << fmt15(classical) << '\n';
    double exact = 0.0;
    if (gs_kernel_exact_eigenvalue(k.get(), &exact)) os << "lambda_error " << fmt("%.6e", std::abs(lambda - exact)) << '\n';
    for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double v = 0.0;
        if (gs_result_eval(res, t, &v) == GS_OK) os << "phi(" << t << ") " << fmt15(v) << '\n';
    }
    gs_result_free(res);
    return emit(os.str(), c.out);
}

int run_study(const Common& c, const std::vector<int>& n_list, const std::string& format_name) {
    check_ranges(c);
    check_method(c.method);
    const gs_options options = make_options(c);
    gs_format format;
    if (gs_format_parse(format_name.c_str(), &format) != GS_OK) throw UsageError{gs_last_error()};
    KernelHandle k(c.kernel);
    if (k.status() != GS_OK) return fail(k.status());
    warn_smoothness(k.get(), c.r);

    gs_report* report = nullptr;
    if (const gs_status st =
            gs_study(k.get(), c.method.c_str(), c.r, n_list.data(), n_list.size(), &options, &report);
        st != GS_OK)
        return fail(st);
    char* text = nullptr;
    const gs_status st = gs_report_render(report, format, &text);
    gs_report_free(report);
    if (st != GS_OK) return fail(st);
    const int code = emit(text, c.out);
    gs_string_free(text);
    return code;
}

int run_rates(const Common& c, const std::vector<int>& n_list, const std::string& x, const std::string& family) {
    check_ranges(c);
    const gs_options options = make_options(c);
    gs_family fam;
    if (family == "orthogonal")
        fam = GS_FAMILY_ORTHOGONAL;
    else if (family == "interpolatory")
        fam = GS_FAMILY_INTERPOLATORY;
    else
        throw UsageError{"--family must be 'orthogonal' or 'interpolatory', got '" + family + "'"};
    KernelHandle k(c.kernel);
    if (k.status() != GS_OK) return fail(k.status());
    warn_smoothness(k.get(), c.r);

    std::vector<double> residuals(n_list.size());
    std::vector<double> rates(n_list.empty() ? 0 : n_list.size() - 1);
    if (const gs_status st = gs_rates(k.get(), x.c_str(), fam, c.r, n_list.data(), n_list.size(), &options,
                                      residuals.data(), rates.data());
        st != GS_OK)
        return fail(st);
    std::ostringstream os;
    os << "n,residual,rate\n";
    for (size_t i = 0; i < n_list.size(); ++i) {
        os << n_list[i] << ',' << fmt17(residuals[i]) << ',';
        if (i > 0 && !std::isnan(rates[i - 1])) os << fmt17(rates[i - 1]);
        os << '\n';
    }
    return emit(os.str(), c.out);
}

int run_validate(const std::string& path) {
    gs_kernel* k = nullptr;
    if (const gs_status st = gs_kernel_from_file(path.c_str(), &k); st != GS_OK) return fail(st);
    std::cout << "ok " << gs_kernel_name(k);
    int alpha = 0;
    if (gs_kernel_alpha(k, &alpha)) std::cout << " alpha=" << alpha;
    double exact = 0.0;
    if (gs_kernel_exact_eigenvalue(k, &exact)) std::cout << " exact_eigenvalue=" << fmt17(exact);
    std::cout << '\n';
    gs_kernel_free(k);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greenspec: eigenvalue approximation for Green's-function-type integral operators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gs_version());

    Common common;
    int n = 0;
    std::vector<int> n_list;
    std::string format = "md";
    std::string x_expr = "cos(3*t)";
    std::string family = "orthogonal";
    std::string validate_path;

    auto* solve = app.add_subcommand("solve", "solve once at a single mesh size");
    add_common(solve, common, true);
    solve->add_option("--n", n, "number of panels")->required();

    auto* study = app.add_subcommand("study", "convergence study over a doubling n-list");
    add_common(study, common, true);
    study->add_option("--n-list", n_list, "comma-separated doubling list")->delimiter(',')->required();
    study->add_option("--format", format, "csv | json | md")->capture_default_str();

    auto* rates = app.add_subcommand("rates", "residual rates of K(I - pi_n)x");
    add_common(rates, common, false);
    rates->add_option("--n-list", n_list, "comma-separated doubling list")->delimiter(',')->required();
    rates->add_option("--x", x_expr, "test function of t")->capture_default_str();
    rates->add_option("--family", family, "orthogonal | interpolatory")->capture_default_str();

    auto* kernel = app.add_subcommand("kernel", "kernel utilities");
    kernel->require_subcommand(1);
    auto* validate = kernel->add_subcommand("validate", "check a kernel JSON config");
    validate->add_option("path", validate_path, "config file")->required();
    auto* list = kernel->add_subcommand("list", "list builtin kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*solve) return run_solve(common, n);
        if (*study) return run_study(common, n_list, format);
        if (*rates) return run_rates(common, n_list, x_expr, family);
        if (*validate) return run_validate(validate_path);
        if (*list) {
            for (size_t i = 0; i < gs_builtin_kernel_count(); ++i) std::cout << gs_builtin_kernel_name(i) << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.reason << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

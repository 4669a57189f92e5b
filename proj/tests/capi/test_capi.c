/* Exercises the shared library through its C interface only. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "greenspec.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static int close_to(double a, double b, double tol) { return fabs(a - b) <= tol; }

static void test_kernels(void) {
    gs_kernel* k = NULL;
    double v = 0.0;
    int alpha = 0;

    EXPECT(gs_builtin_kernel_count() >= 2);
    EXPECT(strcmp(gs_builtin_kernel_name(0), "greens_laplace") == 0);
    EXPECT(gs_builtin_kernel_name(1000) == NULL);

    EXPECT(gs_kernel_builtin("greens_laplace", &k) == GS_OK);
    EXPECT(strcmp(gs_kernel_name(k), "greens_laplace") == 0);
    EXPECT(gs_kernel_eval(k, 0.25, 0.5, &v) == GS_OK && v == 0.125);
    EXPECT(gs_kernel_eval(k, 1.5, 0.5, &v) == GS_ERR_OUT_OF_DOMAIN);
    EXPECT(strlen(gs_last_error()) > 0);
    EXPECT(gs_kernel_exact_eigenvalue(k, &v) == 1 && close_to(v, 1.0 / (M_PI * M_PI), 1e-15));
    gs_kernel_free(k);

    k = NULL;
    EXPECT(gs_kernel_builtin("no_such_kernel", &k) == GS_ERR_UNKNOWN_KERNEL);
    EXPECT(k == NULL);

    EXPECT(gs_kernel_from_json("{\"name\":\"j\",\"kappa1\":\"t*(1-s)\",\"kappa2\":\"s*(1-t)\",\"alpha\":2}", &k) ==
           GS_OK);
    EXPECT(gs_kernel_alpha(k, &alpha) == 1 && alpha == 2);
    EXPECT(gs_kernel_exact_eigenvalue(k, &v) == 0);
    gs_kernel_free(k);

    EXPECT(gs_kernel_from_json("{\"name\":\"j\",\"kappa1\":\"1\",\"kappa2\":\"0\"}", &k) == GS_ERR_CONTINUITY);
    EXPECT(gs_kernel_from_json("{\"name\":\"j\",\"kappa1\":\"s*(\",\"kappa2\":\"0\"}", &k) == GS_ERR_PARSE);
    EXPECT(gs_kernel_from_file("/nonexistent/k.json", &k) == GS_ERR_IO);
    EXPECT(gs_kernel_builtin(NULL, &k) == GS_ERR_INVALID_ARGUMENT);
    gs_kernel_free(NULL);
}

static void test_solve(void) {
    gs_kernel* k = NULL;
    gs_result* res = NULL;
    gs_options opt;
    double v = 0.0;
    double coeffs[8];

    gs_options_init(&opt);
    EXPECT(opt.quad_order == 10 && opt.grid_points == 1001);
    EXPECT(gs_kernel_open("greens_laplace", &k) == GS_OK);

    EXPECT(gs_method_count() == 8);
    EXPECT(gs_method_check("iterated_modified_collocation") == GS_OK);
    EXPECT(gs_method_check("petrov") == GS_ERR_INVALID_ARGUMENT);

    EXPECT(gs_solve(k, "collocation", 1, 0, &opt, &res) == GS_OK);
    EXPECT(close_to(gs_result_lambda(res), 0.125, 1e-12));
    EXPECT(gs_result_eval(res, 0.3, &v) == GS_OK && close_to(v, 1.0, 1e-12));
    gs_result_free(res);

    EXPECT(gs_solve(k, "galerkin", 2, 0, NULL, &res) == GS_OK);
    EXPECT(close_to(gs_result_lambda(res), 1.0 / 12, 1e-12));
    EXPECT(gs_result_coeff_count(res) == 2);
    EXPECT(gs_result_coeffs(res, coeffs, 8) == GS_OK);
    EXPECT(gs_result_coeffs(res, coeffs, 1) == GS_ERR_INVALID_ARGUMENT);
    EXPECT(gs_result_classical_lambda(res, &v) == 0);
    gs_result_free(res);

    EXPECT(gs_solve(k, "modified_galerkin", 1, 0, NULL, &res) == GS_OK);
    EXPECT(close_to(gs_result_lambda(res), 0.0975683, 1e-7));
    EXPECT(gs_result_classical_lambda(res, &v) == 1 && close_to(v, 1.0 / 12, 1e-12));
    gs_result_free(res);

    EXPECT(gs_solve(k, "galerkin", 0, 0, NULL, &res) == GS_ERR_INVALID_MESH);
    EXPECT(gs_solve(k, "nope", 2, 0, NULL, &res) == GS_ERR_INVALID_ARGUMENT);
    gs_kernel_free(k);
}

static void test_study(void) {
    gs_kernel* k = NULL;
    gs_report* rep = NULL;
    gs_study_row row;
    gs_format fmt;
    char* text = NULL;
    const int ns[] = {2, 4, 8};
    const int bad[] = {3, 5};
    const int fine[] = {8, 16, 32};
    double residuals[3], rates[2];

    EXPECT(gs_kernel_builtin("greens_laplace", &k) == GS_OK);
    EXPECT(gs_study(k, "galerkin", 0, ns, 3, NULL, &rep) == GS_OK);
    EXPECT(gs_report_row_count(rep) == 3);
    EXPECT(gs_report_row(rep, 0, &row) == GS_OK);
    EXPECT(row.n == 2 && close_to(row.lambda_error, 0.0179879, 1e-6));
    EXPECT(gs_report_row(rep, 0, &row) == GS_OK && isnan(row.eoc_lambda));
    EXPECT(gs_report_row(rep, 2, &row) == GS_OK && fabs(row.eoc_lambda - 1.96) < 0.01);
    EXPECT(gs_report_row(rep, 3, &row) == GS_ERR_INDEX_OUT_OF_RANGE);
    EXPECT(gs_format_parse("csv", &fmt) == GS_OK && fmt == GS_FORMAT_CSV);
    EXPECT(gs_format_parse("yaml", &fmt) == GS_ERR_INVALID_ARGUMENT);
    EXPECT(gs_report_render(rep, GS_FORMAT_MARKDOWN, &text) == GS_OK);
    EXPECT(text && strstr(text, "| n | error | rate |") != NULL);
    gs_string_free(text);
    gs_report_free(rep);

    EXPECT(gs_study(k, "galerkin", 0, bad, 2, NULL, &rep) == GS_ERR_NON_DOUBLING);
    EXPECT(strcmp(gs_status_name(GS_ERR_NON_DOUBLING), "") != 0);

    EXPECT(gs_rates(k, "cos(3*t)", GS_FAMILY_ORTHOGONAL, 0, fine, 3, NULL, residuals, rates) == GS_OK);
    EXPECT(residuals[1] < residuals[0] && fabs(rates[0] - 2.0) < 0.2);
    EXPECT(gs_rates(k, "cos(3*x)", GS_FAMILY_ORTHOGONAL, 0, ns, 3, NULL, residuals, rates) ==
           GS_ERR_UNKNOWN_IDENTIFIER);
    gs_kernel_free(k);
}

int main(void) {
    EXPECT(strlen(gs_version()) > 0);
    test_kernels();
    test_solve();
    test_study();
    if (failures) {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("capi: all checks passed\n");
    return 0;
}

/*
 * greenspec: eigenvalue approximation of integral operators with
 * Green's-function-type kernels by projection methods.
 *
 * Plain C interface over the C++ core. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every fallible
 * call returns a gs_status; on failure gs_last_error() describes the problem
 * (the message is thread-local and valid until the next failing call on the
 * same thread).
 */
#ifndef GREENSPEC_H
#define GREENSPEC_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(GREENSPEC_BUILDING)
#define GS_API __declspec(dllexport)
#else
#define GS_API __declspec(dllimport)
#endif
#else
#define GS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
    GS_OK = 0,
    GS_ERR_INVALID_ARGUMENT = 1,
    GS_ERR_INVALID_MESH = 2,
    GS_ERR_INDEX_OUT_OF_RANGE = 3,
    GS_ERR_OUT_OF_DOMAIN = 4,
    GS_ERR_PARSE = 5,
    GS_ERR_UNKNOWN_IDENTIFIER = 6,
    GS_ERR_DOMAIN = 7,
    GS_ERR_CONTINUITY = 8,
    GS_ERR_UNKNOWN_KERNEL = 9,
    GS_ERR_NON_CONVERGENCE = 10,
    GS_ERR_NO_REAL_CANDIDATE = 11,
    GS_ERR_DEGENERATE_VECTOR = 12,
    GS_ERR_ZERO_FUNCTION = 13,
    GS_ERR_ZERO_EIGENVALUE = 14,
    GS_ERR_NON_DOUBLING = 15,
    GS_ERR_NON_POSITIVE_ERROR = 16,
    GS_ERR_IO = 17,
    GS_ERR_INTERNAL = 99
} gs_status;

typedef enum gs_selector_kind { GS_SELECT_LARGEST = 0, GS_SELECT_CLOSEST = 1 } gs_selector_kind;

typedef enum gs_format { GS_FORMAT_CSV = 0, GS_FORMAT_JSON = 1, GS_FORMAT_MARKDOWN = 2 } gs_format;

typedef enum gs_family { GS_FAMILY_ORTHOGONAL = 0, GS_FAMILY_INTERPOLATORY = 1 } gs_family;

typedef struct gs_kernel gs_kernel;
typedef struct gs_result gs_result;
typedef struct gs_report gs_report;

typedef struct gs_options {
    int quad_order;         /* Gauss nodes per (sub)panel, default 10 */
    int grid_points;        /* uniform points of the evaluation grid, default 1001 */
    int selector;           /* gs_selector_kind, default GS_SELECT_LARGEST */
    double selector_target; /* used by GS_SELECT_CLOSEST */
    int threads;            /* 0: GREENSPEC_THREADS or hardware default */
    int fallback_n;         /* reference mesh when a kernel has no exact data, default 128 */
    int fallback_r;         /* default 1 */
} gs_options;

/* One row of a convergence study. Absent rates are NaN. */
typedef struct gs_study_row {
    int n;
    double lambda;
    double lambda_error;
    double eoc_lambda;
    double vector_error;
    double eoc_vector;
    int lambda_floor;
    int vector_floor;
    double wall_time_ms;
} gs_study_row;

GS_API const char* gs_version(void);
GS_API const char* gs_last_error(void);
GS_API const char* gs_status_name(gs_status status);
GS_API void gs_options_init(gs_options* options);
GS_API void gs_string_free(char* text);

/* Kernels */
GS_API size_t gs_builtin_kernel_count(void);
GS_API const char* gs_builtin_kernel_name(size_t index);
GS_API gs_status gs_kernel_builtin(const char* name, gs_kernel** out);
GS_API gs_status gs_kernel_from_json(const char* json_text, gs_kernel** out);
GS_API gs_status gs_kernel_from_file(const char* path, gs_kernel** out);
/* Builtin name if one matches, otherwise a path to a JSON config. */
GS_API gs_status gs_kernel_open(const char* name_or_path, gs_kernel** out);
GS_API const char* gs_kernel_name(const gs_kernel* kernel);
/* Returns 1 and stores alpha when the kernel declares a smoothness index. */
GS_API int gs_kernel_alpha(const gs_kernel* kernel, int* alpha);
/* Returns 1 and stores the eigenvalue when the kernel carries exact data. */
GS_API int gs_kernel_exact_eigenvalue(const gs_kernel* kernel, double* eigenvalue);
GS_API gs_status gs_kernel_eval(const gs_kernel* kernel, double s, double t, double* value);
GS_API void gs_kernel_free(gs_kernel* kernel);

/* Methods: galerkin, iterated_galerkin, modified_galerkin,
 * iterated_modified_galerkin, and the same four for collocation. */
GS_API size_t gs_method_count(void);
GS_API const char* gs_method_name(size_t index);
GS_API gs_status gs_method_check(const char* name);

/* Single solve */
GS_API gs_status gs_solve(const gs_kernel* kernel, const char* method, int n, int r, const gs_options* options,
                          gs_result** out);
GS_API double gs_result_lambda(const gs_result* result);
/* Returns 1 and stores the classical anchor for modified methods. */
GS_API int gs_result_classical_lambda(const gs_result* result, double* lambda);
GS_API gs_status gs_result_eval(const gs_result* result, double t, double* value);
GS_API size_t gs_result_coeff_count(const gs_result* result);
GS_API gs_status gs_result_coeffs(const gs_result* result, double* out, size_t capacity);
GS_API void gs_result_free(gs_result* result);

/* Convergence study over a doubling list of mesh sizes */
GS_API gs_status gs_study(const gs_kernel* kernel, const char* method, int r, const int* n_list, size_t count,
                          const gs_options* options, gs_report** out);
GS_API size_t gs_report_row_count(const gs_report* report);
GS_API gs_status gs_report_row(const gs_report* report, size_t index, gs_study_row* row);
GS_API gs_status gs_format_parse(const char* name, gs_format* format);
/* *text receives a NUL-terminated string to be released with gs_string_free. */
GS_API gs_status gs_report_render(const gs_report* report, gs_format format, char** text);
GS_API void gs_report_free(gs_report* report);

/* sup |K (I - pi_n) x| for each n and the rates between consecutive n.
 * residuals needs count entries, rates count - 1 (NaN at error floors). */
GS_API gs_status gs_rates(const gs_kernel* kernel, const char* x_expr, gs_family family, int r, const int* n_list,
                          size_t count, const gs_options* options, double* residuals, double* rates);

#ifdef __cplusplus
}
#endif

#endif /* GREENSPEC_H */

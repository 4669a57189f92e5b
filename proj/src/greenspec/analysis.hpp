#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenspec/methods.hpp"

namespace greenspec {

/// Errors below this are treated as round-off and excluded from EOCs.
inline constexpr double kErrorFloor = 1e-12;

enum class ReferenceSource { Exact, FineMesh };

const char* to_string(ReferenceSource source) noexcept;

/// Simple eigenpair of K with the rank-one spectral projection
/// E x = <x, phi_dual> phi_ref.
struct ReferenceSolution {
    double lambda_ref = 0.0;
    EvalFn phi_ref;
    EvalFn phi_dual;
    ReferenceSource source = ReferenceSource::Exact;
    /// Panels used for the inner products of the reference itself.
    int inner_panels = 64;
};

/// <f, g> on [0,1] by composite Gauss quadrature over the panels of `mesh`.
double inner_product(const EvalFn& f, const EvalFn& g, const Mesh& mesh, const QuadRule& rule);

/// Uses the kernel's exact data when present; otherwise an iterated modified
/// collocation solution at (fallback_n, fallback_r). For non-self-adjoint
/// kernels the dual comes from the same method applied to the adjoint kernel.
ReferenceSolution make_reference(const GreenKernel& k, int fallback_n = 128, int fallback_r = 1,
                                 const MethodOptions& options = {});

double eigenvalue_error(double lambda, const ReferenceSolution& ref);

/// ||phi - E phi|| over the grid, with <phi, phi_dual> integrated over the
/// panels of `mesh` (which should contain every breakpoint of phi).
double vector_error(const EvalFn& phi, const ReferenceSolution& ref, std::span<const double> grid,
                    const Mesh& mesh, const QuadRule& rule);

/// rate_i = log(E_i / E_{i+1}) / log 2. Throws NonPositiveError for any
/// error <= 0.
std::vector<double> eoc(std::span<const double> errors);

/// Throws NonDoubling unless every entry is twice its predecessor.
void require_doubling(std::span<const int> n_list);

struct StudyRow {
    int n = 0;
    double lambda = 0.0;
    double lambda_error = 0.0;
    double vector_error = 0.0;
    std::optional<double> eoc_lambda;
    std::optional<double> eoc_vector;
    bool lambda_floor = false;
    bool vector_floor = false;
    double wall_time_ms = 0.0;
};

struct StudyOptions {
    MethodOptions method;
    /// 0 means GREENSPEC_THREADS, or the hardware concurrency when unset.
    int threads = 0;
    int fallback_n = 128;
    int fallback_r = 1;
};

struct StudyReport {
    std::string kernel;
    MethodTag method = MethodTag::Galerkin;
    int r = 0;
    std::vector<int> n_list;
    std::vector<StudyRow> rows;
    int grid_points = 1001;
    int quad_order = kDefaultQuadOrder;
    ReferenceSource reference_source = ReferenceSource::Exact;
    double lambda_ref = 0.0;
};

/// Thread count from GREENSPEC_THREADS, or `fallback` when unset or invalid.
int thread_limit(int fallback);

StudyReport run_study(const GreenKernel& k, MethodTag tag, int r, std::span<const int> n_list,
                      const StudyOptions& options = {});

/// Same as run_study but against a caller-supplied reference.
StudyReport run_study(const GreenKernel& k, MethodTag tag, int r, std::span<const int> n_list,
                      const ReferenceSolution& ref, const StudyOptions& options = {});

struct RateDiagnostic {
    std::vector<int> n_list;
    std::vector<double> residuals;
    /// Entry i compares n_list[i] and n_list[i+1]; empty when either is at the floor.
    std::vector<std::optional<double>> rates;
};

/// sup over the standard grid of |K (I - pi_n) x| for each n, and EOCs.
RateDiagnostic residual_rate_diagnostic(const GreenKernel& k, const EvalFn& x, Family family, int r,
                                        std::span<const int> n_list, const MethodOptions& options = {});

}  // namespace greenspec

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greenspec/discretize.hpp"
#include "greenspec/eigen.hpp"

namespace greenspec {

enum class MethodTag {
    Galerkin,
    IteratedGalerkin,
    ModifiedGalerkin,
    IteratedModifiedGalerkin,
    Collocation,
    IteratedCollocation,
    ModifiedCollocation,
    IteratedModifiedCollocation,
};

const char* to_string(MethodTag tag) noexcept;
/// Throws InvalidArgument listing the valid names.
MethodTag parse_method_tag(std::string_view name);
const std::vector<MethodTag>& all_method_tags();

Family family_of(MethodTag tag) noexcept;
bool is_modified(MethodTag tag) noexcept;
bool is_iterated(MethodTag tag) noexcept;

struct MethodOptions {
    int quad_order = kDefaultQuadOrder;
    int grid_points = 1001;
    /// Selects the classical eigenvalue; modified methods then anchor on it.
    Selector selector = Selector::largest();
};

/// Pieces of the modified-method eigenfunction
/// phi^M = u + (K u - pi_n K u) / lambda, before sup-normalization.
struct ModifiedParts {
    PiecewiseFn u;
    PiecewiseFn projected_Ku;
    double lambda = 0.0;
};

/// Shared, immutable state of one discretization.
struct MethodContext {
    GreenKernel kernel;
    PolySpace space;
    Family family;
    QuadRule quad;
    Matrix A;
    std::optional<Matrix> M2;
    std::vector<double> grid;
};

struct MethodResult {
    MethodTag tag = MethodTag::Galerkin;
    int n = 0;
    int r = 0;
    double lambda = 0.0;
    /// Sup-normalized on the standard grid.
    EvalFn phi;
    /// Eigenvector coefficients u in the family's basis.
    std::vector<double> coeffs;
    /// Classical eigenvalue used to anchor modified-method selection.
    std::optional<double> classical_lambda;
    /// Factor applied to the raw eigenfunction to sup-normalize it.
    double scale = 1.0;
    std::shared_ptr<const MethodContext> context;
    std::shared_ptr<const ModifiedParts> modified;
};

/// Projection pi_n of the family.
PiecewiseFn project(const PolySpace& space, Family family, const EvalFn& f, const QuadRule& rule);

/// pi_n K phi_n = lambda_n phi_n, with phi_n in X_n.
MethodResult solve_projection(Family family, const GreenKernel& k, int n, int r,
                              const MethodOptions& options = {});

/// Sloan iterate phi^S = K phi_n / lambda_n (lazy, sup-normalized).
MethodResult iterate_sloan(const MethodResult& res, const GreenKernel& k, const QuadRule& quad);

/// Eigenpair of pi_n K + K pi_n - pi_n K pi_n, reduced to
/// lambda^2 u = lambda A u + (M2 - A^2) u.
MethodResult solve_modified(Family family, const GreenKernel& k, int n, int r,
                            const MethodOptions& options = {});

/// Iterated modified eigenfunction K phi^M / lambda^M (lazy, sup-normalized).
MethodResult iterate_modified(const MethodResult& res, const GreenKernel& k, const QuadRule& quad);

/// Runs any of the eight methods.
MethodResult run_method(MethodTag tag, const GreenKernel& k, int n, int r, const MethodOptions& options = {});

/// sup over the grid of |pi_n K phi - lambda phi| for a classical result.
double classical_residual(const MethodResult& res);

/// sup over the grid of |K_n^M phi^M - lambda^M phi^M| for a modified result.
double modified_residual(const MethodResult& res);

/// sup over the grid of |K pi_n phi^S - lambda phi^S| for a Sloan iterate.
double sloan_residual(const MethodResult& res);

}  // namespace greenspec

#include "greenspec/methods.hpp"

#include <algorithm>
#include <cmath>

namespace greenspec {

namespace {

constexpr std::pair<MethodTag, const char*> kTagNames[] = {
    {MethodTag::Galerkin, "galerkin"},
    {MethodTag::IteratedGalerkin, "iterated_galerkin"},
    {MethodTag::ModifiedGalerkin, "modified_galerkin"},
    {MethodTag::IteratedModifiedGalerkin, "iterated_modified_galerkin"},
    {MethodTag::Collocation, "collocation"},
    {MethodTag::IteratedCollocation, "iterated_collocation"},
    {MethodTag::ModifiedCollocation, "modified_collocation"},
    {MethodTag::IteratedModifiedCollocation, "iterated_modified_collocation"},
};

std::shared_ptr<MethodContext> make_context(const GreenKernel& k, int n, int r, Family family,
                                            const MethodOptions& options, bool with_second) {
    const QuadRule rule = gauss_rule(options.quad_order);
    PolySpace space(make_mesh(n), r);
    DiscreteOperator op = discretize(k, space, rule, family, with_second);
    auto grid = standard_grid(space, options.grid_points);
    return std::make_shared<MethodContext>(
        MethodContext{k, std::move(space), family, rule, std::move(op.A), std::move(op.M2), std::move(grid)});
}

// phi^M = u + (K u - pi_n K u) / lambda, with one-sided limits passed through
// to the piecewise parts.
struct ModifiedEigenfunction final : FunctionBase {
    ModifiedEigenfunction(std::shared_ptr<const ModifiedParts> parts, GreenKernel kernel, QuadRule quad)
        : parts(std::move(parts)), u(this->parts->u.as_function()), kernel(std::move(kernel)), quad(std::move(quad)) {}

    double value(double t, Side side) const override {
        const auto& p = *parts;
        const double Ku = apply_K(kernel, u, t, quad, p.u.space().mesh());
        return p.u(t, side) + (Ku - p.projected_Ku(t, side)) / p.lambda;
    }

    std::shared_ptr<const ModifiedParts> parts;
    EvalFn u;
    GreenKernel kernel;
    QuadRule quad;
};

// K phi^M = K u + (K^2 u - K pi_n K u) / lambda, unnormalized.
EvalFn modified_image(const ModifiedParts& parts, const GreenKernel& k, const QuadRule& quad) {
    const Mesh& mesh = parts.u.space().mesh();
    const EvalFn u = parts.u.as_function();
    const EvalFn projected = parts.projected_Ku.as_function();
    const EvalFn Ku = [k, u, quad, mesh](double s) { return apply_K(k, u, s, quad, mesh); };
    auto K2u = std::make_shared<const TabulatedOperand>(mesh, quad, Ku);
    const double lambda = parts.lambda;
    return [k, Ku, K2u, projected, quad, mesh, lambda](double s) {
        const double K_projected = apply_K(k, projected, s, quad, mesh);
        return Ku(s) + (K2u->apply(k, s) - K_projected) / lambda;
    };
}

double grid_sup(const std::vector<double>& grid, const auto& f) {
    double worst = 0.0;
    for (const double s : grid) worst = std::max(worst, std::abs(f(s)));
    return worst;
}

const MethodContext& require_context(const MethodResult& res) {
    if (!res.context) throw Error(ErrorCode::InvalidArgument, "method result carries no discretization");
    return *res.context;
}

}  // namespace

const char* to_string(MethodTag tag) noexcept {
    for (const auto& [t, name] : kTagNames)
        if (t == tag) return name;
    return "unknown";
}

MethodTag parse_method_tag(std::string_view name) {
    for (const auto& [t, n] : kTagNames)
        if (name == n) return t;
    std::string valid;
    for (const auto& [t, n] : kTagNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "' (valid: " + valid + ")");
}

const std::vector<MethodTag>& all_method_tags() {
    static const std::vector<MethodTag> tags = [] {
        std::vector<MethodTag> out;
        for (const auto& [t, n] : kTagNames) out.push_back(t);
        return out;
    }();
    return tags;
}

Family family_of(MethodTag tag) noexcept {
    switch (tag) {
        case MethodTag::Galerkin:
        case MethodTag::IteratedGalerkin:
        case MethodTag::ModifiedGalerkin:
        case MethodTag::IteratedModifiedGalerkin: return Family::Orthogonal;
        default: return Family::Interpolatory;
    }
}

bool is_modified(MethodTag tag) noexcept {
    return tag == MethodTag::ModifiedGalerkin || tag == MethodTag::IteratedModifiedGalerkin ||
           tag == MethodTag::ModifiedCollocation || tag == MethodTag::IteratedModifiedCollocation;
}

bool is_iterated(MethodTag tag) noexcept {
    return tag == MethodTag::IteratedGalerkin || tag == MethodTag::IteratedModifiedGalerkin ||
           tag == MethodTag::IteratedCollocation || tag == MethodTag::IteratedModifiedCollocation;
}

PiecewiseFn project(const PolySpace& space, Family family, const EvalFn& f, const QuadRule& rule) {
    return family == Family::Orthogonal ? project_orthogonal(space, f, rule) : project_interpolatory(space, f);
}

MethodResult solve_projection(Family family, const GreenKernel& k, int n, int r, const MethodOptions& options) {
    auto ctx = make_context(k, n, r, family, options, false);
    const auto pairs = solve_dense_eigen(ctx->A);
    const auto& chosen = pairs[select_index(pairs, options.selector)];
    const Vector u = real_part_aligned(chosen.vector);

    const PiecewiseFn raw = make_piecewise(ctx->space, family, std::span<const double>(u.data(), u.size()));
    const double scale = sup_normalization_factor(raw.as_function(), ctx->grid);
    std::vector<double> coeffs(u.data(), u.data() + u.size());
    for (double& c : coeffs) c *= scale;

    MethodResult res;
    res.tag = family == Family::Orthogonal ? MethodTag::Galerkin : MethodTag::Collocation;
    res.n = n;
    res.r = r;
    res.lambda = chosen.value.real();
    res.phi = make_piecewise(ctx->space, family, coeffs).as_function();
    res.coeffs = std::move(coeffs);
    res.scale = scale;
    res.context = std::move(ctx);
    return res;
}

MethodResult iterate_sloan(const MethodResult& res, const GreenKernel& k, const QuadRule& quad) {
    if (res.lambda == 0.0) throw Error(ErrorCode::ZeroEigenvalue, "cannot iterate with a zero eigenvalue");
    const Mesh mesh = res.context ? res.context->space.mesh() : make_mesh(std::max(res.n, 1));
    const std::vector<double> grid =
        res.context ? res.context->grid : standard_grid(PolySpace(mesh, res.r));
    const EvalFn phi = res.phi;
    const double lambda = res.lambda;
    const EvalFn raw = [k, phi, quad, mesh, lambda](double s) { return apply_K(k, phi, s, quad, mesh) / lambda; };

    MethodResult out = res;
    if (res.tag == MethodTag::Galerkin) out.tag = MethodTag::IteratedGalerkin;
    if (res.tag == MethodTag::Collocation) out.tag = MethodTag::IteratedCollocation;
    out.scale = sup_normalization_factor(raw, grid);
    out.phi = raw.scaled(out.scale);
    return out;
}

MethodResult solve_modified(Family family, const GreenKernel& k, int n, int r, const MethodOptions& options) {
    auto ctx = make_context(k, n, r, family, options, true);
    const Matrix& A = ctx->A;
    const Matrix C = *ctx->M2 - A * A;

    const auto classical_pairs = solve_dense_eigen(A);
    const double classical = classical_pairs[select_index(classical_pairs, options.selector)].value.real();

    Selector anchor = Selector::closest_to(classical);
    anchor.imag_tol = options.selector.imag_tol;
    const EigenPair pair = solve_quadratic_eigen(A, C, anchor);
    const double lambda = pair.value.real();
    if (lambda == 0.0) throw Error(ErrorCode::ZeroEigenvalue, "modified eigenvalue is zero");
    const Vector u = real_part_aligned(pair.vector);
    const Vector Au = A * u;

    auto parts = std::make_shared<ModifiedParts>(ModifiedParts{
        make_piecewise(ctx->space, family, std::span<const double>(u.data(), u.size())),
        make_piecewise(ctx->space, family, std::span<const double>(Au.data(), Au.size())), lambda});
    const EvalFn raw(std::make_shared<ModifiedEigenfunction>(parts, k, ctx->quad));

    MethodResult res;
    res.tag = family == Family::Orthogonal ? MethodTag::ModifiedGalerkin : MethodTag::ModifiedCollocation;
    res.n = n;
    res.r = r;
    res.lambda = lambda;
    res.scale = sup_normalization_factor(raw, ctx->grid);
    res.phi = raw.scaled(res.scale);
    res.coeffs.assign(u.data(), u.data() + u.size());
    for (double& c : res.coeffs) c *= res.scale;
    res.classical_lambda = classical;
    res.context = std::move(ctx);
    res.modified = std::move(parts);
    return res;
}

MethodResult iterate_modified(const MethodResult& res, const GreenKernel& k, const QuadRule& quad) {
    if (res.lambda == 0.0) throw Error(ErrorCode::ZeroEigenvalue, "cannot iterate with a zero eigenvalue");
    if (!res.modified) {
        // Plain function input: K phi / lambda directly.
        MethodResult out = iterate_sloan(res, k, quad);
        out.tag = res.tag;
        return out;
    }
    const auto& ctx = require_context(res);
    const EvalFn image = modified_image(*res.modified, k, quad);
    const double lambda = res.lambda;
    const EvalFn raw = [image, lambda](double s) { return image(s) / lambda; };

    MethodResult out = res;
    if (res.tag == MethodTag::ModifiedGalerkin) out.tag = MethodTag::IteratedModifiedGalerkin;
    if (res.tag == MethodTag::ModifiedCollocation) out.tag = MethodTag::IteratedModifiedCollocation;
    out.scale = sup_normalization_factor(raw, ctx.grid);
    out.phi = raw.scaled(out.scale);
    return out;
}

MethodResult run_method(MethodTag tag, const GreenKernel& k, int n, int r, const MethodOptions& options) {
    const Family family = family_of(tag);
    if (is_modified(tag)) {
        MethodResult res = solve_modified(family, k, n, r, options);
        return is_iterated(tag) ? iterate_modified(res, k, res.context->quad) : res;
    }
    MethodResult res = solve_projection(family, k, n, r, options);
    return is_iterated(tag) ? iterate_sloan(res, k, res.context->quad) : res;
}

double classical_residual(const MethodResult& res) {
    const auto& ctx = require_context(res);
    const Mesh& mesh = ctx.space.mesh();
    const EvalFn phi = res.phi;
    const EvalFn Kphi = [&](double s) { return apply_K(ctx.kernel, phi, s, ctx.quad, mesh); };
    const PiecewiseFn projected = project(ctx.space, ctx.family, Kphi, ctx.quad);
    return grid_sup(ctx.grid, [&](double s) { return projected(s) - res.lambda * phi(s); });
}

double modified_residual(const MethodResult& res) {
    const auto& ctx = require_context(res);
    if (!res.modified) throw Error(ErrorCode::InvalidArgument, "result is not from a modified method");
    const Mesh& mesh = ctx.space.mesh();
    const EvalFn phi = res.phi;

    const EvalFn Kphi = modified_image(*res.modified, ctx.kernel, ctx.quad).scaled(res.scale);
    const PiecewiseFn pi_K_phi = project(ctx.space, ctx.family, Kphi, ctx.quad);
    const EvalFn pi_phi = project(ctx.space, ctx.family, phi, ctx.quad).as_function();
    const EvalFn K_pi_phi = [&](double s) { return apply_K(ctx.kernel, pi_phi, s, ctx.quad, mesh); };
    const PiecewiseFn pi_K_pi_phi = project(ctx.space, ctx.family, K_pi_phi, ctx.quad);

    return grid_sup(ctx.grid, [&](double s) {
        return pi_K_phi(s) + K_pi_phi(s) - pi_K_pi_phi(s) - res.lambda * phi(s);
    });
}

double sloan_residual(const MethodResult& res) {
    const auto& ctx = require_context(res);
    const Mesh& mesh = ctx.space.mesh();
    const EvalFn pi_phi = project(ctx.space, ctx.family, res.phi, ctx.quad).as_function();
    return grid_sup(ctx.grid, [&](double s) {
        return apply_K(ctx.kernel, pi_phi, s, ctx.quad, mesh) - res.lambda * res.phi(s);
    });
}

}  // namespace greenspec

#include "greenspec/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace greenspec {

const char* to_string(ReferenceSource source) noexcept {
    return source == ReferenceSource::Exact ? "exact" : "fine_mesh";
}

double inner_product(const EvalFn& f, const EvalFn& g, const Mesh& mesh, const QuadRule& rule) {
    double sum = 0.0;
    for (int j = 0; j < mesh.n(); ++j)
        sum += integrate_panel(rule, mesh.left(j), mesh.right(j), [&](double t) { return f(t) * g(t); });
    return sum;
}

namespace {

EvalFn dual_for(const GreenKernel& k, const EvalFn& phi_ref, double lambda_ref, const Mesh& mesh,
                const QuadRule& rule, int fallback_n, int fallback_r, const MethodOptions& options) {
    EvalFn dual = phi_ref;
    if (!k.is_symmetric()) {
        MethodOptions adjoint_options = options;
        adjoint_options.selector = Selector::closest_to(lambda_ref);
        dual = run_method(MethodTag::IteratedModifiedCollocation, k.adjoint(), fallback_n, fallback_r,
                          adjoint_options)
                   .phi;
    }
    const double pairing = inner_product(phi_ref, dual, mesh, rule);
    if (std::abs(pairing) < 1e-14)
        throw Error(ErrorCode::DegenerateVector, "reference eigenfunction is orthogonal to its dual");
    return dual.scaled(1.0 / pairing);
}

}  // namespace

ReferenceSolution make_reference(const GreenKernel& k, int fallback_n, int fallback_r,
                                 const MethodOptions& options) {
    const QuadRule rule = gauss_rule(options.quad_order);
    ReferenceSolution ref;
    if (k.exact()) {
        const Mesh mesh = make_mesh(ref.inner_panels);
        const auto grid = standard_grid(PolySpace(mesh, 0), options.grid_points);
        ref.lambda_ref = k.exact()->eigenvalue;
        ref.phi_ref = normalize_sup(k.exact()->eigenfunction, grid);
        ref.source = ReferenceSource::Exact;
        ref.phi_dual = dual_for(k, ref.phi_ref, ref.lambda_ref, mesh, rule, fallback_n, fallback_r, options);
        return ref;
    }
    const MethodResult fine = run_method(MethodTag::IteratedModifiedCollocation, k, fallback_n, fallback_r, options);
    ref.lambda_ref = fine.lambda;
    ref.phi_ref = fine.phi;
    ref.source = ReferenceSource::FineMesh;
    ref.inner_panels = fallback_n;
    ref.phi_dual =
        dual_for(k, ref.phi_ref, ref.lambda_ref, make_mesh(fallback_n), rule, fallback_n, fallback_r, options);
    return ref;
}

double eigenvalue_error(double lambda, const ReferenceSolution& ref) { return std::abs(lambda - ref.lambda_ref); }

double vector_error(const EvalFn& phi, const ReferenceSolution& ref, std::span<const double> grid,
                    const Mesh& mesh, const QuadRule& rule) {
    const double c = inner_product(phi, ref.phi_dual, mesh, rule);
    double worst = 0.0;
    for (const double s : grid) worst = std::max(worst, std::abs(phi(s) - c * ref.phi_ref(s)));
    return worst;
}

std::vector<double> eoc(std::span<const double> errors) {
    for (const double e : errors)
        if (!(e > 0.0)) throw Error(ErrorCode::NonPositiveError, "EOC needs strictly positive errors");
    std::vector<double> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        rates.push_back(std::log(errors[i] / errors[i + 1]) / std::log(2.0));
    return rates;
}

void require_doubling(std::span<const int> n_list) {
    if (n_list.empty()) throw Error(ErrorCode::InvalidArgument, "n-list is empty");
    if (n_list[0] < 1) throw Error(ErrorCode::InvalidMesh, "n-list entries must be positive");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] != 2 * n_list[i - 1])
            throw Error(ErrorCode::NonDoubling, "n-list must double at every step: " + std::to_string(n_list[i - 1]) +
                                                    " is followed by " + std::to_string(n_list[i]));
}

int thread_limit(int fallback) {
    if (const char* env = std::getenv("GREENSPEC_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
    }
    return fallback;
}

namespace {

std::optional<double> rate_between(double coarse, double fine) {
    if (coarse < kErrorFloor || fine < kErrorFloor) return std::nullopt;
    const double values[] = {coarse, fine};
    return eoc(values).front();
}

// Runs job(i) for i in [0, count) on up to `threads` workers; the first
// exception by index is rethrown.
template <class Job>
void parallel_for(int count, int threads, Job job) {
    threads = std::clamp(threads, 1, std::max(count, 1));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

StudyReport run_study(const GreenKernel& k, MethodTag tag, int r, std::span<const int> n_list,
                      const StudyOptions& options) {
    require_doubling(n_list);
    const ReferenceSolution ref = make_reference(k, options.fallback_n, options.fallback_r, options.method);
    return run_study(k, tag, r, n_list, ref, options);
}

StudyReport run_study(const GreenKernel& k, MethodTag tag, int r, std::span<const int> n_list,
                      const ReferenceSolution& ref, const StudyOptions& options) {
    require_doubling(n_list);
    StudyReport report;
    report.kernel = k.name();
    report.method = tag;
    report.r = r;
    report.n_list.assign(n_list.begin(), n_list.end());
    report.grid_points = options.method.grid_points;
    report.quad_order = options.method.quad_order;
    report.reference_source = ref.source;
    report.lambda_ref = ref.lambda_ref;
    report.rows.resize(n_list.size());

    const int hardware = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int threads = options.threads > 0 ? options.threads : thread_limit(hardware);
    parallel_for(static_cast<int>(n_list.size()), threads, [&](int i) {
        const auto start = std::chrono::steady_clock::now();
        const MethodResult res = run_method(tag, k, n_list[i], r, options.method);
        StudyRow& row = report.rows[i];
        row.n = n_list[i];
        row.lambda = res.lambda;
        row.lambda_error = eigenvalue_error(res.lambda, ref);
        row.vector_error =
            vector_error(res.phi, ref, res.context->grid, res.context->space.mesh(), res.context->quad);
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    });

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        StudyRow& row = report.rows[i];
        row.lambda_floor = row.lambda_error < kErrorFloor;
        row.vector_floor = row.vector_error < kErrorFloor;
        if (i == 0) continue;
        row.eoc_lambda = rate_between(report.rows[i - 1].lambda_error, row.lambda_error);
        row.eoc_vector = rate_between(report.rows[i - 1].vector_error, row.vector_error);
    }
    return report;
}

RateDiagnostic residual_rate_diagnostic(const GreenKernel& k, const EvalFn& x, Family family, int r,
                                        std::span<const int> n_list, const MethodOptions& options) {
    require_doubling(n_list);
    const QuadRule rule = gauss_rule(options.quad_order);
    RateDiagnostic out;
    out.n_list.assign(n_list.begin(), n_list.end());
    for (const int n : n_list) {
        const PolySpace space(make_mesh(n), r);
        const PiecewiseFn projected = project(space, family, x, rule);
        const EvalFn difference = [&](double t) { return x(t) - projected(t); };
        double worst = 0.0;
        for (const double s : standard_grid(space, options.grid_points))
            worst = std::max(worst, std::abs(apply_K(k, difference, s, rule, space.mesh())));
        out.residuals.push_back(worst);
    }
    for (std::size_t i = 0; i + 1 < out.residuals.size(); ++i) {
        out.rates.push_back(rate_between(out.residuals[i], out.residuals[i + 1]));
    }
    return out;
}

}  // namespace greenspec

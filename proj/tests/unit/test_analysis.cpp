#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expect.hpp"
#include "greenspec/analysis.hpp"
#include "greenspec/report.hpp"

using namespace greenspec;

namespace {

constexpr double pi = std::numbers::pi;

const GreenKernel& laplace() {
    static const GreenKernel k = builtin_kernel("greens_laplace");
    return k;
}

std::vector<double> uniform(int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(static_cast<double>(i) / (points - 1));
    return g;
}

StudyReport sample_report() {
    StudyReport rep;
    rep.kernel = "greens_laplace";
    rep.method = MethodTag::ModifiedGalerkin;
    rep.r = 0;
    rep.n_list = {2, 4};
    rep.lambda_ref = 1.0 / (pi * pi);
    StudyRow a;
    a.n = 2;
    a.lambda = 0.1 / 3.0;
    a.lambda_error = 3.753123456789e-3;
    a.vector_error = 0.1;
    a.wall_time_ms = 1.25;
    StudyRow b = a;
    b.n = 4;
    b.lambda_error = 2.95e-4;
    b.eoc_lambda = 3.6694;
    b.eoc_vector = 1.0 / 3.0;
    b.lambda_floor = true;
    rep.rows = {a, b};
    return rep;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("exact reference") {
    const ReferenceSolution ref = make_reference(laplace());
    CHECK(ref.source == ReferenceSource::Exact);
    CHECK(ref.lambda_ref == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-15));
    // symmetric kernel: dual is phi / <phi, phi> = 2 sin(pi s)
    CHECK(ref.phi_dual(0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ref.phi_dual(0.25) == doctest::Approx(2.0 * std::sin(pi / 4)).epsilon(1e-12));
    const double pairing = inner_product(ref.phi_ref, ref.phi_dual, make_mesh(64), gauss_rule(10));
    CHECK(std::abs(pairing - 1.0) <= 1e-12);
}

TEST_CASE("fine mesh reference") {
    const GreenKernel k = builtin_kernel("smooth_exp");
    const ReferenceSolution ref = make_reference(k, 32, 1);
    CHECK(ref.source == ReferenceSource::FineMesh);
    CHECK(ref.lambda_ref > 0.0);
    const double pairing = inner_product(ref.phi_ref, ref.phi_dual, make_mesh(64), gauss_rule(10));
    CHECK(std::abs(pairing - 1.0) <= 1e-12);
    // the reference is itself an eigenfunction of K
    const Mesh m = make_mesh(32);
    for (double s : {0.2, 0.5, 0.9})
        CHECK(std::abs(apply_K(k, ref.phi_ref, s, gauss_rule(10), m) - ref.lambda_ref * ref.phi_ref(s)) <= 1e-9);
}

TEST_CASE("non-symmetric kernel uses the adjoint for the dual") {
    const GreenKernel k =
        make_kernel({"skew", "t*(1-s)*(1+s)", "s*(1-t)*(1+s)", std::nullopt, std::nullopt, std::nullopt});
    const ReferenceSolution ref = make_reference(k, 32, 1);
    const double pairing = inner_product(ref.phi_ref, ref.phi_dual, make_mesh(64), gauss_rule(10));
    CHECK(std::abs(pairing - 1.0) <= 1e-12);
    // E phi_ref = phi_ref, and E kills the rest of the spectrum's span
    const ReferenceSolution adj = make_reference(k.adjoint(), 32, 1);
    CHECK(ref.lambda_ref == doctest::Approx(adj.lambda_ref).epsilon(1e-8));
}

TEST_CASE("eigenvalue error") {
    const ReferenceSolution ref = make_reference(laplace());
    CHECK(eigenvalue_error(1.0 / 12, ref) == doctest::Approx(0.0179879).epsilon(1e-5));
    CHECK(eigenvalue_error(1.0 / (pi * pi), ref) == 0.0);
}

TEST_CASE("vector error") {
    const ReferenceSolution ref = make_reference(laplace());
    const auto grid = uniform(1001);
    const Mesh mesh = make_mesh(8);
    const QuadRule q = gauss_rule(10);
    CHECK(vector_error([](double s) { return std::sin(2 * pi * s); }, ref, grid, mesh, q) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vector_error([](double) { return 1.0; }, ref, grid, mesh, q) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vector_error([](double s) { return -3 * std::sin(pi * s); }, ref, grid, mesh, q) <= 1e-13);
}

TEST_CASE("orders of convergence") {
    const std::vector<double> e = {1e-2, 2.5e-3, 6.25e-4};
    const auto r = eoc(e);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(eoc(std::vector<double>{1e-3}).empty());
    CHECK(code_of([] { eoc(std::vector<double>{1e-3, 0.0}); }) == ErrorCode::NonPositiveError);
    CHECK(code_of([] { eoc(std::vector<double>{-1e-3, 1e-4}); }) == ErrorCode::NonPositiveError);

    CHECK_NOTHROW(require_doubling(std::vector<int>{1, 2, 4, 8}));
    CHECK(code_of([] { require_doubling(std::vector<int>{3, 5}); }) == ErrorCode::NonDoubling);
    CHECK(code_of([] { require_doubling(std::vector<int>{2, 4, 4}); }) == ErrorCode::NonDoubling);
}

TEST_CASE("study rows") {
    const std::vector<int> ns = {2, 4, 8};
    const StudyReport rep = run_study(laplace(), MethodTag::Galerkin, 0, ns);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.reference_source == ReferenceSource::Exact);
    CHECK(rep.rows[0].lambda_error == doctest::Approx(0.0179879).epsilon(1e-5));
    // a rate belongs to the finer of the two meshes it compares
    CHECK_FALSE(rep.rows[0].eoc_lambda);
    REQUIRE(rep.rows[2].eoc_lambda);
    CHECK(std::abs(*rep.rows[2].eoc_lambda - 1.96) <= 0.01);
    for (const auto& row : rep.rows) CHECK(row.wall_time_ms >= 0.0);
    CHECK(code_of([&] { run_study(laplace(), MethodTag::Galerkin, 0, std::vector<int>{2, 3}); }) ==
          ErrorCode::NonDoubling);
}

TEST_CASE("residual rate diagnostic") {
    const EvalFn x = [](double t) { return std::cos(3 * t); };
    const std::vector<int> ns = {8, 16, 32, 64};
    const RateDiagnostic orth = residual_rate_diagnostic(laplace(), x, Family::Orthogonal, 0, ns);
    const RateDiagnostic intp = residual_rate_diagnostic(laplace(), x, Family::Interpolatory, 0, ns);
    REQUIRE(orth.rates.size() == 3);
    REQUIRE(intp.rates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(orth.rates[i]);
        REQUIRE(intp.rates[i]);
        CHECK(std::abs(*orth.rates[i] - 2.0) <= 0.2);
        CHECK(std::abs(*intp.rates[i] - 2.0) <= 0.3);
    }
}

}

TEST_SUITE("report") {

TEST_CASE("formats") {
    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK(parse_report_format("json") == ReportFormat::Json);
    CHECK(parse_report_format("md") == ReportFormat::Markdown);
    CHECK(code_of([] { parse_report_format("xml"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("csv and markdown layout") {
    const StudyReport rep = sample_report();
    const std::string csv = render_report(rep, ReportFormat::Csv);
    CHECK(csv.rfind("n,lambda,lambda_error,eoc_lambda,vector_error,eoc_vector,wall_time_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const std::string md = render_report(rep, ReportFormat::Markdown);
    CHECK(md.find("| n | error | rate |") != std::string::npos);
    CHECK(md.find("3.75e-03") != std::string::npos);
    CHECK(md.find("3.67") != std::string::npos);

    StudyReport single = rep;
    single.rows.resize(1);
    single.n_list = {2};
    CHECK_NOTHROW(render_report(single, ReportFormat::Markdown));
    const std::string one_row = render_report(single, ReportFormat::Csv);
    CHECK(std::count(one_row.begin(), one_row.end(), '\n') == 2);
}

TEST_CASE("json round trip is exact") {
    const StudyReport rep = sample_report();
    const std::string js = render_report(rep, ReportFormat::Json);
    const StudyReport back = parse_report_json(js);
    CHECK(back.kernel == rep.kernel);
    CHECK(back.method == rep.method);
    CHECK(back.n_list == rep.n_list);
    CHECK(back.lambda_ref == rep.lambda_ref);
    REQUIRE(back.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(back.rows[i].n == rep.rows[i].n);
        CHECK(back.rows[i].lambda == rep.rows[i].lambda);
        CHECK(back.rows[i].lambda_error == rep.rows[i].lambda_error);
        CHECK(back.rows[i].vector_error == rep.rows[i].vector_error);
        CHECK(back.rows[i].eoc_lambda == rep.rows[i].eoc_lambda);
        CHECK(back.rows[i].eoc_vector == rep.rows[i].eoc_vector);
        CHECK(back.rows[i].lambda_floor == rep.rows[i].lambda_floor);
    }
    CHECK(render_report(back, ReportFormat::Json) == js);
    CHECK(code_of([] { parse_report_json("{not json"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("studies are deterministic apart from timing") {
    const std::vector<int> ns = {2, 4, 8};
    StudyReport a = run_study(laplace(), MethodTag::ModifiedCollocation, 0, ns);
    StudyReport b = run_study(laplace(), MethodTag::ModifiedCollocation, 0, ns);
    for (auto* rep : {&a, &b})
        for (auto& row : rep->rows) row.wall_time_ms = 0.0;
    CHECK(render_report(a, ReportFormat::Json) == render_report(b, ReportFormat::Json));
}

}

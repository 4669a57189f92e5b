#include <doctest.h>

#include <cmath>
#include <numbers>

#include "expect.hpp"
#include "greenspec/discretize.hpp"

using namespace greenspec;

namespace {

constexpr double pi = std::numbers::pi;

const GreenKernel& laplace() {
    static const GreenKernel k = builtin_kernel("greens_laplace");
    return k;
}

double max_abs(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("discretize") {

TEST_CASE("apply K") {
    const QuadRule q = gauss_rule(10);
    const Mesh m = make_mesh(4);
    const EvalFn sine = [](double t) { return std::sin(pi * t); };
    const EvalFn one = [](double) { return 1.0; };
    CHECK(apply_K(laplace(), sine, 0.5, q, m) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-12));
    CHECK(apply_K(laplace(), one, 0.5, q, m) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(apply_K(laplace(), sine, 0.0, q, m) == 0.0);
    // (K1)(s) = s(1-s)/2 at points that are not breakpoints
    for (double s : {0.1, 0.37, 0.9}) CHECK(apply_K(laplace(), one, s, q, m) == doctest::Approx(s * (1 - s) / 2).epsilon(1e-14));
}

TEST_CASE("apply K twice") {
    const QuadRule q = gauss_rule(10);
    const Mesh m = make_mesh(4);
    const EvalFn sine = [](double t) { return std::sin(pi * t); };
    const EvalFn one = [](double) { return 1.0; };
    CHECK(apply_K2(laplace(), one, 0.5, q, m) == doctest::Approx(5.0 / 384.0).epsilon(1e-13));
    CHECK(apply_K2(laplace(), sine, 0.5, q, m) == doctest::Approx(1.0 / std::pow(pi, 4)).epsilon(1e-11));
    CHECK(apply_K2(laplace(), sine, 0.0, q, m) == 0.0);
}

TEST_CASE("closed-form matrices") {
    const QuadRule q = gauss_rule(10);
    const PolySpace s1(make_mesh(1), 0);
    CHECK(std::abs(assemble_galerkin(laplace(), s1, q)(0, 0) - 1.0 / 12) <= 1e-12);
    CHECK(std::abs(assemble_collocation(laplace(), s1, q)(0, 0) - 0.125) <= 1e-12);
    CHECK(std::abs(assemble_second(laplace(), s1, q, Family::Orthogonal)(0, 0) - 1.0 / 120) <= 1e-12);
    CHECK(std::abs(assemble_second(laplace(), s1, q, Family::Interpolatory)(0, 0) - 5.0 / 384) <= 1e-12);

    const PolySpace s2(make_mesh(2), 0);
    Matrix G(2, 2), C(2, 2);
    G << 5.0 / 96, 1.0 / 32, 1.0 / 32, 5.0 / 96;
    C << 1.0 / 16, 1.0 / 32, 1.0 / 32, 1.0 / 16;
    CHECK(max_abs(assemble_galerkin(laplace(), s2, q) - G) <= 1e-12);
    CHECK(max_abs(assemble_collocation(laplace(), s2, q) - C) <= 1e-12);
}

TEST_CASE("orthogonal family keeps symmetry") {
    const QuadRule q = gauss_rule(10);
    for (const char* name : {"greens_laplace", "smooth_exp"})
        for (int r : {0, 1}) {
            const PolySpace s(make_mesh(3), r);
            const DiscreteOperator op = discretize(builtin_kernel(name), s, q, Family::Orthogonal, true);
            CHECK(op.A.allFinite());
            CHECK(op.M2->allFinite());
            CHECK(max_abs(op.A - op.A.transpose()) <= 1e-12);
            CHECK(max_abs(*op.M2 - op.M2->transpose()) <= 1e-12);
        }
}

TEST_CASE("collocation rows reproduce K at the nodes") {
    const QuadRule q = gauss_rule(10);
    const PolySpace s(make_mesh(3), 1);
    const Matrix A = assemble_collocation(laplace(), s, q);
    std::vector<double> c(s.dim());
    for (int i = 0; i < s.dim(); ++i) c[i] = std::cos(0.7 * i) + 0.1 * i;
    const PiecewiseFn f = make_piecewise(s, Family::Interpolatory, c);
    const Vector Ac = A * Eigen::Map<const Vector>(c.data(), c.size());
    const auto nodes = lagrange_nodes(s);
    for (int p = 0; p < s.dim(); ++p)
        CHECK(std::abs(Ac[p] - apply_K(laplace(), f.as_function(), nodes[p], q, s.mesh())) <= 1e-13);
}

TEST_CASE("matrix composition") {
    const QuadRule q = gauss_rule(10);
    const PolySpace s(make_mesh(3), 1);
    const DiscreteOperator op = discretize(laplace(), s, q, Family::Orthogonal, true);
    std::vector<double> c(s.dim());
    for (int i = 0; i < s.dim(); ++i) c[i] = std::sin(1.3 * i + 0.2);
    const Eigen::Map<const Vector> cv(c.data(), c.size());

    const EvalFn f = make_piecewise(s, Family::Orthogonal, c).as_function();
    const PiecewiseFn PKf = project_orthogonal(s, [&](double t) { return apply_K(laplace(), f, t, q, s.mesh()); }, q);
    const EvalFn PKf_fn = PKf.as_function();
    const PiecewiseFn PKPKf =
        project_orthogonal(s, [&](double t) { return apply_K(laplace(), PKf_fn, t, q, s.mesh()); }, q);
    const Vector AAc = op.A * (op.A * cv);
    for (int i = 0; i < s.dim(); ++i) CHECK(std::abs(PKPKf.coeffs()[i] - AAc[i]) <= 1e-12);

    const PiecewiseFn PK2f = project_orthogonal(s, [&](double t) { return apply_K2(laplace(), f, t, q, s.mesh()); }, q);
    const Vector M2c = *op.M2 * cv;
    for (int i = 0; i < s.dim(); ++i) CHECK(std::abs(PK2f.coeffs()[i] - M2c[i]) <= 1e-12);
}

TEST_CASE("tabulated second application matches the direct one") {
    const QuadRule q = gauss_rule(10);
    for (Family family : {Family::Orthogonal, Family::Interpolatory}) {
        const PolySpace s(make_mesh(2), 1);
        const Matrix M2 = assemble_second(laplace(), s, q, family);
        if (family == Family::Interpolatory) {
            const auto nodes = lagrange_nodes(s);
            for (int p = 0; p < s.dim(); ++p)
                for (int j = 0; j < s.dim(); ++j) {
                    const EvalFn b = basis_function(s, family, j).as_function();
                    CHECK(std::abs(M2(p, j) - apply_K2(laplace(), b, nodes[p], q, s.mesh())) <= 1e-13);
                }
        }
        const EvalFn g = [](double t) { return std::exp(t) * (1 - t); };
        const TabulatedOperand op(s.mesh(), q, g);
        for (double x : {0.0, 0.13, 0.5, 0.77, 1.0})
            CHECK(std::abs(op.apply(laplace(), x) - apply_K(laplace(), g, x, q, s.mesh())) <= 1e-14);
    }
}

TEST_CASE("projected eigenfunction residual decays like h^2") {
    const QuadRule q = gauss_rule(10);
    const EvalFn sine = [](double t) { return std::sin(pi * t); };
    std::vector<double> res;
    for (int n : {4, 8, 16, 32}) {
        const PolySpace s(make_mesh(n), 0);
        const Matrix A = assemble_galerkin(laplace(), s, q);
        const PiecewiseFn c = project_orthogonal(s, sine, q);
        const Eigen::Map<const Vector> cv(c.coeffs().data(), s.dim());
        const Vector r = A * cv - cv / (pi * pi);
        const PiecewiseFn rf = make_piecewise(s, Family::Orthogonal, std::span<const double>(r.data(), r.size()));
        double worst = 0.0;
        for (double t : standard_grid(s)) worst = std::max(worst, std::abs(rf(t)));
        res.push_back(worst);
    }
    for (std::size_t i = 0; i + 1 < res.size(); ++i) {
        CHECK(res[i + 1] < res[i]);
        CHECK(std::abs(std::log2(res[i] / res[i + 1]) - 2.0) <= 0.2);
    }
}

}

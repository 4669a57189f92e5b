#include "greenspec/discretize.hpp"

#include <algorithm>

namespace greenspec {

const char* to_string(Family family) noexcept {
    return family == Family::Orthogonal ? "orthogonal" : "interpolatory";
}

double apply_K(const GreenKernel& k, const EvalFn& f, double s, const QuadRule& rule, const Mesh& mesh) {
    double sum = 0.0;
    for (int j = 0; j < mesh.n(); ++j) {
        sum += integrate_split(
            rule, mesh.left(j), mesh.right(j), s, [&](double t) { return k.kappa1(s, t) * f(t); },
            [&](double t) { return k.kappa2(s, t) * f(t); });
    }
    return sum;
}

double apply_K2(const GreenKernel& k, const EvalFn& f, double s, const QuadRule& rule, const Mesh& mesh) {
    const auto inner = [&](double u) { return apply_K(k, f, u, rule, mesh); };
    double sum = 0.0;
    for (int j = 0; j < mesh.n(); ++j) {
        sum += integrate_split(
            rule, mesh.left(j), mesh.right(j), s, [&](double u) { return k.kappa1(s, u) * inner(u); },
            [&](double u) { return k.kappa2(s, u) * inner(u); });
    }
    return sum;
}

GlobalGrid make_global_grid(const Mesh& mesh, const QuadRule& rule) {
    GlobalGrid grid;
    grid.per_panel = rule.size();
    const double half = 0.5 * mesh.h();
    for (int j = 0; j < mesh.n(); ++j) {
        const double mid = 0.5 * (mesh.left(j) + mesh.right(j));
        for (int i = 0; i < rule.size(); ++i) {
            grid.nodes.push_back(mid + half * rule.nodes[i]);
            grid.weights.push_back(half * rule.weights[i]);
        }
    }
    return grid;
}

PiecewiseFn basis_function(const PolySpace& space, Family family, int q) {
    if (q < 0 || q >= space.dim()) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
    std::vector<double> coeffs(space.dim(), 0.0);
    coeffs[q] = 1.0;
    return make_piecewise(space, family, coeffs);
}

PiecewiseFn make_piecewise(const PolySpace& space, Family family, std::span<const double> coeffs) {
    return PiecewiseFn(space, family == Family::Orthogonal ? Representation::Legendre : Representation::Nodal,
                       std::vector<double>(coeffs.begin(), coeffs.end()));
}

namespace {

void local_basis(const PolySpace& space, Family family, double x, std::span<double> out) {
    if (family == Family::Orthogonal)
        space.legendre_values(x, out);
    else
        space.lagrange_values(x, out);
}

// Accumulates w * kappa(s,t) * b(t) over the Gauss nodes of [a,b] into the
// local block of `panel`.
void accumulate_interval(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                         int panel, double a, double b, double s, std::span<double> out) {
    const int m = space.local_dim();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double basis[64];
    for (int i = 0; i < rule.size(); ++i) {
        const double t = mid + half * rule.nodes[i];
        const double weight = half * rule.weights[i] * k(s, t);
        local_basis(space, family, space.local_coordinate(panel, t), std::span<double>(basis, m));
        for (int eta = 0; eta < m; ++eta) out[space.index(panel, eta)] += weight * basis[eta];
    }
}

}  // namespace

void apply_K_to_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                      double s, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const Mesh& mesh = space.mesh();
    for (int j = 0; j < mesh.n(); ++j) {
        const double a = mesh.left(j);
        const double b = mesh.right(j);
        if (s > a && s < b) {
            accumulate_interval(k, space, family, rule, j, a, s, s, out);
            accumulate_interval(k, space, family, rule, j, s, b, s, out);
        } else {
            accumulate_interval(k, space, family, rule, j, a, b, s, out);
        }
    }
}

Matrix tabulate_K_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                        const GlobalGrid& grid) {
    Matrix table(grid.size(), space.dim());
    for (int i = 0; i < grid.size(); ++i)
        apply_K_to_basis(k, space, family, rule, grid.nodes[i],
                         std::span<double>(table.row(i).data(), space.dim()));
    return table;
}

void apply_K2_to_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                       const GlobalGrid& grid, const Matrix& table, double s, std::span<double> out) {
    const int dim = space.dim();
    Eigen::Map<Eigen::RowVectorXd> result(out.data(), dim);
    result.setZero();
    const Mesh& mesh = space.mesh();
    Eigen::RowVectorXd fresh(dim);
    for (int j = 0; j < mesh.n(); ++j) {
        const double a = mesh.left(j);
        const double b = mesh.right(j);
        if (s > a && s < b) {
            for (const auto& [lo, hi] : {std::pair{a, s}, std::pair{s, b}}) {
                const double half = 0.5 * (hi - lo);
                const double mid = 0.5 * (hi + lo);
                for (int i = 0; i < rule.size(); ++i) {
                    const double u = mid + half * rule.nodes[i];
                    apply_K_to_basis(k, space, family, rule, u, std::span<double>(fresh.data(), dim));
                    result += (half * rule.weights[i] * k(s, u)) * fresh;
                }
            }
        } else {
            for (int i = j * grid.per_panel; i < (j + 1) * grid.per_panel; ++i)
                result += (grid.weights[i] * k(s, grid.nodes[i])) * table.row(i);
        }
    }
}

Matrix assemble_galerkin(const GreenKernel& k, const PolySpace& space, const QuadRule& rule) {
    const int dim = space.dim();
    const int m = space.local_dim();
    const double half = 0.5 * space.mesh().h();
    Matrix A = Matrix::Zero(dim, dim);
    Eigen::RowVectorXd row(dim);
    std::vector<double> psi(m);
    // Outer integral over s at the Gauss nodes of panel p; the inner t
    // integral is split at t = s inside the same panel.
    for (int p = 0; p < space.n(); ++p) {
        for (int i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            const double s = space.to_global(p, x);
            apply_K_to_basis(k, space, Family::Orthogonal, rule, s, std::span<double>(row.data(), dim));
            space.legendre_values(x, psi);
            for (int eta = 0; eta < m; ++eta) A.row(space.index(p, eta)) += (half * rule.weights[i] * psi[eta]) * row;
        }
    }
    return A;
}

Matrix assemble_collocation(const GreenKernel& k, const PolySpace& space, const QuadRule& rule) {
    const int dim = space.dim();
    const auto nodes = lagrange_nodes(space);
    Matrix A(dim, dim);
    for (int p = 0; p < dim; ++p)
        apply_K_to_basis(k, space, Family::Interpolatory, rule, nodes[p], std::span<double>(A.row(p).data(), dim));
    return A;
}

Matrix assemble_second(const GreenKernel& k, const PolySpace& space, const QuadRule& rule, Family family) {
    const int dim = space.dim();
    const GlobalGrid grid = make_global_grid(space.mesh(), rule);
    const Matrix table = tabulate_K_basis(k, space, family, rule, grid);
    Matrix M2 = Matrix::Zero(dim, dim);
    if (family == Family::Interpolatory) {
        const auto nodes = lagrange_nodes(space);
        for (int p = 0; p < dim; ++p)
            apply_K2_to_basis(k, space, family, rule, grid, table, nodes[p],
                              std::span<double>(M2.row(p).data(), dim));
        return M2;
    }
    const int m = space.local_dim();
    const double half = 0.5 * space.mesh().h();
    Eigen::RowVectorXd row(dim);
    std::vector<double> psi(m);
    for (int p = 0; p < space.n(); ++p) {
        for (int i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            apply_K2_to_basis(k, space, family, rule, grid, table, space.to_global(p, x),
                              std::span<double>(row.data(), dim));
            space.legendre_values(x, psi);
            for (int eta = 0; eta < m; ++eta)
                M2.row(space.index(p, eta)) += (half * rule.weights[i] * psi[eta]) * row;
        }
    }
    return M2;
}

DiscreteOperator discretize(const GreenKernel& k, const PolySpace& space, const QuadRule& rule, Family family,
                            bool with_second) {
    DiscreteOperator op{space, family, rule,
                        family == Family::Orthogonal ? assemble_galerkin(k, space, rule)
                                                     : assemble_collocation(k, space, rule),
                        std::nullopt};
    if (with_second) op.M2 = assemble_second(k, space, rule, family);
    return op;
}

TabulatedOperand::TabulatedOperand(const Mesh& mesh, const QuadRule& rule, EvalFn f)
    : mesh_(mesh), rule_(rule), grid_(make_global_grid(mesh, rule)), f_(std::move(f)) {
    values_.resize(grid_.size());
    for (int i = 0; i < grid_.size(); ++i) values_[i] = f_(grid_.nodes[i]);
}

double TabulatedOperand::apply(const GreenKernel& k, double s) const {
    double sum = 0.0;
    for (int j = 0; j < mesh_.n(); ++j) {
        const double a = mesh_.left(j);
        const double b = mesh_.right(j);
        if (s > a && s < b) {
            sum += integrate_split(
                rule_, a, b, s, [&](double u) { return k.kappa1(s, u) * f_(u); },
                [&](double u) { return k.kappa2(s, u) * f_(u); });
        } else {
            for (int i = j * grid_.per_panel; i < (j + 1) * grid_.per_panel; ++i)
                sum += grid_.weights[i] * k(s, grid_.nodes[i]) * values_[i];
        }
    }
    return sum;
}

}  // namespace greenspec

#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "greenspec/kernel.hpp"
#include "greenspec/mesh_basis.hpp"
#include "greenspec/quadrature.hpp"

namespace greenspec {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Orthogonal (Galerkin, Legendre coefficients) or interpolatory
/// (collocation, nodal values) projection onto X_n.
enum class Family { Orthogonal, Interpolatory };

const char* to_string(Family family) noexcept;

/// (K f)(s). The integral is split at every mesh breakpoint and at t = s, so
/// no quadrature subinterval crosses the kernel kink or a jump of f.
double apply_K(const GreenKernel& k, const EvalFn& f, double s, const QuadRule& rule, const Mesh& mesh);

/// (K K f)(s) by nested quadrature: (K f)(u) is recomputed at every outer node.
double apply_K2(const GreenKernel& k, const EvalFn& f, double s, const QuadRule& rule, const Mesh& mesh);

/// Mapped Gauss nodes of every mesh panel, panel by panel.
struct GlobalGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    int per_panel = 0;

    int size() const noexcept { return static_cast<int>(nodes.size()); }
};

GlobalGrid make_global_grid(const Mesh& mesh, const QuadRule& rule);

/// Basis function q of X_n for the family (psi for orthogonal, Lagrange
/// nodal function for interpolatory).
PiecewiseFn basis_function(const PolySpace& space, Family family, int q);

/// Element of X_n with the given coefficient vector in the family's basis.
PiecewiseFn make_piecewise(const PolySpace& space, Family family, std::span<const double> coeffs);

/// out[q] = (K b_q)(s) for every basis function b_q of the family.
void apply_K_to_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                      double s, std::span<double> out);

/// Values of K b_q on the global grid: row i holds (K b_q)(u_i) for all q.
Matrix tabulate_K_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                        const GlobalGrid& grid);

/// out[q] = (K K b_q)(s), reusing the tabulation away from s and
/// recomputing K b_q at the split nodes of the panel containing s.
void apply_K2_to_basis(const GreenKernel& k, const PolySpace& space, Family family, const QuadRule& rule,
                       const GlobalGrid& grid, const Matrix& table, double s, std::span<double> out);

/// A[p][q] = <K psi_q, psi_p>.
Matrix assemble_galerkin(const GreenKernel& k, const PolySpace& space, const QuadRule& rule);

/// A[p][q] = (K L_q)(tau_p).
Matrix assemble_collocation(const GreenKernel& k, const PolySpace& space, const QuadRule& rule);

/// M2[p][q] = <K^2 psi_q, psi_p> (orthogonal) or (K^2 L_q)(tau_p) (interpolatory).
Matrix assemble_second(const GreenKernel& k, const PolySpace& space, const QuadRule& rule, Family family);

/// Matrices of pi_n K and pi_n K^2 restricted to X_n.
struct DiscreteOperator {
    PolySpace space;
    Family family;
    QuadRule quad;
    Matrix A;
    std::optional<Matrix> M2;
};

DiscreteOperator discretize(const GreenKernel& k, const PolySpace& space, const QuadRule& rule, Family family,
                            bool with_second);

/// Evaluates (K F)(s) for a function F that is smooth inside each mesh
/// panel, given F tabulated on the global grid. Only the panel containing s
/// needs fresh evaluations of F.
class TabulatedOperand {
public:
    TabulatedOperand(const Mesh& mesh, const QuadRule& rule, EvalFn f);

    double apply(const GreenKernel& k, double s) const;
    const GlobalGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    Mesh mesh_;
    QuadRule rule_;
    GlobalGrid grid_;
    EvalFn f_;
    std::vector<double> values_;
};

}  // namespace greenspec

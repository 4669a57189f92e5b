#pragma once

#include <span>
#include <vector>

#include "greenspec/function.hpp"
#include "greenspec/quadrature.hpp"

namespace greenspec {

/// Uniform partition 0 = t_0 < ... < t_n = 1 with t_j = j/n.
class Mesh {
public:
    explicit Mesh(int n);

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    double left(int panel) const { return breakpoints_[panel]; }
    double right(int panel) const { return breakpoints_[panel + 1]; }

    /// 0-based panel owning t. Panels are (t_{j-1}, t_j] with t_0 owned by the
    /// first panel; Side::Right selects [t_{j-1}, t_j) instead.
    int panel_of(double t, Side side = Side::Owner) const;

private:
    int n_;
    double h_;
    std::vector<double> breakpoints_;
};

/// Throws InvalidMesh for n < 1.
Mesh make_mesh(int n);

/// X_n: piecewise polynomials of degree <= 2r on a uniform mesh, without
/// continuity across breakpoints. Global basis index is panel*(2r+1) + eta.
class PolySpace {
public:
    PolySpace(Mesh mesh, int r);

    const Mesh& mesh() const noexcept { return mesh_; }
    int n() const noexcept { return mesh_.n(); }
    int r() const noexcept { return r_; }
    int local_dim() const noexcept { return 2 * r_ + 1; }
    int dim() const noexcept { return mesh_.n() * local_dim(); }
    int index(int panel, int eta) const noexcept { return panel * local_dim() + eta; }

    /// Maps t to the reference coordinate of the given panel.
    double local_coordinate(int panel, double t) const;
    double to_global(int panel, double x) const;

    /// Collocation nodes of one panel in reference coordinates.
    const std::vector<double>& reference_nodes() const noexcept { return reference_nodes_; }
    /// All 2r+1 Lagrange basis values at reference coordinate x.
    void lagrange_values(double x, std::span<double> out) const;
    /// All 2r+1 orthonormal Legendre basis values at reference coordinate x.
    void legendre_values(double x, std::span<double> out) const;

private:
    Mesh mesh_;
    int r_;
    std::vector<double> reference_nodes_;
    std::vector<double> barycentric_weights_;
};

/// L_eta(x) by the Bonnet recurrence.
double legendre_eval(int eta, double x);

/// Orthonormal basis function psi_{panel,eta}(t) = sqrt((2 eta + 1)/h) L_eta(...)
/// on its owned panel and zero elsewhere. Panel index is 0-based.
double basis_eval(const PolySpace& space, int panel, int eta, double t);

/// Collocation points, panel by panel. Shared endpoints are repeated.
std::vector<double> lagrange_nodes(const PolySpace& space);

/// Union of `uniform_points` equispaced points, panel midpoints and
/// collocation nodes, sorted and deduplicated.
std::vector<double> standard_grid(const PolySpace& space, int uniform_points = 1001);

enum class Representation { Legendre, Nodal };

/// Element of X_n, either in the orthonormal Legendre basis or by nodal
/// values at the collocation points.
class PiecewiseFn {
public:
    PiecewiseFn(PolySpace space, Representation rep, std::vector<double> coeffs);

    const PolySpace& space() const noexcept { return space_; }
    Representation representation() const noexcept { return rep_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Throws OutOfDomain for t outside [0,1].
    double operator()(double t, Side side = Side::Owner) const;
    /// Value of the local polynomial of `panel` at t (t need not lie in it).
    double eval_in_panel(int panel, double t) const;

    EvalFn as_function() const;

private:
    PolySpace space_;
    Representation rep_;
    std::vector<double> coeffs_;
};

double eval_piecewise(const PiecewiseFn& p, double t);

/// P_n f: Legendre coefficients <f, psi_{j,eta}> by per-panel Gauss quadrature.
PiecewiseFn project_orthogonal(const PolySpace& space, const EvalFn& f, const QuadRule& rule);

/// Q_n f: nodal values at the collocation points. Endpoint nodes take the
/// one-sided limit from inside their panel.
PiecewiseFn project_interpolatory(const PolySpace& space, const EvalFn& f);

}  // namespace greenspec

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "greenspec/discretize.hpp"
#include "greenspec/function.hpp"

namespace greenspec {

using ComplexVector = Eigen::VectorXcd;

struct EigenPair {
    std::complex<double> value;
    ComplexVector vector;
    /// ||M v - lambda v||_inf / ||v||_inf
    double residual = 0.0;
};

/// Picks one eigenvalue out of a computed spectrum. Candidates with
/// |Im lambda| > imag_tol * |lambda| are rejected first.
struct Selector {
    enum class Kind { LargestMagnitude, ClosestTo };

    Kind kind = Kind::LargestMagnitude;
    double target = 0.0;
    double imag_tol = 1e-8;

    static Selector largest() { return {}; }
    static Selector closest_to(double target) { return {Kind::ClosestTo, target, 1e-8}; }
};

/// All eigenpairs of a real square matrix: diagonal balancing, then Hessenberg
/// reduction and shifted QR. Throws NonConvergence after 30*dim sweeps.
std::vector<EigenPair> solve_dense_eigen(const Matrix& M);

/// Index of the selected pair. Ties go to the larger real part, then the
/// lower index. Throws NoRealCandidate when every pair fails the screen.
std::size_t select_index(std::span<const EigenPair> pairs, const Selector& sel);
EigenPair select_eigenpair(std::span<const EigenPair> pairs, const Selector& sel);

/// Solves lambda^2 u = lambda A u + C u through the companion matrix
/// [[A, C], [I, 0]] acting on (lambda u, u). The returned vector is u and the
/// residual is ||lambda^2 u - lambda A u - C u||_inf / ||u||_inf.
EigenPair solve_quadratic_eigen(const Matrix& A, const Matrix& C, const Selector& sel);

/// Rotates v so that its largest-magnitude entry is real and returns the
/// real part.
Vector real_part_aligned(const ComplexVector& v);

/// Factor 1/(M sigma) that makes f have grid sup-norm 1 with a positive value
/// at the first grid argmax of |f|. Throws ZeroFunction if M < 1e-14.
double sup_normalization_factor(const EvalFn& f, std::span<const double> grid);
EvalFn normalize_sup(const EvalFn& f, std::span<const double> grid);

}  // namespace greenspec

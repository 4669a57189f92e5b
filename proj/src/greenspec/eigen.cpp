#include "greenspec/eigen.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace greenspec {

namespace {

// Diagonal similarity scaling by powers of two so that row and column norms
// are comparable (the scaling step of LAPACK's gebal).
Eigen::VectorXd balance(Eigen::MatrixXd& B) {
    const Eigen::Index n = B.rows();
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    constexpr double radix = 2.0;
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(B(j, i));
                r += std::abs(B(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d(i) *= f;
                B.row(i) /= f;
                B.col(i) *= f;
            }
        }
    }
    return d;
}

}  // namespace

std::vector<EigenPair> solve_dense_eigen(const Matrix& M) {
    if (M.rows() != M.cols() || M.rows() < 1)
        throw Error(ErrorCode::InvalidArgument, "eigensolver needs a nonempty square matrix");
    if (!M.allFinite()) throw Error(ErrorCode::InvalidArgument, "eigensolver input has NaN or Inf entries");

    const Eigen::Index n = M.rows();
    Eigen::MatrixXd B = M;
    const Eigen::VectorXd d = balance(B);

    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(static_cast<Eigen::Index>(30 * n));
    solver.compute(B, true);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NonConvergence,
                    "QR iteration did not converge within " + std::to_string(30 * n) + " sweeps");

    const Eigen::VectorXcd values = solver.eigenvalues();
    Eigen::MatrixXcd vectors = solver.eigenvectors();
    // Undo the balancing similarity: M = D B D^{-1}.
    for (Eigen::Index i = 0; i < n; ++i) vectors.row(i) *= d(i);

    std::vector<EigenPair> pairs;
    pairs.reserve(n);
    const Eigen::MatrixXcd Mc = M.cast<std::complex<double>>();
    for (Eigen::Index i = 0; i < n; ++i) {
        EigenPair pair;
        pair.value = values(i);
        pair.vector = vectors.col(i);
        const double vnorm = pair.vector.cwiseAbs().maxCoeff();
        pair.vector /= vnorm;
        pair.residual = (Mc * pair.vector - pair.value * pair.vector).cwiseAbs().maxCoeff();
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

std::size_t select_index(std::span<const EigenPair> pairs, const Selector& sel) {
    if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "no eigenpairs to select from");
    bool found = false;
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto value = pairs[i].value;
        if (std::abs(value.imag()) > sel.imag_tol * std::abs(value)) continue;
        // Lower score is better.
        const double score = sel.kind == Selector::Kind::LargestMagnitude ? -std::abs(value)
                                                                            : std::abs(value - sel.target);
        if (!found || score < best_score ||
            (score == best_score && value.real() > pairs[best].value.real())) {
            found = true;
            best = i;
            best_score = score;
        }
    }
    if (!found)
        throw Error(ErrorCode::NoRealCandidate, "no eigenvalue passes the imaginary-part screen");
    return best;
}

EigenPair select_eigenpair(std::span<const EigenPair> pairs, const Selector& sel) {
    return pairs[select_index(pairs, sel)];
}

EigenPair solve_quadratic_eigen(const Matrix& A, const Matrix& C, const Selector& sel) {
    if (A.rows() != A.cols() || C.rows() != C.cols() || A.rows() != C.rows())
        throw Error(ErrorCode::InvalidArgument, "quadratic eigenproblem needs square A and C of equal size");
    const Eigen::Index n = A.rows();
    Matrix companion = Matrix::Zero(2 * n, 2 * n);
    companion.topLeftCorner(n, n) = A;
    companion.topRightCorner(n, n) = C;
    companion.bottomLeftCorner(n, n).setIdentity();

    const auto pairs = solve_dense_eigen(companion);
    const EigenPair& chosen = pairs[select_index(pairs, sel)];

    const ComplexVector u = chosen.vector.tail(n);
    const double full = chosen.vector.cwiseAbs().maxCoeff();
    const double unorm = u.cwiseAbs().maxCoeff();
    if (!(unorm >= 1e-12 * full))
        throw Error(ErrorCode::DegenerateVector, "lower block of the companion eigenvector vanishes");

    EigenPair result;
    result.value = chosen.value;
    result.vector = u / unorm;
    const auto lambda = result.value;
    const Eigen::MatrixXcd Ac = A.cast<std::complex<double>>();
    const Eigen::MatrixXcd Cc = C.cast<std::complex<double>>();
    result.residual =
        (lambda * lambda * result.vector - lambda * (Ac * result.vector) - Cc * result.vector).cwiseAbs().maxCoeff();
    return result;
}

Vector real_part_aligned(const ComplexVector& v) {
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    const std::complex<double> pivot = v(argmax);
    if (std::abs(pivot) == 0.0) return Vector::Zero(v.size());
    const std::complex<double> phase = std::abs(pivot) / pivot;
    return (v * phase).real();
}

double sup_normalization_factor(const EvalFn& f, std::span<const double> grid) {
    double max_abs = 0.0;
    double sign = 1.0;
    for (const double s : grid) {
        const double value = f(s);
        if (std::abs(value) > max_abs) {
            max_abs = std::abs(value);
            sign = value < 0.0 ? -1.0 : 1.0;
        }
    }
    if (!(max_abs >= 1e-14)) throw Error(ErrorCode::ZeroFunction, "cannot normalize a function that vanishes on the grid");
    return sign / max_abs;
}

EvalFn normalize_sup(const EvalFn& f, std::span<const double> grid) {
    return f.scaled(sup_normalization_factor(f, grid));
}

}  // namespace greenspec

#pragma once
// Independent numerical oracles for tests. Nothing here calls the library's
// eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Dense = std::vector<std::vector<double>>;

// Coefficients c[0..n] of det(x I - M) = x^n + c[1] x^{n-1} + ... + c[n]
// (Faddeev-LeVerrier).
inline std::vector<double> char_poly(const Dense& M) {
    const std::size_t n = M.size();
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Dense Mk(n, std::vector<double>(n, 0.0));  // M_0 = 0
    Dense AM(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{k-1} I
        Dense next(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += M[i][l] * Mk[l][j];
                next[i][j] = s + (i == j ? c[k - 1] : 0.0);
            }
        Mk = next;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += M[i][l] * Mk[l][j];
                AM[i][j] = s;
            }
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[k] = -tr / static_cast<double>(k);
    }
    return c;
}

// All roots of the monic polynomial with coefficients c (as above) by
// Durand-Kerner, polished with a few Newton steps.
inline std::vector<cplx> poly_roots(const std::vector<double>& c) {
    const std::size_t n = c.size() - 1;
    auto p = [&](cplx x) {
        cplx v = 1.0;
        for (std::size_t k = 1; k <= n; ++k) v = v * x + c[k];
        return v;
    };
    auto dp = [&](cplx x) {
        cplx v = 0.0, d = 0.0;
        v = 1.0;
        for (std::size_t k = 1; k <= n; ++k) {
            d = d * x + v;
            v = v * x + c[k];
        }
        return d;
    };
    double bound = 1.0;
    for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, 1.0 + std::abs(c[k]));
    std::vector<cplx> z(n);
    const cplx seed(0.4, 0.9);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i)) * (0.5 * bound);
    for (int it = 0; it < 2000; ++it) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const cplx step = p(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15) break;
    }
    for (auto& x : z)
        for (int it = 0; it < 3; ++it) {
            const cplx d = dp(x);
            if (std::abs(d) > 1e-14) x -= p(x) / d;
        }
    return z;
}

// Smallest max-distance over all pairings of a and b (brute force; fine for
// the 4x4 case).
inline double matched_distance(std::vector<cplx> a, const std::vector<cplx>& b) {
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline Dense random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Dense M(n, std::vector<double>(n));
    for (auto& row : M)
        for (auto& x : row) x = u(rng);
    return M;
}

}  // namespace oracle

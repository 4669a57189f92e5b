#pragma once

#include <vector>

#include "greenspec/error.hpp"

namespace greenspec {

/// Gauss-Legendre rule on [-1,1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const noexcept { return static_cast<int>(nodes.size()); }
};

inline constexpr int kDefaultQuadOrder = 10;
inline constexpr int kMaxQuadOrder = 64;

/// Nodes are the roots of L_g, found by Newton iteration from Chebyshev
/// guesses; weights 2/((1-x^2) L_g'(x)^2). Requires 1 <= g <= 64.
QuadRule gauss_rule(int g);

/// Affinely mapped Gauss sum for the integral of f over [a,b].
template <class F>
double integrate_panel(const QuadRule& rule, double a, double b, F&& f) {
    if (a > b) throw Error(ErrorCode::InvalidArgument, "integrate_panel: a > b");
    if (a == b) return 0.0;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// Integral over [a,b] using f_left on [a,c] and f_right on [c,b]. A split
/// point outside (a,b) selects a single piece.
template <class FL, class FR>
double integrate_split(const QuadRule& rule, double a, double b, double c, FL&& f_left,
                       FR&& f_right) {
    if (a > b) throw Error(ErrorCode::InvalidArgument, "integrate_split: a > b");
    if (c <= a) return integrate_panel(rule, a, b, f_right);
    if (c >= b) return integrate_panel(rule, a, b, f_left);
    return integrate_panel(rule, a, c, f_left) + integrate_panel(rule, c, b, f_right);
}

}  // namespace greenspec

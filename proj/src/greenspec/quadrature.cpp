#include "greenspec/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace greenspec {

QuadRule gauss_rule(int g) {
    if (g < 1 || g > kMaxQuadOrder)
        throw Error(ErrorCode::InvalidArgument,
                    "gauss_rule: node count " + std::to_string(g) + " outside [1, 64]");

    QuadRule rule;
    rule.nodes.resize(g);
    rule.weights.resize(g);

    // Roots come in symmetric pairs; solve for the positive half only.
    const int half = (g + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (g + 0.5));
        double derivative = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= g; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = g * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw Error(ErrorCode::NonConvergence,
                        "gauss_rule: Newton iteration for root " + std::to_string(i) +
                            " of L_" + std::to_string(g) + " did not converge");
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= g; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        derivative = g * (x * p1 - p0) / (x * x - 1.0);
        const double weight = 2.0 / ((1.0 - x * x) * derivative * derivative);

        rule.nodes[i] = -x;
        rule.nodes[g - 1 - i] = x;
        rule.weights[i] = weight;
        rule.weights[g - 1 - i] = weight;
    }
    if (g % 2 == 1) rule.nodes[g / 2] = 0.0;
    return rule;
}

}  // namespace greenspec

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pdcw/errors.hpp"

namespace pdcw {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n with the Tricomi initial guess. Exact for
/// polynomials up to degree 2n-1; spectrally accurate for smooth decaying
/// integrands such as Gaussian-times-oscillation.
inline GaussLegendreRule gauss_legendre(int n) {
    if (n < 2) throw InvalidConfig("Gauss-Legendre rule needs n >= 2");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            // Legendre recurrence: evaluates P_n(x) and P_n'(x)
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[k] = -x;
        rule.weights[k] = w;
        rule.nodes[n - 1 - k] = x;
        rule.weights[n - 1 - k] = w;
    }
    return rule;
}

}  // namespace pdcw

#pragma once

#include <vector>

namespace collapse {

struct GaussRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre rule with n nodes, computed by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

// Integral of f over [a, b] with an n-point rule on each of `panels` panels.
template <class F>
double integrate(F&& f, double a, double b, int n = 16, int panels = 1) {
    const GaussRule& g = gauss_legendre(n);
    const double hw = 0.5 * (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (2 * p + 1) * hw;
        double part = 0.0;
        for (int i = 0; i < n; ++i) part += g.w[i] * f(c + hw * g.x[i]);
        acc += part * hw;
    }
    return acc;
}

} // namespace collapse

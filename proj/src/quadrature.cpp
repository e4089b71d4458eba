#include "toricsde/quadrature.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace tsde {

namespace {

// (G7, K15) nodes/weights on [-1, 1]; Gauss weight 0 marks Kronrod-only nodes.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

std::pair<double, double> gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kNodes[0][1] * y0;
    double k15 = kNodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * kNodes[i][0];
        double yi = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * yi;
        k15 += kNodes[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    // raw |K15 - G7| is a conservative error bound for smooth panels
    return {k15, std::abs(k15 - g7)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_panels) {
    if (a == b) return 0.0;
    std::vector<std::pair<double, double>> stack{{a, b}};
    double total = 0.0;
    int used = 0;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        auto [val, err] = gk15(f, lo, hi);
        if (err <= abs_tol || err <= rel_tol * std::abs(val)) {
            total += val;
            continue;
        }
        if (++used > max_panels)
            throw QuadratureError("adaptive quadrature did not converge");
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {  // interval exhausted at machine precision
            total += val;
            continue;
        }
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    return total;
}

} // namespace tsde

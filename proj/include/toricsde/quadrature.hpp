#pragma once

#include <functional>
#include <stdexcept>

namespace tsde {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Throws
/// QuadratureError when the panel budget runs out before reaching tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-14, int max_panels = 4000);

} // namespace tsde

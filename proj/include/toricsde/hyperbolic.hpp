#pragma once

#include <array>
#include <functional>

namespace tsde {

/// Half-space coordinates (rho > 0, eta) on the hyperbolic plane.
struct HalfSpacePoint {
    double rho;
    double eta;
    HalfSpacePoint(double r, double e);
};

/// Point of the unimodular positive definite sheet {A : det A = 1, A > 0}
/// in the space of symmetric 2x2 matrices.
class SpdPoint {
public:
    SpdPoint(double a11, double a12, double a22);
    double a11() const { return a11_; }
    double a12() const { return a12_; }
    double a22() const { return a22_; }

private:
    double a11_, a12_, a22_;
};

/// Real 2x2 matrix with determinant 1 (to 1e-12), acting by congruence.
class IsometryMap {
public:
    IsometryMap(double b11, double b12, double b21, double b22);
    const std::array<std::array<double, 2>, 2>& m() const { return b_; }

private:
    std::array<std::array<double, 2>, 2> b_;
};

/// A(rho, eta) = (1/rho) [[1, eta], [eta, rho^2 + eta^2]].
SpdPoint chart(const HalfSpacePoint& p);

/// Inverse of chart: rho = 1/A11, eta = A12/A11.
HalfSpacePoint unchart(const SpdPoint& A);

/// Congruence action B A B^T. The convention is pinned so that the rotation
/// [[0,1],[-1,0]] realizes (rho, eta) -> (rho, -eta)/(rho^2 + eta^2).
SpdPoint act(const IsometryMap& B, const SpdPoint& A);

/// Boundary circle R u {inf}; the point at infinity is explicit.
struct BoundaryPoint {
    bool infinite = false;
    double value = 0.0;
    static BoundaryPoint at(double v) { return {false, v}; }
    static BoundaryPoint infinity() { return {true, 0.0}; }
};

/// Moebius action on the boundary, the rho -> 0 limit of act.
BoundaryPoint boundary_action(const IsometryMap& B, const BoundaryPoint& eta);

/// Fourth-order central-difference estimate of rho^2 (F_rr + F_ee) at p.
/// Requires h < rho/4 so the stencil stays in the half-space.
double fd_laplacian(const std::function<double(double, double)>& field,
                    const HalfSpacePoint& p, double h);

} // namespace tsde

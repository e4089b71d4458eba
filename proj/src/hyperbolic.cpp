#include "toricsde/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace tsde {

namespace {
constexpr double kDetTol = 1e-12;
}

HalfSpacePoint::HalfSpacePoint(double r, double e) : rho(r), eta(e) {
    if (!(rho > 0.0)) throw std::domain_error("half-space point needs rho > 0");
}

SpdPoint::SpdPoint(double a11, double a12, double a22) : a11_(a11), a12_(a12), a22_(a22) {
    double det = a11_ * a22_ - a12_ * a12_;
    if (a11_ <= 0.0 || det <= 0.0) throw std::domain_error("SpdPoint: not positive definite");
    // tolerance is relative to the cancellation scale of the determinant;
    // far from the unit scale the difference cannot be resolved tighter
    double scale = 1.0 + std::abs(a11_ * a22_) + a12_ * a12_;
    if (std::abs(det - 1.0) > kDetTol * scale) throw std::domain_error("SpdPoint: det must be 1");
}

IsometryMap::IsometryMap(double b11, double b12, double b21, double b22)
    : b_{{{b11, b12}, {b21, b22}}} {
    double det = b11 * b22 - b12 * b21;
    if (std::abs(det - 1.0) > kDetTol) throw std::domain_error("IsometryMap: det must be 1");
}

SpdPoint chart(const HalfSpacePoint& p) {
    double a11 = 1.0 / p.rho;
    double a12 = p.eta / p.rho;
    double a22 = (p.rho * p.rho + p.eta * p.eta) / p.rho;
    // scrub the rounding drift of det so construction stays within tolerance
    double s = 1.0 / std::sqrt(a11 * a22 - a12 * a12);
    return SpdPoint(a11 * s, a12 * s, a22 * s);
}

HalfSpacePoint unchart(const SpdPoint& A) {
    if (A.a11() <= 0.0) throw std::domain_error("unchart: A11 must be positive");
    return HalfSpacePoint(1.0 / A.a11(), A.a12() / A.a11());
}

SpdPoint act(const IsometryMap& B, const SpdPoint& A) {
    const auto& b = B.m();
    double m11 = b[0][0] * A.a11() + b[0][1] * A.a12();
    double m12 = b[0][0] * A.a12() + b[0][1] * A.a22();
    double m21 = b[1][0] * A.a11() + b[1][1] * A.a12();
    double m22 = b[1][0] * A.a12() + b[1][1] * A.a22();
    double c11 = m11 * b[0][0] + m12 * b[0][1];
    double c12 = m11 * b[1][0] + m12 * b[1][1];
    double c22 = m21 * b[1][0] + m22 * b[1][1];
    // renormalize the multiplicative det drift
    double det = c11 * c22 - c12 * c12;
    double s = 1.0 / std::sqrt(det);
    return SpdPoint(c11 * s, c12 * s, c22 * s);
}

BoundaryPoint boundary_action(const IsometryMap& B, const BoundaryPoint& eta) {
    const auto& b = B.m();
    const double alpha = b[0][0], beta = b[0][1], gamma = b[1][0], delta = b[1][1];
    if (eta.infinite) {
        if (beta == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::at(delta / beta);
    }
    double den = alpha + beta * eta.value;
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::at((gamma + delta * eta.value) / den);
}

double fd_laplacian(const std::function<double(double, double)>& field,
                    const HalfSpacePoint& p, double h) {
    if (!(h > 0.0) || !(h < p.rho / 4.0))
        throw std::domain_error("fd_laplacian: need 0 < h < rho/4");
    static constexpr double c[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    double drr = 0.0, dee = 0.0;
    for (int i = -2; i <= 2; ++i) {
        drr += c[i + 2] * field(p.rho + i * h, p.eta);
        dee += c[i + 2] * field(p.rho, p.eta + i * h);
    }
    double lap = (drr + dee) / (12.0 * h * h);
    return p.rho * p.rho * lap;
}

} // namespace tsde

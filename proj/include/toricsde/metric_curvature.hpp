#pragma once

#include "toricsde/admissibility.hpp"
#include "toricsde/eigenfunction.hpp"
#include "toricsde/hyperbolic.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace tsde {

/// The 4-metric at one half-space point, coordinate order (rho, eta, psi1, psi2):
///   g = (d rho^2 + d eta^2) / (kappa^2 f^2) + (kappa^2 / f^2) dpsi^T P^T P dpsi,
/// with P = [[rho f_eta - eta f_rho, f_rho], [f - rho f_rho - eta f_eta, f_eta]]
/// and kappa = sqrt(rho) / sqrt(f f_rho - rho (f_rho^2 + f_eta^2)).
/// kappa is the conformal metric factor (kept distinct from the pole count k).
struct MetricAtPoint {
    Eigen::Matrix4d g;
    double kappa;
    Eigen::Matrix2d P;
};

struct CurvatureReport {
    double einstein_residual;  // |Ric - (s/4) g|_F / |Ric|_F
    double scalar;
    double lambda_drift = 0.0; // filled by verify_field
    double weyl_sd_norm;
    double weyl_asd_norm;
    double riemann_norm;
    int orientation;           // +1: volume form d rho ^ d eta ^ d psi1 ^ d psi2
};

struct GridSpec {
    double rho_min = 0.6, rho_max = 1.4;
    double eta_min = -0.5, eta_max = 0.5;
    int n_rho = 5, n_eta = 5;
    std::vector<HalfSpacePoint> points() const;
};

struct FieldReport {
    double max_einstein_residual = 0.0;
    double mean_einstein_residual = 0.0;
    double max_weyl_asd_rel = 0.0;     // |W^-| / |Riem|, after orientation choice
    double max_weyl_sd_rel = 0.0;
    double lambda_drift = 0.0;
    double scalar_mean = 0.0;
    double scalar_min = 0.0, scalar_max = 0.0;
    double min_det_phi = 0.0;
    int orientation = 1;
    bool orientation_consistent = true;
    std::size_t points = 0;
};

/// Assembles the metric; cross-checks the symplectic-pairing form of the same
/// metric entrywise to 1e-10. Throws std::domain_error outside the region
/// det Phi > 0, f > 0.
MetricAtPoint metric_at(const MultipoleData& w, const HalfSpacePoint& p);

/// Curvature by 4th-order central differences of the analytic metric entries
/// (step h in both rho and eta), standard contractions, and the frame-based
/// selfdual/anti-selfdual split. If the anti-selfdual Weyl half fails to
/// vanish under the default orientation, the orientation is flipped and
/// recorded.
CurvatureReport curvature_at(const MultipoleData& w, const HalfSpacePoint& p, double h);

/// Curvature for a signed superposition (see det_phi_closed_raw). The metric
/// uses the absolute-value factor, so it extends across the det Phi = 0
/// locus; the scalar curvature changes sign there.
CurvatureReport curvature_at_raw(const std::vector<std::pair<double, double>>& ab,
                                 const HalfSpacePoint& p, double h);

/// Grid sweep with h = h_scale * rho per point; per-point work fans out to a
/// worker pool and reduces deterministically.
FieldReport verify_field(const MultipoleData& w, const GridSpec& grid, double h_scale = 1e-3);

} // namespace tsde

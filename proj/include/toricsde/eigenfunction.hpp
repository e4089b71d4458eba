#pragma once

#include "toricsde/admissibility.hpp"
#include "toricsde/hyperbolic.hpp"
#include "toricsde/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tsde {

/// Value and partial derivatives of the eigenfunction F and of f = sqrt(rho) F
/// at a half-space point, by termwise closed-form differentiation.
struct EigenJet {
    double F, F_rho, F_eta, F_rhorho, F_etaeta, F_rhoeta;
    double f, f_rho, f_eta;
};

/// Piecewise-linear convex boundary value f_0(eta) = sum_i |a_i eta - b_i|
/// (+ an optional constant, used for degenerate test cases). Between
/// consecutive kinks the affine form is m_j eta - n_j with (m_j, n_j) the
/// signed partial sums of the weights.
class BoundaryValue {
public:
    static BoundaryValue from_weights(const MultipoleData& w);
    static BoundaryValue constant(const Rational& c);
    static BoundaryValue zero() { return constant(Rational(0)); }

    std::size_t kink_count() const { return kinks_.size(); }
    const std::vector<Rational>& kinks() const { return kinks_; }
    const std::vector<Rational>& masses() const { return masses_; }  // 2 a_i
    /// Affine piece on (y_j, y_{j+1}), j = 0..k with y_0 = -inf, y_{k+1} = +inf.
    const std::pair<Rational, Rational>& piece(std::size_t j) const { return pieces_.at(j); }

    double eval(double eta) const;

    /// Degree-1 homogeneous extension to R^2 minus the origin,
    /// hat f_0(x, y) = sum_i |a_i y - b_i x| (+ c |x|); hat f_0(1, eta) = f_0(eta).
    double homogeneous(double x, double y) const;

private:
    std::vector<Rational> kinks_;
    std::vector<Rational> masses_;
    std::vector<std::pair<Rational, Rational>> pieces_;  // size kink_count()+1
    Rational offset_;
    std::vector<double> kinks_d_, half_masses_d_;
    double offset_d_ = 0.0;
    void cache_doubles();
};

/// Termwise analytic jet of F = sum_i sqrt(a_i^2 rho^2 + (a_i eta - b_i)^2) / sqrt(rho).
EigenJet eval_jet(const MultipoleData& w, const HalfSpacePoint& p);

/// Jet of the signed superposition (see det_phi_closed_raw).
EigenJet eval_jet_raw(const std::vector<std::pair<double, double>>& ab,
                      const HalfSpacePoint& p);

BoundaryValue boundary_value(const MultipoleData& w);

/// det Phi = F^2/4 - rho^2 (F_rho^2 + F_eta^2), asserted against the
/// equivalent f-form f f_rho - rho (f_rho^2 + f_eta^2) to 1e-10.
double det_phi_closed(const MultipoleData& w, const HalfSpacePoint& p);

/// Same quantity from raw weight pairs, with no multipole invariants assumed;
/// sign(a_i) acts as the superposition coefficient, so mixed signs realize
/// non-convex boundary data whose det Phi changes sign over the half-space.
double det_phi_closed_raw(const std::vector<std::pair<double, double>>& ab,
                          const HalfSpacePoint& p);

/// Independent integral route for det Phi from the boundary data alone:
/// the mu-nu double integral of the boundary representation, reduced to four
/// single integrals (adaptive quadrature between kinks, closed-form linear
/// tails). Carries a global sign constant calibrated once against the
/// round-sphere oracle.
double det_phi_quadrature(const BoundaryValue& b, const HalfSpacePoint& p);

/// Poisson reconstruction F(rho,eta) = 1/2 int f_0(y) rho^{3/2} dy /
/// (rho^2 + (eta-y)^2)^{3/2}, via the tangent substitution (compact smooth
/// panels between kinks, closed-form outer panels).
double poisson_transform(const BoundaryValue& b, const HalfSpacePoint& p);

/// hat f_0 evaluated at (x, y) != (0, 0).
double homogeneous_extension(const BoundaryValue& b, double x, double y);

/// Transports the weights of the admissibility-normalized framing of d by a
/// unimodular map sending v_j/ell_j to (0, 1), and returns the maximum
/// deviation of the transported boundary value from ell_j over the image of
/// edge C_j (indices refer to the normalized framing; j = k is the outer edge).
double edge_constancy_check(const IsotropyData& d, std::size_t j);

} // namespace tsde

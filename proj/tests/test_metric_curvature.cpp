#include "toricsde/metric_curvature.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace tsde;

namespace {

MultipoleData rat_weights(std::initializer_list<std::pair<int, int>> halves) {
    std::vector<std::pair<Rational, Rational>> w;
    for (auto [a2, b2] : halves) w.emplace_back(Rational(a2, 2), Rational(b2, 2));
    return MultipoleData(std::move(w));
}

MultipoleData s4w() { return rat_weights({{1, -1}, {1, 1}}); }
MultipoleData cp2w() { return rat_weights({{1, 0}, {2, 1}, {1, 1}}); }
MultipoleData k4w() { return rat_weights({{1, -1}, {1, 0}, {1, 1}, {1, 2}}); }

} // namespace

TEST_CASE("metric at the round-sphere reference point") {
    MetricAtPoint m = metric_at(s4w(), {1.0, 0.0});
    // f = sqrt(2), det Phi = 1/2, kappa^2 = 2
    CHECK(m.kappa == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.g(0, 0) == doctest::Approx(0.25));
    CHECK(m.g(1, 1) == doctest::Approx(0.25));
    CHECK(m.g(2, 2) == doctest::Approx(0.5));
    CHECK(m.g(3, 3) == doctest::Approx(0.5));
    CHECK(m.g(2, 3) == doctest::Approx(0.0));
    // positive definite, torus block determinant positive
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m.g);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("metric stays positive definite toward an edge") {
    for (double rho : {1.0, 0.1, 1e-2, 1e-3, 1e-4}) {
        MetricAtPoint m = metric_at(s4w(), {rho, 0.3});
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m.g);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("torus block determinant is kappa^4 (det P)^2 / f^4") {
    std::mt19937_64 rng(521);
    std::uniform_real_distribution<double> rd(0.2, 2.5), ed(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        HalfSpacePoint p(rd(rng), ed(rng));
        MetricAtPoint m = metric_at(cp2w(), p);
        EigenJet j = eval_jet(cp2w(), p);
        double k2 = m.kappa * m.kappa;
        double expect = k2 * k2 * m.P.determinant() * m.P.determinant() /
                        (j.f * j.f * j.f * j.f);
        double got = m.g.block<2, 2>(2, 2).determinant();
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
        CHECK(got > 0.0);
    }
}

TEST_CASE("curvature of the round-sphere weights") {
    CurvatureReport r = curvature_at(s4w(), {1.0, 0.3}, 1e-3);
    CHECK(r.einstein_residual < 1e-4);
    CHECK(r.scalar == doctest::Approx(12.0).epsilon(1e-5));
    CHECK(r.weyl_sd_norm < 1e-4 * r.riemann_norm);
    CHECK(r.weyl_asd_norm < 1e-4 * r.riemann_norm);
}

TEST_CASE("curvature of the three-pole weights: one Weyl half survives") {
    CurvatureReport r = curvature_at(cp2w(), {1.0, 0.3}, 1e-3);
    CHECK(r.einstein_residual < 1e-4);
    CHECK(r.weyl_asd_norm < 1e-4 * r.riemann_norm);
    CHECK(r.weyl_sd_norm > 1e-2 * r.riemann_norm);
    CHECK(r.orientation == -1);  // the flipped volume form makes the Weyl selfdual
    CHECK(r.scalar == doctest::Approx(12.0).epsilon(1e-4));
}

TEST_CASE("residuals shrink at the stencil order under h-halving") {
    for (const auto& w : {cp2w(), k4w()}) {
        double e1 = curvature_at(w, {1.0, 0.3}, 0.08).einstein_residual;
        double e2 = curvature_at(w, {1.0, 0.3}, 0.04).einstein_residual;
        CHECK(e1 / e2 > 8.0);  // >= 3rd order; the stencil is 4th
    }
}

TEST_CASE("scalar curvature sign tracks det Phi across its zero locus") {
    // mixed-sign coefficients make a non-convex boundary value; det Phi
    // changes sign across the half-space and the scalar curvature follows it
    std::vector<std::pair<double, double>> raw{{1, 0}, {1, -2}, {-0.5, -0.5}};
    bool saw_negative = false, saw_positive = false;
    for (double rho : {0.3, 0.6, 1.0, 1.6})
        for (double eta : {-1.0, 0.0, 0.5, 1.0, 1.5}) {
            HalfSpacePoint p(rho, eta);
            double d = det_phi_closed_raw(raw, p);
            if (std::abs(d) < 0.05) continue;  // keep the stencil off the singular set
            (d > 0 ? saw_positive : saw_negative) = true;
            CurvatureReport r = curvature_at_raw(raw, p, 2e-3 * rho);
            CHECK(r.einstein_residual < 1e-3);  // still Einstein on both sides
            CHECK((r.scalar > 0) == (d > 0));
        }
    CHECK(saw_positive);
    CHECK(saw_negative);
}

TEST_CASE("metric rejects points outside the admissible region") {
    CHECK_THROWS_AS(metric_at(rat_weights({{2, 0}}), HalfSpacePoint(1.0, 0.5)),
                    std::domain_error);  // single pole: det Phi = 0
}

TEST_CASE("verify_field aggregates over the grid") {
    GridSpec grid;  // default 5x5
    FieldReport f = verify_field(s4w(), grid);
    CHECK(f.points == 25);
    CHECK(f.max_einstein_residual < 1e-4);
    CHECK(f.lambda_drift < 1e-3);
    CHECK(f.min_det_phi > 0.0);
    CHECK(f.orientation_consistent);

    FieldReport c = verify_field(cp2w(), grid);
    CHECK(c.max_einstein_residual < 1e-4);
    CHECK(c.max_weyl_asd_rel < 1e-4);
    CHECK(c.max_weyl_sd_rel > 1e-2);
    CHECK(c.lambda_drift < 1e-4);

    GridSpec empty;
    empty.n_rho = 0;
    CHECK_THROWS_AS(verify_field(s4w(), empty), std::invalid_argument);
}

TEST_CASE("weight homothety only renormalizes the torus periods") {
    MultipoleData w = cp2w();
    MultipoleData w3 = w.scaled(Rational(3));
    HalfSpacePoint p(1.1, 0.2);
    CurvatureReport a = curvature_at(w, p, 1e-3);
    CurvatureReport b = curvature_at(w3, p, 1e-3);
    CHECK(b.scalar == doctest::Approx(a.scalar).epsilon(1e-6));  // same local geometry
    MetricAtPoint ma = metric_at(w, p), mb = metric_at(w3, p);
    CHECK(mb.g(0, 0) == doctest::Approx(ma.g(0, 0)).epsilon(1e-12));
    // torus block scales by 1/9: the lattice periods absorb the homothety
    CHECK(mb.g(2, 2) == doctest::Approx(ma.g(2, 2) / 9.0).epsilon(1e-12));
}

TEST_CASE("einstein constant is the same across admissible data") {
    for (const auto& w : {s4w(), cp2w(), k4w()}) {
        CurvatureReport r = curvature_at(w, {0.9, -0.2}, 1e-3);
        CHECK(r.scalar == doctest::Approx(12.0).epsilon(1e-4));
    }
}

#include "toricsde/eigenfunction.hpp"

#include "toricsde/hyperbolic.hpp"

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
MultipoleData single_pole() { return rat_weights({{2, 0}}); }

MultipoleData random_weights(std::mt19937_64& rng, std::size_t kmax = 6) {
    std::uniform_int_distribution<int> ad(1, 4), bd(-8, 8);
    while (true) {
        std::size_t k = 1 + rng() % kmax;
        std::vector<std::pair<Rational, Rational>> pairs;
        for (std::size_t i = 0; i < k; ++i)
            pairs.emplace_back(Rational(ad(rng), 2), Rational(bd(rng), 2));
        std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
            return x.second * y.first < y.second * x.first;
        });
        bool distinct = true;
        for (std::size_t i = 1; i < k; ++i)
            if (pairs[i - 1].second * pairs[i].first == pairs[i].second * pairs[i - 1].first)
                distinct = false;
        if (!distinct) continue;
        return MultipoleData(std::move(pairs));
    }
}

HalfSpacePoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rd(0.05, 4.0), ed(-4.0, 4.0);
    return {rd(rng), ed(rng)};
}

} // namespace

TEST_CASE("jet values at reference points") {
    EigenJet one = eval_jet(rat_weights({{2, 0}}), {1.0, 0.0});
    CHECK(one.F == doctest::Approx(1.0));
    EigenJet s4 = eval_jet(s4w(), {1.0, 0.0});
    CHECK(s4.F == doctest::Approx(std::sqrt(2.0)));
    CHECK(s4.F_eta == doctest::Approx(0.0));
}

TEST_CASE("jets satisfy the eigenfunction equation analytically") {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 1000; ++trial) {
        MultipoleData w = random_weights(rng);
        HalfSpacePoint p = random_point(rng);
        EigenJet j = eval_jet(w, p);
        double lap = p.rho * p.rho * (j.F_rhorho + j.F_etaeta);
        CHECK(std::abs(lap - 0.75 * j.F) <= 1e-10 * std::abs(j.F));
        // f = sqrt(rho) F consistency, and the first-derivative product rule
        CHECK(std::abs(j.f - std::sqrt(p.rho) * j.F) <= 1e-12 * std::abs(j.f));
        double f_rho = 0.5 / std::sqrt(p.rho) * j.F + std::sqrt(p.rho) * j.F_rho;
        CHECK(std::abs(j.f_rho - f_rho) <= 1e-10 * (1.0 + std::abs(f_rho)));
        CHECK(std::abs(j.f_eta - std::sqrt(p.rho) * j.F_eta) <= 1e-12 * (1.0 + std::abs(j.f_eta)));
    }
}

TEST_CASE("jets match finite differences") {
    std::mt19937_64 rng(409);
    for (int trial = 0; trial < 40; ++trial) {
        MultipoleData w = random_weights(rng, 4);
        HalfSpacePoint p(1.0 + 0.5 * (trial % 5), -1.0 + 0.1 * trial);
        EigenJet j = eval_jet(w, p);
        auto field = [&](double rho, double eta) { return eval_jet(w, {rho, eta}).F; };
        double lap_fd = fd_laplacian(field, p, 1e-2 * p.rho);
        CHECK(std::abs(lap_fd - p.rho * p.rho * (j.F_rhorho + j.F_etaeta)) < 1e-6);
        const double h = 1e-5;
        double fr = (field(p.rho + h, p.eta) - field(p.rho - h, p.eta)) / (2 * h);
        double fe = (field(p.rho, p.eta + h) - field(p.rho, p.eta - h)) / (2 * h);
        CHECK(fr == doctest::Approx(j.F_rho).epsilon(1e-6));
        CHECK(fe == doctest::Approx(j.F_eta).epsilon(1e-6));
        double fre = (field(p.rho + h, p.eta + h) - field(p.rho + h, p.eta - h) -
                      field(p.rho - h, p.eta + h) + field(p.rho - h, p.eta - h)) /
                     (4 * h * h);
        CHECK(std::abs(fre - j.F_rhoeta) < 1e-5 * (1.0 + std::abs(j.F_rhoeta)));
    }
}

TEST_CASE("invariant evaluation matches the chart formula and is equivariant") {
    // F(A) = sum sqrt(w_i^T A w_i) with w_i = (-b_i, a_i)
    std::mt19937_64 rng(419);
    std::uniform_real_distribution<double> sd(-1.5, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        MultipoleData w = random_weights(rng, 4);
        HalfSpacePoint p = random_point(rng);
        SpdPoint A = chart(p);
        auto invariant_eval = [&](const SpdPoint& a) {
            double total = 0.0;
            for (const auto& [ai, bi] : w.weights()) {
                double wx = -bi.to_double(), wy = ai.to_double();
                total += std::sqrt(wx * (a.a11() * wx + a.a12() * wy) +
                                   wy * (a.a12() * wx + a.a22() * wy));
            }
            return total;
        };
        EigenJet j = eval_jet(w, p);
        CHECK(invariant_eval(A) == doctest::Approx(j.F).epsilon(1e-12));
    }
}

TEST_CASE("boundary value on worked examples") {
    BoundaryValue s4 = boundary_value(s4w());
    CHECK(s4.eval(0.0) == doctest::Approx(1.0));
    CHECK(s4.eval(3.0) == doctest::Approx(3.0));
    CHECK(s4.piece(0).first == Rational(-1));
    CHECK(s4.piece(1).first == Rational(0));
    CHECK(s4.piece(2).first == Rational(1));

    BoundaryValue cp2 = boundary_value(cp2w());
    CHECK(cp2.eval(0.0) == doctest::Approx(1.0));  // |0| + |-1/2| + |-1/2|
    CHECK(cp2.kinks() == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)});
}

TEST_CASE("boundary pieces equal the isotropy labels exactly") {
    std::mt19937_64 rng(421);
    for (int trial = 0; trial < 100; ++trial) {
        MultipoleData w = random_weights(rng);
        BoundaryValue b = boundary_value(w);
        bool doubled = false;
        IsotropyData d = from_multipole(w, &doubled);
        for (std::size_t j = 1; j <= d.k(); ++j) {
            Rational scale = doubled ? Rational(1, 2) : Rational(1);
            CHECK(b.piece(j).first == Rational(d.at(j).m) * scale);
            CHECK(b.piece(j).second == Rational(d.at(j).n) * scale);
        }
        // v_0 = -v_k gives the leftmost piece
        CHECK(b.piece(0).first == -b.piece(d.k()).first);
    }
}

TEST_CASE("sqrt(rho) F converges to f0 at second order in rho") {
    MultipoleData w = cp2w();
    BoundaryValue b = boundary_value(w);
    for (double eta : {-1.3, 0.25, 0.75, 2.2}) {  // away from the kinks 0, 1/2, 1
        double e2 = std::abs(std::sqrt(1e-2) * eval_jet(w, {1e-2, eta}).F - b.eval(eta));
        double e3 = std::abs(std::sqrt(1e-3) * eval_jet(w, {1e-3, eta}).F - b.eval(eta));
        double order = std::log10(e2 / e3);
        CHECK(order > 1.9);
    }
}

TEST_CASE("det phi: f-form identity and worked values") {
    CHECK(det_phi_closed(s4w(), {1.0, 0.0}) == doctest::Approx(0.5));
    std::mt19937_64 rng(431);
    for (int trial = 0; trial < 300; ++trial) {
        MultipoleData w = random_weights(rng);
        det_phi_closed(w, random_point(rng));  // asserts the identity internally
    }
    // single pole: identically zero
    for (int trial = 0; trial < 50; ++trial) {
        HalfSpacePoint p = random_point(rng);
        CHECK(std::abs(det_phi_closed(single_pole(), p)) < 1e-12);
    }
}

TEST_CASE("det phi is positive throughout the half-space for multipole data") {
    std::mt19937_64 rng(433);
    for (int trial = 0; trial < 60; ++trial) {
        MultipoleData w = random_weights(rng);
        if (w.k() < 2) continue;
        for (int i = 0; i < 30; ++i) CHECK(det_phi_closed(w, random_point(rng)) > 0.0);
    }
}

TEST_CASE("det phi quadrature agrees with the closed form") {
    std::mt19937_64 rng(439);
    for (const auto& w : {s4w(), cp2w(), rat_weights({{1, -1}, {1, 0}, {1, 1}, {1, 2}})}) {
        BoundaryValue b = boundary_value(w);
        for (int i = 0; i < 25; ++i) {
            HalfSpacePoint p = random_point(rng);
            double closed = det_phi_closed(w, p);
            double quad = det_phi_quadrature(b, p);
            CHECK(std::abs(quad - closed) <= 1e-6 * std::max(std::abs(closed), 1e-8));
        }
    }
    // single pole on a grid: matches zero
    BoundaryValue pole = boundary_value(single_pole());
    for (double rho : {0.3, 0.8, 1.5})
        for (double eta : {-1.0, 0.0, 2.0})
            CHECK(std::abs(det_phi_quadrature(pole, {rho, eta})) < 1e-8);
}

TEST_CASE("det phi quadrature scales quadratically in the boundary value") {
    MultipoleData w = s4w();
    HalfSpacePoint p(0.9, 0.4);
    double base = det_phi_quadrature(boundary_value(w), p);
    double scaled = det_phi_quadrature(boundary_value(w.scaled(Rational(3))), p);
    CHECK(scaled == doctest::Approx(9.0 * base).epsilon(1e-9));
}

TEST_CASE("poisson transform reconstructs the closed form") {
    std::mt19937_64 rng(443);
    // single pole at the reference point
    CHECK(poisson_transform(boundary_value(single_pole()), {1.0, 0.0}) == doctest::Approx(1.0));
    for (const auto& w : {s4w(), cp2w()}) {
        BoundaryValue b = boundary_value(w);
        for (int i = 0; i < 40; ++i) {
            HalfSpacePoint p = random_point(rng);
            double F = eval_jet(w, p).F;
            CHECK(std::abs(poisson_transform(b, p) - F) <= 1e-9 * F);
        }
    }
}

TEST_CASE("poisson transform of constants and zero") {
    // f0 = c: the kernel integrates to 2/sqrt(rho), so F = c/sqrt(rho)
    BoundaryValue c = BoundaryValue::constant(Rational(5, 2));
    CHECK(poisson_transform(c, {1.0, 0.7}) == doctest::Approx(2.5));
    CHECK(poisson_transform(c, {4.0, -1.0}) == doctest::Approx(1.25));
    BoundaryValue z = BoundaryValue::zero();
    for (double rho : {0.2, 1.0, 3.0})
        for (double eta : {-2.0, 0.0, 1.0})
            CHECK(poisson_transform(z, {rho, eta}) == doctest::Approx(0.0));
}

TEST_CASE("homogeneous extension") {
    BoundaryValue s4 = boundary_value(s4w());
    std::mt19937_64 rng(449);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        double lam = d(rng), eta = d(rng);
        if (std::abs(lam) < 1e-3) continue;
        CHECK(homogeneous_extension(s4, lam, lam * eta) ==
              doctest::Approx(std::abs(lam) * s4.eval(eta)).epsilon(1e-12));
    }
    CHECK(homogeneous_extension(s4, 0.0, 1.0) == doctest::Approx(1.0));  // value at infinity
    CHECK_THROWS_AS(homogeneous_extension(s4, 0.0, 0.0), std::domain_error);
    // on the direction (1, eta) inside an edge, the value is |m_j eta - n_j|
    BoundaryValue cp2 = boundary_value(cp2w());
    CHECK(homogeneous_extension(cp2, 1.0, 0.25) ==
          doctest::Approx(std::abs(-1.0 * 0.25 - (-1.0))));  // piece (m,n) = (-1,-1)
}

TEST_CASE("edge constancy under the adapted basis") {
    IsotropyData s4d({{0, -1}, {1, 0}});
    CHECK(edge_constancy_check(s4d, 1) < 1e-10);
    CHECK(edge_constancy_check(s4d, 2) < 1e-10);
    IsotropyData cp2d({{-1, -1}, {1, 0}, {2, 1}});
    for (std::size_t j = 1; j <= 3; ++j) CHECK(edge_constancy_check(cp2d, j) < 1e-10);
    // scaled data: constants are the structure group orders
    IsotropyData quot({{0, -2}, {2, 0}});
    for (std::size_t j = 1; j <= 2; ++j) CHECK(edge_constancy_check(quot, j) < 1e-10);
    IsotropyData k4({{-1, -2}, {0, -2}, {1, -1}, {2, 1}});
    for (std::size_t j = 1; j <= 4; ++j) CHECK(edge_constancy_check(k4, j) < 1e-10);
}

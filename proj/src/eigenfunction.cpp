#include "toricsde/eigenfunction.hpp"

#include "toricsde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsde {

namespace {

// Sign relating the integral route to F^2/4 - |dF|^2, calibrated once against
// the round-sphere oracle (both routes positive there) and frozen.
constexpr double kDetPhiQuadratureSign = 1.0;

struct TermJet {
    double r, r_rho, r_eta, r_rhorho, r_etaeta, r_rhoeta;
};

TermJet term_jet(double a, double b, double rho, double eta) {
    const double u = a * eta - b;
    const double r = std::sqrt(a * a * rho * rho + u * u);
    const double r3 = r * r * r;
    TermJet t;
    t.r = r;
    t.r_rho = a * a * rho / r;
    t.r_eta = a * u / r;
    t.r_rhorho = a * a * u * u / r3;
    t.r_etaeta = a * a * a * a * rho * rho / r3;
    t.r_rhoeta = -a * a * a * rho * u / r3;
    return t;
}

} // namespace

namespace {

void accumulate_term(EigenJet& j, double coeff, const TermJet& t, double rho) {
    const double is = 1.0 / std::sqrt(rho);  // rho^{-1/2}
    const double is3 = is / rho;             // rho^{-3/2}
    const double is5 = is3 / rho;            // rho^{-5/2}
    j.f += coeff * t.r;
    j.f_rho += coeff * t.r_rho;
    j.f_eta += coeff * t.r_eta;
    j.F += coeff * t.r * is;
    j.F_rho += coeff * (t.r_rho * is - 0.5 * t.r * is3);
    j.F_eta += coeff * t.r_eta * is;
    j.F_rhorho += coeff * (t.r_rhorho * is - t.r_rho * is3 + 0.75 * t.r * is5);
    j.F_etaeta += coeff * t.r_etaeta * is;
    j.F_rhoeta += coeff * (t.r_rhoeta * is - 0.5 * t.r_eta * is3);
}

} // namespace

EigenJet eval_jet(const MultipoleData& w, const HalfSpacePoint& p) {
    EigenJet j{};
    for (const auto& [a, b] : w.weights())
        accumulate_term(j, 1.0, term_jet(a.to_double(), b.to_double(), p.rho, p.eta), p.rho);
    return j;
}

EigenJet eval_jet_raw(const std::vector<std::pair<double, double>>& ab,
                      const HalfSpacePoint& p) {
    EigenJet j{};
    for (const auto& [a, b] : ab)
        accumulate_term(j, a < 0 ? -1.0 : 1.0, term_jet(a, b, p.rho, p.eta), p.rho);
    return j;
}

void BoundaryValue::cache_doubles() {
    kinks_d_.clear();
    half_masses_d_.clear();
    for (const auto& y : kinks_) kinks_d_.push_back(y.to_double());
    for (const auto& m : masses_) half_masses_d_.push_back(0.5 * m.to_double());
    offset_d_ = offset_.to_double();
}

BoundaryValue BoundaryValue::from_weights(const MultipoleData& w) {
    BoundaryValue b;
    Rational tm(0), tn(0);
    for (const auto& [a, bb] : w.weights()) { tm += a; tn += bb; }
    Rational sm(0), sn(0);
    b.pieces_.emplace_back(-tm, -tn);  // leftmost piece (m_0, n_0)
    for (std::size_t i = 0; i < w.k(); ++i) {
        const auto& [a, bb] = w.weights()[i];
        b.kinks_.push_back(bb / a);
        b.masses_.push_back(a * Rational(2));
        sm += a;
        sn += bb;
        b.pieces_.emplace_back(sm + sm - tm, sn + sn - tn);
    }
    b.cache_doubles();
    return b;
}

BoundaryValue BoundaryValue::constant(const Rational& c) {
    if (c.sign() < 0) throw std::invalid_argument("constant boundary value must be >= 0");
    BoundaryValue b;
    b.offset_ = c;
    b.pieces_.emplace_back(Rational(0), -c);
    b.cache_doubles();
    return b;
}

double BoundaryValue::eval(double eta) const {
    double v = offset_d_;
    for (std::size_t i = 0; i < kinks_d_.size(); ++i)
        v += half_masses_d_[i] * std::abs(eta - kinks_d_[i]);  // a_i |eta - y_i|
    return v;
}

double BoundaryValue::homogeneous(double x, double y) const {
    if (x == 0.0 && y == 0.0)
        throw std::domain_error("homogeneous extension undefined at the origin");
    double v = offset_d_ * std::abs(x);
    for (std::size_t i = 0; i < kinks_d_.size(); ++i)
        v += half_masses_d_[i] * std::abs(y - kinks_d_[i] * x);
    return v;
}

BoundaryValue boundary_value(const MultipoleData& w) { return BoundaryValue::from_weights(w); }

double det_phi_closed(const MultipoleData& w, const HalfSpacePoint& p) {
    EigenJet j = eval_jet(w, p);
    const double rho = p.rho;
    double grad2 = rho * rho * (j.F_rho * j.F_rho + j.F_eta * j.F_eta);
    double d_F = 0.25 * j.F * j.F - grad2;
    double d_f = j.f * j.f_rho - rho * (j.f_rho * j.f_rho + j.f_eta * j.f_eta);
    double scale = 0.25 * j.F * j.F + grad2;
    if (std::abs(d_F - d_f) > 1e-10 * std::max(1.0, scale))
        throw std::logic_error("det_phi_closed: F-form and f-form disagree");
    return d_f;
}

double det_phi_closed_raw(const std::vector<std::pair<double, double>>& ab,
                          const HalfSpacePoint& p) {
    EigenJet j = eval_jet_raw(ab, p);
    return j.f * j.f_rho - p.rho * (j.f_rho * j.f_rho + j.f_eta * j.f_eta);
}

namespace {

// Antiderivatives in u = y - eta for the boundary-kernel integrals:
//   P0' = (rho^2+u^2)^{-3/2},  P1' = u (rho^2+u^2)^{-3/2}
double p0(double u, double rho) { return u / (rho * rho * std::sqrt(rho * rho + u * u)); }
double p1(double u, double rho) { return -1.0 / std::sqrt(rho * rho + u * u); }

} // namespace

double det_phi_quadrature(const BoundaryValue& b, const HalfSpacePoint& p) {
    const double rho = p.rho, eta = p.eta;
    const std::size_t k = b.kink_count();
    // mu = f0' = m_j and nu = y f0' - f0 = n_j are piecewise constant; the
    // double integral separates into
    //   det Phi = 1/4 rho^3 (Amu Bnu - Bmu Anu),
    // with Amu = int mu K, Bmu = int y mu K (same for nu) and
    // K(y) = (rho^2 + (eta-y)^2)^{-3/2}.
    double Amu = 0, Bmu = 0, Anu = 0, Bnu = 0;
    auto K = [&](double y) {
        double d = rho * rho + (eta - y) * (eta - y);
        return 1.0 / (d * std::sqrt(d));
    };
    auto add_closed = [&](double m, double n, double I0, double I1) {
        // I0 = int K, I1 = int u K over the piece
        Amu += m * I0;
        Anu += n * I0;
        Bmu += m * (eta * I0 + I1);
        Bnu += n * (eta * I0 + I1);
    };
    for (std::size_t j = 0; j + 1 < k; ++j) {
        double lo = b.kinks()[j].to_double(), hi = b.kinks()[j + 1].to_double();
        double m = b.piece(j + 1).first.to_double();
        double n = b.piece(j + 1).second.to_double();
        double i0 = integrate(K, lo, hi, 1e-11, 1e-15);
        double i1 = integrate([&](double y) { return y * K(y); }, lo, hi, 1e-11, 1e-15);
        Amu += m * i0;
        Anu += n * i0;
        Bmu += m * i1;
        Bnu += n * i1;
    }
    if (k == 0) {
        add_closed(b.piece(0).first.to_double(), b.piece(0).second.to_double(),
                   2.0 / (rho * rho), 0.0);
    } else {
        double uL = b.kinks().front().to_double() - eta;
        double uR = b.kinks().back().to_double() - eta;
        add_closed(b.piece(0).first.to_double(), b.piece(0).second.to_double(),
                   p0(uL, rho) + 1.0 / (rho * rho), p1(uL, rho));
        add_closed(b.piece(k).first.to_double(), b.piece(k).second.to_double(),
                   1.0 / (rho * rho) - p0(uR, rho), -p1(uR, rho));
    }
    return kDetPhiQuadratureSign * 0.25 * rho * rho * rho * (Amu * Bnu - Bmu * Anu);
}

double poisson_transform(const BoundaryValue& b, const HalfSpacePoint& p) {
    const double rho = p.rho, eta = p.eta;
    const std::size_t k = b.kink_count();
    const double half_pi = std::numbers::pi / 2.0;
    // y = eta + rho tan(theta) turns the kernel integral into
    //   (2 sqrt(rho))^{-1} int_{-pi/2}^{pi/2} f0(eta + rho tan theta) cos theta dtheta.
    // Outer panels are affine in y and integrate in closed form:
    //   int ((m eta - n) cos + m rho sin) dtheta.
    auto outer = [&](double m, double n, double t0, double t1) {
        return (m * eta - n) * (std::sin(t1) - std::sin(t0)) -
               m * rho * (std::cos(t1) - std::cos(t0));
    };
    double total = 0.0;
    if (k == 0) {
        total = outer(b.piece(0).first.to_double(), b.piece(0).second.to_double(),
                      -half_pi, half_pi);
    } else {
        std::vector<double> thetas;
        thetas.reserve(k);
        for (const auto& y : b.kinks())
            thetas.push_back(std::atan((y.to_double() - eta) / rho));
        auto g = [&](double t) { return b.eval(eta + rho * std::tan(t)) * std::cos(t); };
        total += outer(b.piece(0).first.to_double(), b.piece(0).second.to_double(),
                       -half_pi, thetas.front());
        for (std::size_t j = 0; j + 1 < k; ++j)
            total += integrate(g, thetas[j], thetas[j + 1], 1e-12, 1e-15);
        total += outer(b.piece(k).first.to_double(), b.piece(k).second.to_double(),
                       thetas.back(), half_pi);
    }
    return total / (2.0 * std::sqrt(rho));
}

double homogeneous_extension(const BoundaryValue& b, double x, double y) {
    return b.homogeneous(x, y);
}

double edge_constancy_check(const IsotropyData& d, std::size_t j) {
    NormalizedData nd = to_multipole_normalized(d);
    const std::size_t k = nd.data.k();
    if (j < 1 || j > k) throw std::out_of_range("edge_constancy_check index");
    LatticeVector v = nd.data.at(j);
    std::int64_t ell = structure_group_order(v);
    LatticeVector u{v.m / ell, v.n / ell};
    // W u = (0, 1): rows (q, -p) and a Bezout pair for p x + q y = 1
    std::int64_t p = u.m, q = u.n;
    std::int64_t x = 0, y = 0;
    {
        // extended Euclid on (p, q)
        std::int64_t r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            std::int64_t qu = r0 / r1;
            std::int64_t r2 = r0 - qu * r1, s2 = s0 - qu * s1, t2 = t0 - qu * t1;
            r0 = r1; r1 = r2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
        }
        if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
        if (r0 != 1) throw std::logic_error("edge_constancy_check: direction not primitive");
        x = s0; y = t0;
    }
    UnimodularMap W(q, checked_neg(p), x, y);

    // transported weights W (a_i, b_i)
    std::vector<std::pair<double, double>> tw;
    for (const auto& [a, bb] : nd.weights.weights()) {
        double av = a.to_double(), bv = bb.to_double();
        tw.emplace_back(static_cast<double>(W.a[0][0]) * av + static_cast<double>(W.a[0][1]) * bv,
                        static_cast<double>(W.a[1][0]) * av + static_cast<double>(W.a[1][1]) * bv);
    }
    auto transported_f0 = [&](double dir_x, double dir_y) {
        double ux = static_cast<double>(W.a[0][0]) * dir_x + static_cast<double>(W.a[0][1]) * dir_y;
        double uy = static_cast<double>(W.a[1][0]) * dir_x + static_cast<double>(W.a[1][1]) * dir_y;
        if (std::abs(ux) < 1e-14)
            throw std::logic_error("edge_constancy_check: image interval touches infinity");
        double et = uy / ux;
        double val = 0.0;
        for (const auto& [ta, tb] : tw) val += std::abs(ta * et - tb);
        return val;
    };

    std::vector<double> kinks;
    for (const auto& [a, bb] : nd.weights.weights()) kinks.push_back((bb / a).to_double());
    const int samples = 33;
    double worst = 0.0;
    if (j < k) {
        double lo = kinks[j - 1], hi = kinks[j];
        for (int s = 1; s < samples; ++s) {
            double t = lo + (hi - lo) * s / samples;
            worst = std::max(worst, std::abs(transported_f0(1.0, t) - static_cast<double>(ell)));
        }
    } else {
        // outer edge: sweep the boundary arc through infinity by angle
        double phi_k = std::atan2(kinks.back(), 1.0);
        double phi_1 = std::atan2(kinks.front(), 1.0) + std::numbers::pi;
        for (int s = 1; s < samples; ++s) {
            double phi = phi_k + (phi_1 - phi_k) * s / samples;
            worst = std::max(worst, std::abs(transported_f0(std::cos(phi), std::sin(phi)) -
                                             static_cast<double>(ell)));
        }
    }
    return worst;
}

} // namespace tsde

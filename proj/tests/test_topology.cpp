#include "toricsde/topology.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace tsde;

namespace {

IsotropyData cp2() { return IsotropyData({{-1, -1}, {1, 0}, {2, 1}}); }
IsotropyData s4() { return IsotropyData({{0, -1}, {1, 0}}); }

// random valid data, retry until validate passes
IsotropyData random_valid(std::mt19937_64& rng, std::size_t kmin = 2, std::size_t kmax = 5) {
    std::uniform_int_distribution<std::int64_t> d(-4, 4);
    while (true) {
        std::size_t k = kmin + rng() % (kmax - kmin + 1);
        std::vector<LatticeVector> vs;
        for (std::size_t j = 0; j < k; ++j) vs.push_back({d(rng), d(rng)});
        IsotropyData data(vs);
        if (validate(data).valid()) return data;
    }
}

} // namespace

TEST_CASE("worked example: rank-1 gram with exact null relations") {
    IntersectionForm f = intersection_matrix(cp2());
    QMatrix expect = {{Rational(1), Rational(-1), Rational(1)},
                      {Rational(-1), Rational(1), Rational(-1)},
                      {Rational(1), Rational(-1), Rational(1)}};
    CHECK(f.gram == expect);
    CHECK(f.rank == 1);
    CHECK(f.signature == 1);
}

TEST_CASE("two-edge data: rank-0 gram") {
    IntersectionForm f = intersection_matrix(s4());
    for (const auto& row : f.gram)
        for (const auto& x : row) CHECK(x.is_zero());
    CHECK(f.rank == 0);
    CHECK(signature_oracle(f) == 0);
}

TEST_CASE("gram annihilates the label rows exactly, on random valid data") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        IsotropyData d = random_valid(rng);
        IntersectionForm f = intersection_matrix(d);  // throws if relations fail
        const std::size_t k = d.k();
        for (std::size_t i = 0; i < k; ++i) {
            Rational rm(0), rn(0);
            for (std::size_t j = 0; j < k; ++j) {
                rm += f.gram[i][j] * Rational(d.at(j + 1).m);
                rn += f.gram[i][j] * Rational(d.at(j + 1).n);
            }
            CHECK(rm.is_zero());
            CHECK(rn.is_zero());
        }
    }
}

TEST_CASE("gram is invariant under unimodular maps") {
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<std::int64_t> t(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        IsotropyData d = random_valid(rng);
        UnimodularMap b = UnimodularMap::shear_upper(t(rng)) * UnimodularMap::shear_lower(t(rng));
        CHECK(intersection_matrix(d).gram == intersection_matrix(apply_unimodular(b, d)).gram);
    }
}

TEST_CASE("euler characteristic of the orbifold spheres") {
    for (std::size_t j = 1; j <= 3; ++j) CHECK(euler_char_orb(cp2(), j) == Rational(2));
    // consecutive deltas 1 and 2 give 3/2
    IsotropyData d({{1, 0}, {1, 1}, {1, 3}});
    REQUIRE(orient_cyclic(d).has_value());
    CHECK(delta(d.at(1), d.at(2)) == 1);
    CHECK(delta(d.at(2), d.at(3)) == 2);
    CHECK(euler_char_orb(d, 2) == Rational(3, 2));
    // unoriented data is a precondition error
    IsotropyData rev({{2, 1}, {1, 0}, {-1, -1}});
    CHECK_THROWS_AS(euler_char_orb(rev, 1), std::invalid_argument);
}

TEST_CASE("signature formula on worked examples") {
    CHECK(signature_formula(cp2(), {1, 2}) == 1);
    CHECK(signature_formula(s4(), default_probe(s4())) == 0);
    // degenerate probe: (1,1) is parallel to the first label
    CHECK_THROWS_AS(signature_formula(cp2(), {1, 1}), std::invalid_argument);
}

TEST_CASE("signature formula: probe and sign independence") {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<std::int64_t> pd(-7, 7);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        IsotropyData d = random_valid(rng);
        int base = signature_formula(d, default_probe(d));
        for (int probe_trial = 0; probe_trial < 8; ++probe_trial) {
            LatticeVector p{pd(rng), pd(rng)};
            if (p.is_zero()) continue;
            bool parallel = false;
            for (const auto& v : d.vectors())
                if (delta(p, v) == 0) parallel = true;
            if (parallel) continue;
            CHECK(signature_formula(d, p) == base);
        }
        std::vector<int> signs;
        for (std::size_t j = 0; j < d.k(); ++j) signs.push_back(coin(rng) ? 1 : -1);
        CHECK(signature_formula(apply_signs(d, signs), default_probe(d)) == base);
    }
}

TEST_CASE("signature formula equals the rational inertia oracle") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 300; ++trial) {
        IsotropyData d = random_valid(rng);
        IntersectionForm f = intersection_matrix(d);
        CHECK(signature_formula(d, default_probe(d)) == signature_oracle(f));
    }
}

TEST_CASE("inertia of a hand-built diagonal form") {
    IntersectionForm f;
    f.gram = {{Rational(1), Rational(0), Rational(0), Rational(0)},
              {Rational(0), Rational(-1), Rational(0), Rational(0)},
              {Rational(0), Rational(0), Rational(0), Rational(0)},
              {Rational(0), Rational(0), Rational(0), Rational(0)}};
    CHECK(signature_oracle(f) == 0);
    // wrong nullity must be rejected
    IntersectionForm bad;
    bad.gram = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    CHECK_THROWS_AS(signature_oracle(bad), std::logic_error);
}

TEST_CASE("positive definiteness criteria agree") {
    CHECK(is_positive_definite(cp2()));
    CHECK(is_positive_definite(s4()));
    // reversed orientation is negative definite
    IsotropyData rev({{2, 1}, {1, 0}, {-1, -1}});
    CHECK_FALSE(is_positive_definite(rev));
    CHECK(signature_formula(rev, default_probe(rev)) == -1);
    // printed five-label example: signature 0, not definite
    IsotropyData k4({{-1, -1}, {0, -1}, {1, 0}, {2, 3}});
    CHECK_FALSE(is_positive_definite(k4));
    CHECK(signature_formula(k4, default_probe(k4)) == 0);
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 200; ++trial) {
        IsotropyData d = random_valid(rng);
        is_positive_definite(d);  // throws if the three criteria ever disagree
    }
}

TEST_CASE("self-intersection bound is the corner inequality, under orientation") {
    std::mt19937_64 rng(127);
    int oriented_seen = 0;
    while (oriented_seen < 100) {
        IsotropyData d0 = random_valid(rng, 3, 5);
        auto signs = orient_cyclic(d0);
        if (!signs) continue;
        ++oriented_seen;
        IsotropyData e = apply_signs(d0, *signs);
        for (std::size_t j = 1; j <= e.k(); ++j) {
            auto pj = static_cast<std::ptrdiff_t>(j);
            bool bound = self_intersection(e, j) < euler_char_orb(e, j);
            std::int64_t lhs = delta(e.cyclic(pj - 1), e.cyclic(pj + 1));
            std::int64_t rhs = delta(e.cyclic(pj - 1), e.cyclic(pj)) +
                               delta(e.cyclic(pj), e.cyclic(pj + 1));
            CHECK(bound == (lhs < rhs));
        }
    }
}

TEST_CASE("topology report for the worked examples") {
    TopologyReport t = topology_report(cp2());
    CHECK(t.b2 == 1);
    CHECK(t.signature == 1);
    CHECK(t.positive_definite);
    for (const auto& e : t.self_intersections) CHECK(e == Rational(1));
    REQUIRE(t.euler_orb.has_value());
    for (const auto& chi : *t.euler_orb) CHECK(chi == Rational(2));

    // two-edge family (-m, 0), (0, -n): b2 = 0, orders (n, m); spanning only
    // for m = n = 1 (the quotients are reported, not rejected)
    for (std::int64_t m = 1; m <= 3; ++m)
        for (std::int64_t n = 1; n <= 3; ++n) {
            IsotropyData d({{0, -n}, {m, 0}});
            TopologyReport r = topology_report(d);
            CHECK(r.b2 == 0);
            CHECK(r.signature == 0);
            CHECK(r.orders == std::vector<std::int64_t>{n, m});
            CHECK(validate(d).spans == (m == 1 && n == 1));
        }
}

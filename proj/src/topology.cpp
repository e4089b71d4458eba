#include "toricsde/topology.hpp"

#include <stdexcept>

namespace tsde {

namespace {

// Deltas with plain cyclic indexing on the stored labels (period k, no sign
// flip). The corner formulas are insensitive to the anti-periodic convention
// because the wrap signs cancel in every ratio they enter.
std::int64_t cyc_delta(const IsotropyData& d, std::size_t i, std::size_t j) {
    const std::size_t k = d.k();
    auto idx = [k](std::size_t x) { return ((x - 1) % k) + 1; };
    return delta(d.at(idx(i)), d.at(idx(j)));
}

} // namespace

Rational self_intersection(const IsotropyData& d, std::size_t j) {
    require_arrangement(d);
    const std::size_t k = d.k();
    if (j < 1 || j > k) throw std::out_of_range("self_intersection index");
    std::int64_t num = delta(d.cyclic(static_cast<std::ptrdiff_t>(j) - 1),
                             d.cyclic(static_cast<std::ptrdiff_t>(j) + 1));
    std::int64_t d1 = delta(d.cyclic(static_cast<std::ptrdiff_t>(j) - 1), d.at(j));
    std::int64_t d2 = delta(d.at(j), d.cyclic(static_cast<std::ptrdiff_t>(j) + 1));
    return Rational(num) / (Rational(d1) * Rational(d2));
}

Rational euler_char_orb(const IsotropyData& d, std::size_t j) {
    require_arrangement(d);
    const std::size_t k = d.k();
    if (j < 1 || j > k) throw std::out_of_range("euler_char_orb index");
    std::int64_t d1 = delta(d.cyclic(static_cast<std::ptrdiff_t>(j) - 1), d.at(j));
    std::int64_t d2 = delta(d.at(j), d.cyclic(static_cast<std::ptrdiff_t>(j) + 1));
    if (d1 <= 0 || d2 <= 0)
        throw std::invalid_argument("euler_char_orb: data is not cyclically oriented");
    return Rational(checked_add(d1, d2)) / Rational(checked_mul(d1, d2));
}

IntersectionForm intersection_matrix(const IsotropyData& d) {
    require_arrangement(d);
    const std::size_t k = d.k();
    IntersectionForm f;
    f.gram.assign(k, std::vector<Rational>(k, Rational(0)));
    for (std::size_t j = 1; j <= k; ++j)
        f.gram[j - 1][j - 1] = self_intersection(d, j);
    // one corner between edges j and j+1 for each j; for k = 2 the two corner
    // contributions to the same entry cancel, giving the rank-0 form
    for (std::size_t j = 1; j <= k; ++j) {
        std::size_t jn = j % k + 1;
        Rational c = Rational(-1) / Rational(cyc_delta(d, j, j + 1));
        f.gram[j - 1][jn - 1] += c;
        f.gram[jn - 1][j - 1] += c;
    }
    f.rank = k - 2;
    for (std::size_t j = 1; j <= k; ++j) {
        f.null_m.emplace_back(d.at(j).m);
        f.null_n.emplace_back(d.at(j).n);
    }
    for (std::size_t i = 0; i < k; ++i) {
        Rational rm(0), rn(0);
        for (std::size_t j = 0; j < k; ++j) {
            rm += f.gram[i][j] * f.null_m[j];
            rn += f.gram[i][j] * f.null_n[j];
        }
        if (!rm.is_zero() || !rn.is_zero())
            throw std::logic_error("intersection_matrix: null relations violated");
    }
    f.signature = signature_oracle(f);
    return f;
}

int signature_formula(const IsotropyData& d, const LatticeVector& probe) {
    require_arrangement(d);
    const std::size_t k = d.k();
    std::vector<std::int64_t> dp(k + 1);  // dp[j] = det(probe, v_j), dp[0] = -dp[k]
    for (std::size_t j = 1; j <= k; ++j) {
        dp[j] = delta(probe, d.at(j));
        if (dp[j] == 0)
            throw std::invalid_argument("signature_formula: probe parallel to an edge label");
    }
    dp[0] = checked_neg(dp[k]);
    int sigma = 0;
    for (std::size_t j = 1; j <= k; ++j) {
        std::int64_t dd = delta(d.cyclic(static_cast<std::ptrdiff_t>(j) - 1), d.at(j));
        sigma += sign_of(dp[j - 1]) * sign_of(dd) * sign_of(dp[j]);
    }
    return sigma;
}

LatticeVector default_probe(const IsotropyData& d) {
    for (std::int64_t t = 0; t <= static_cast<std::int64_t>(d.k()); ++t) {
        LatticeVector p{1, t};
        bool ok = true;
        for (const auto& v : d.vectors())
            if (delta(p, v) == 0) { ok = false; break; }
        if (ok) return p;
    }
    throw std::logic_error("default_probe: exhausted candidates");  // k+1 probes, <= k parallel
}

int signature_oracle(const IntersectionForm& f) {
    QMatrix a = f.gram;
    const std::size_t k = a.size();
    std::size_t pos = 0, neg = 0, zero = 0;
    std::size_t t = 0;
    while (t < k) {
        // prefer a nonzero diagonal pivot
        std::size_t piv = k;
        for (std::size_t i = t; i < k; ++i)
            if (!a[i][i].is_zero()) { piv = i; break; }
        if (piv == k) {
            // all-zero diagonal: congruence x_i -> x_i + x_j turns a nonzero
            // off-diagonal pair into a usable pivot
            std::size_t oi = k, oj = k;
            for (std::size_t i = t; i < k && oi == k; ++i)
                for (std::size_t j = i + 1; j < k; ++j)
                    if (!a[i][j].is_zero()) { oi = i; oj = j; break; }
            if (oi == k) { zero += k - t; break; }
            for (std::size_t c = t; c < k; ++c) a[oi][c] += a[oj][c];
            for (std::size_t r = t; r < k; ++r) a[r][oi] += a[r][oj];
            piv = oi;
        }
        if (piv != t) {
            std::swap(a[piv], a[t]);
            for (std::size_t r = t; r < k; ++r) std::swap(a[r][piv], a[r][t]);
        }
        Rational p = a[t][t];
        (p.sign() > 0 ? pos : neg) += 1;
        for (std::size_t i = t + 1; i < k; ++i) {
            if (a[i][t].is_zero()) continue;
            Rational factor = a[i][t] / p;
            for (std::size_t j = t; j < k; ++j) a[i][j] -= factor * a[t][j];
        }
        for (std::size_t j = t + 1; j < k; ++j) a[t][j] = Rational(0);
        for (std::size_t i = t + 1; i < k; ++i) a[i][t] = Rational(0);
        ++t;
    }
    if (zero != 2)
        throw std::logic_error("signature_oracle: expected exactly two zero pivots, got " +
                               std::to_string(zero));
    return static_cast<int>(pos) - static_cast<int>(neg);
}

bool is_positive_definite(const IsotropyData& d) {
    require_arrangement(d);
    const int want = static_cast<int>(d.k()) - 2;
    int sf = signature_formula(d, default_probe(d));
    int so = signature_oracle(intersection_matrix(d));
    auto signs = orient_cyclic(d);
    // cyclic order in the classification sense: consecutive positivity plus
    // the half-plane normalization that fixes the winding to one
    bool cyc = signs && base_halfplane(apply_signs(d, *signs));
    if (sf != so || ((sf == want) != cyc))
        throw std::logic_error("is_positive_definite: criteria disagree");
    return sf == want;
}

TopologyReport topology_report(const IsotropyData& d) {
    require_arrangement(d);
    TopologyReport r;
    const std::size_t k = d.k();
    r.b2 = k - 2;
    r.signature = signature_formula(d, default_probe(d));
    r.positive_definite = is_positive_definite(d);
    for (std::size_t j = 1; j <= k; ++j) {
        r.self_intersections.push_back(self_intersection(d, j));
        r.orders.push_back(structure_group_order(d.at(j)));
    }
    if (auto signs = orient_cyclic(d)) {
        IsotropyData od = apply_signs(d, *signs);
        std::vector<Rational> chi;
        for (std::size_t j = 1; j <= k; ++j) chi.push_back(euler_char_orb(od, j));
        r.euler_orb = std::move(chi);
        r.orientation_signs = *signs;
    }
    return r;
}

} // namespace tsde

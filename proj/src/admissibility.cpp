#include "toricsde/admissibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsde {

MultipoleData::MultipoleData(std::vector<std::pair<Rational, Rational>> weights)
    : w_(std::move(weights)) {
    if (w_.empty()) throw std::invalid_argument("multipole data: no weights");
    for (const auto& [a, b] : w_) {
        if (a.sign() <= 0) throw std::invalid_argument("multipole data: a_i must be positive");
        if (a.den() > 2 || b.den() > 2)
            throw std::invalid_argument("multipole data: denominators restricted to {1,2}");
    }
    for (std::size_t i = 1; i < w_.size(); ++i) {
        if (!(slope(i - 1) < slope(i)))
            throw std::invalid_argument("multipole data: slopes b_i/a_i must strictly increase");
    }
}

MultipoleData MultipoleData::scaled(const Rational& c) const {
    if (c.sign() <= 0) throw std::invalid_argument("scale must be positive");
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve(w_.size());
    for (const auto& [a, b] : w_) out.emplace_back(a * c, b * c);
    return MultipoleData(std::move(out));
}

std::string AdmissibilityFailure::describe() const {
    switch (kind) {
        case Kind::cyclic_order: return "labels cannot be cyclically ordered";
        case Kind::isn_formula:
            return "corner inequality fails at position " + std::to_string(index);
        case Kind::definiteness: return "intersection form is not positive definite";
    }
    return "";
}

IsotropyData frame(const IsotropyData& d, std::size_t rotation, bool reflected) {
    const std::size_t k = d.k();
    std::vector<LatticeVector> base;
    base.reserve(k);
    if (!reflected) {
        base = d.vectors();
    } else {
        for (std::size_t j = k; j >= 1; --j) base.push_back(d.at(j));
    }
    IsotropyData b(std::move(base));
    std::vector<LatticeVector> out;
    out.reserve(k);
    for (std::size_t j = 1; j <= k; ++j)
        out.push_back(b.cyclic(static_cast<std::ptrdiff_t>(j + rotation)));
    return IsotropyData(std::move(out));
}

namespace {

// Strict corner inequality at cyclic position j (1-based), anti-periodic wrap.
bool isn_at(const IsotropyData& e, std::size_t j) {
    auto p = static_cast<std::ptrdiff_t>(j);
    std::int64_t lhs = delta(e.cyclic(p - 1), e.cyclic(p + 1));
    std::int64_t rhs = checked_add(delta(e.cyclic(p - 1), e.cyclic(p)),
                                   delta(e.cyclic(p), e.cyclic(p + 1)));
    return lhs < rhs;
}

bool all_base_halfplane(const IsotropyData& e) {
    for (std::size_t j = 1; j <= e.k(); ++j)
        if (delta(e.v0(), e.at(j)) < 0) return false;
    return true;
}

} // namespace

AdmissibilityVerdict decide_admissible(const IsotropyData& d) {
    require_arrangement(d);
    const std::size_t k = d.k();
    AdmissibilityVerdict verdict;
    bool any_oriented = false;
    bool recorded_isn = false;
    for (int refl = 0; refl < 2; ++refl) {
        for (std::size_t r = 0; r < k; ++r) {
            IsotropyData cand = frame(d, r, refl == 1);
            auto signs = orient_cyclic(cand);
            if (!signs) continue;
            any_oriented = true;
            IsotropyData e = apply_signs(cand, *signs);
            if (!all_base_halfplane(e)) continue;
            std::vector<std::size_t> bad;
            for (std::size_t j = 1; j <= k; ++j)
                if (!isn_at(e, j)) bad.push_back(j);
            if (bad.empty()) {
                verdict.admissible = true;
                verdict.framing = Framing{r, refl == 1, *signs, std::nullopt};
                verdict.failures.clear();
                verdict.weights = to_multipole(d);
                return verdict;
            }
            if (!recorded_isn) {
                for (std::size_t j : bad)
                    verdict.failures.push_back(
                        {AdmissibilityFailure::Kind::isn_formula, j});
                recorded_isn = true;
            }
        }
    }
    if (!any_oriented) {
        verdict.failures.push_back({AdmissibilityFailure::Kind::cyclic_order, 0});
        verdict.failures.push_back({AdmissibilityFailure::Kind::definiteness, 0});
    }
    return verdict;
}

namespace {

// Weight extraction from a framing whose m-sequence already works:
// -m_k < m_1 < ... < m_k strictly. Returns weights in framing order.
std::optional<std::vector<std::pair<Rational, Rational>>>
extract_weights(const IsotropyData& e) {
    const std::size_t k = e.k();
    std::int64_t prev = checked_neg(e.at(k).m);  // m_0
    for (std::size_t j = 1; j <= k; ++j) {
        if (!(prev < e.at(j).m)) return std::nullopt;
        prev = e.at(j).m;
    }
    std::vector<std::pair<Rational, Rational>> w;
    w.reserve(k);
    for (std::size_t j = 1; j <= k; ++j) {
        LatticeVector diff = e.at(j) - e.cyclic(static_cast<std::ptrdiff_t>(j) - 1);
        w.emplace_back(Rational(diff.m, 2), Rational(diff.n, 2));
    }
    // condition (b): slopes strictly increasing in the same framing
    for (std::size_t i = 1; i < k; ++i)
        if (!(w[i - 1].second / w[i - 1].first < w[i].second / w[i].first)) return std::nullopt;
    return w;
}

std::optional<NormalizedData> try_normalize(const IsotropyData& d, const Framing& partial) {
    const std::size_t k = d.k();
    for (int refl = 0; refl < 2; ++refl) {
        for (std::size_t r = 0; r < k; ++r) {
            IsotropyData cand = frame(d, r, refl == 1);
            auto signs = orient_cyclic(cand);
            if (!signs) continue;
            for (int global : {1, -1}) {
                std::vector<int> s = *signs;
                if (global < 0) for (int& x : s) x = -x;
                IsotropyData e = apply_signs(cand, s);
                auto w = extract_weights(e);
                if (!w) continue;
                MultipoleData weights(std::move(*w));
                Framing fr = partial;
                fr.rotation = r;
                fr.reflected = refl == 1;
                fr.signs = std::move(s);
                return NormalizedData{std::move(e), std::move(weights), std::move(fr)};
            }
        }
    }
    return std::nullopt;
}

} // namespace

NormalizedData to_multipole_normalized(const IsotropyData& d) {
    require_arrangement(d);
    if (auto n = try_normalize(d, Framing{})) return std::move(*n);
    // Tied m-coordinates: look for a shear separating them. Bound per the
    // pigeonhole on slopes of label differences.
    std::int64_t maxabs = 1;
    for (const auto& v : d.vectors())
        maxabs = std::max({maxabs, v.m < 0 ? -v.m : v.m, v.n < 0 ? -v.n : v.n});
    const std::int64_t bound = checked_mul(static_cast<std::int64_t>(d.k()), maxabs);
    for (std::int64_t t = 1; t <= bound; ++t) {
        for (std::int64_t s : {t, -t}) {
            for (auto shear : {UnimodularMap::shear_upper(s), UnimodularMap::shear_lower(s)}) {
                Framing partial;
                partial.shear = shear;
                if (auto n = try_normalize(apply_unimodular(shear, d), partial))
                    return std::move(*n);
            }
        }
    }
    throw std::runtime_error("to_multipole: no framing with strictly increasing m found");
}

MultipoleData to_multipole(const IsotropyData& d) {
    return to_multipole_normalized(d).weights;
}

IsotropyData from_multipole(const MultipoleData& w, bool* doubled) {
    const std::size_t k = w.k();
    auto build = [&](const MultipoleData& mw) -> std::optional<IsotropyData> {
        Rational tm(0), tn(0);
        for (const auto& [a, b] : mw.weights()) { tm += a; tn += b; }
        std::vector<LatticeVector> v;
        Rational sm(0), sn(0);
        for (std::size_t j = 0; j < k; ++j) {
            sm += mw.weights()[j].first;
            sn += mw.weights()[j].second;
            Rational m = sm + sm - tm, n = sn + sn - tn;
            if (!m.is_integer() || !n.is_integer()) return std::nullopt;
            v.push_back({m.num(), n.num()});
        }
        return IsotropyData(std::move(v));
    };
    if (auto d = build(w)) {
        if (doubled) *doubled = false;
        return std::move(*d);
    }
    if (auto d = build(w.scaled(Rational(2)))) {
        if (doubled) *doubled = true;
        return std::move(*d);
    }
    throw std::invalid_argument("from_multipole: weights not integral even after doubling");
}

KernelLattice subtorus_kernel(const MultipoleData& w) {
    const std::size_t k = w.k();
    if (k < 2) throw std::invalid_argument("subtorus_kernel: need k >= 2");
    ZMatrix rows(2, std::vector<std::int64_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
        Rational a2 = w.weights()[i].first * Rational(2);
        Rational b2 = w.weights()[i].second * Rational(2);
        rows[0][i] = a2.num();  // integral: denominators are in {1,2}
        rows[1][i] = b2.num();
    }
    KernelLattice kl{integer_kernel(rows)};
    if (kl.basis.size() != k - 2)
        throw std::logic_error("subtorus_kernel: kernel rank is not k-2");
    for (const auto& row : kl.basis) {
        std::int64_t sa = 0, sb = 0;
        for (std::size_t i = 0; i < k; ++i) {
            sa = checked_add(sa, checked_mul(rows[0][i], row[i]));
            sb = checked_add(sb, checked_mul(rows[1][i], row[i]));
        }
        if (sa != 0 || sb != 0) throw std::logic_error("subtorus_kernel: basis row not in kernel");
    }
    if (k > 2) {
        auto divs = elementary_divisors(kl.basis);
        for (auto dv : divs)
            if (dv != 1) throw std::logic_error("subtorus_kernel: kernel basis not saturated");
    }
    return kl;
}

bool admissible_by_weights(const IsotropyData& d) {
    try {
        NormalizedData n = to_multipole_normalized(d);
        return from_multipole(n.weights) == n.data;  // closure of the construction
    } catch (const std::runtime_error&) {
        return false;
    }
}

bool admissible_by_intersection_form(const IsotropyData& d) {
    const std::size_t k = d.k();
    // definiteness up to the orientation of the input list
    IsotropyData oriented = d;
    if (!is_positive_definite(d)) {
        IsotropyData refl = frame(d, 0, true);
        if (!is_positive_definite(refl)) return false;
        oriented = refl;
    }
    IsotropyData e = apply_signs(oriented, *orient_cyclic(oriented));
    for (std::size_t j = 1; j <= k; ++j)
        if (!(self_intersection(e, j) < euler_char_orb(e, j))) return false;
    return true;
}

bool admissible_by_corner_inequalities(const IsotropyData& d) {
    return decide_admissible(d).admissible;
}

} // namespace tsde

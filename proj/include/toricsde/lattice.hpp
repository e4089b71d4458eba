#pragma once

#include "toricsde/ints.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace tsde {

/// One edge label v_j = (m_j, n_j) of the orbit polygon, defined up to sign.
struct LatticeVector {
    std::int64_t m = 0;
    std::int64_t n = 0;

    bool is_zero() const { return m == 0 && n == 0; }
    LatticeVector operator-() const { return {checked_neg(m), checked_neg(n)}; }
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        return {checked_add(a.m, b.m), checked_add(a.n, b.n)};
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
        return {checked_sub(a.m, b.m), checked_sub(a.n, b.n)};
    }
};

/// Delta(v, w) = m_v n_w - m_w n_v, the basic unimodular invariant.
inline std::int64_t delta(const LatticeVector& v, const LatticeVector& w) {
    return checked_sub(checked_mul(v.m, w.n), checked_mul(w.m, v.n));
}

/// Order of the cyclic orbifold structure group along the edge labelled v.
std::int64_t structure_group_order(const LatticeVector& v);

/// 2x2 integer matrix with determinant +1.
struct UnimodularMap {
    std::array<std::array<std::int64_t, 2>, 2> a{{{1, 0}, {0, 1}}};

    UnimodularMap() = default;
    UnimodularMap(std::int64_t a11, std::int64_t a12, std::int64_t a21, std::int64_t a22);

    std::int64_t det() const;
    LatticeVector apply(const LatticeVector& v) const {
        return {checked_add(checked_mul(a[0][0], v.m), checked_mul(a[0][1], v.n)),
                checked_add(checked_mul(a[1][0], v.m), checked_mul(a[1][1], v.n))};
    }
    friend UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y);
    static UnimodularMap shear_upper(std::int64_t t) { return UnimodularMap(1, t, 0, 1); }
    static UnimodularMap shear_lower(std::int64_t t) { return UnimodularMap(1, 0, t, 1); }
};

struct ValidityReport {
    std::size_t k = 0;
    bool k_ok = false;                         // k >= 2
    std::vector<std::size_t> zero_vectors;     // indices (1-based) of zero labels
    std::vector<std::size_t> dependent_pairs;  // j with Delta(v_{j-1}, v_j) = 0, 1-based
    bool spans = false;                        // {v_j} generates Z^2
    std::array<std::int64_t, 2> elementary_divisors{0, 0};
    std::vector<std::int64_t> orders;          // structure group order per edge

    bool valid() const { return k_ok && zero_vectors.empty() && dependent_pairs.empty() && spans; }
};

/// Cyclic isotropy data v_1 ... v_k. The label of the closing edge is
/// v_0 := -v_k; only v_1..v_k are stored.
class IsotropyData {
public:
    IsotropyData() = default;
    explicit IsotropyData(std::vector<LatticeVector> vectors) : v_(std::move(vectors)) {}

    std::size_t k() const { return v_.size(); }
    const std::vector<LatticeVector>& vectors() const { return v_; }
    const LatticeVector& at(std::size_t j) const { return v_.at(j - 1); }  // 1-based
    LatticeVector v0() const { return -v_.back(); }

    /// Anti-periodic access: index(j) = v_j for 1<=j<=k, v_0 = -v_k,
    /// v_{j+k} = -v_j. Valid for -k < j <= 2k.
    LatticeVector cyclic(std::ptrdiff_t j) const;

    friend bool operator==(const IsotropyData&, const IsotropyData&) = default;

private:
    std::vector<LatticeVector> v_;
};

ValidityReport validate(const IsotropyData& d);

/// Throws std::invalid_argument when validate(d) reports failures.
void require_valid(const IsotropyData& d);

/// Structural conditions only: k >= 2, no zero labels, consecutive
/// independence. Spanning is excluded: the topology and admissibility
/// formulas apply verbatim to non-spanning data (orbifold quotients), and
/// the spanning verdict is reported separately.
void require_arrangement(const IsotropyData& d);

/// Applies B to every label. Throws std::invalid_argument if det B != 1.
IsotropyData apply_unimodular(const UnimodularMap& B, const IsotropyData& d);

/// Sign assignment eps_j in {+1,-1} (1-based, eps_0 tied to eps_k through
/// v_0 = -v_k) making every consecutive Delta positive, if one exists.
/// eps_1 is fixed to +1; the global flip gives the only other solution.
std::optional<std::vector<int>> orient_cyclic(const IsotropyData& d);

/// Flips the stored labels by the given signs.
IsotropyData apply_signs(const IsotropyData& d, const std::vector<int>& signs);

/// Delta(v_0, v_j) >= 0 for every j: all labels lie in the closed half-plane
/// on one side of the closing edge. Together with consecutive positivity this
/// pins the winding of [v_j] around the boundary circle to one; sequences
/// winding further have consecutive-positive signs too but are not cyclically
/// ordered in the sense of the classification.
bool base_halfplane(const IsotropyData& d);

// ---- small integer-matrix utilities (row-major, arbitrary small shape) ----

using ZMatrix = std::vector<std::vector<std::int64_t>>;

/// Nonnegative elementary divisors d_1 | d_2 | ... of an integer matrix
/// (Smith normal form diagonal), padded with zeros to min(rows, cols).
std::vector<std::int64_t> elementary_divisors(ZMatrix m);

/// Row-style Hermite normal form: pivots positive, zeros below each pivot,
/// entries above a pivot reduced into [0, pivot). Zero rows dropped.
ZMatrix hermite_normal_form(ZMatrix m);

/// Basis of the saturated integer kernel {x : m x^T = 0} as rows, in Hermite
/// normal form. m has full row rank on its nonzero rows.
ZMatrix integer_kernel(const ZMatrix& m);

} // namespace tsde

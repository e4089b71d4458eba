#include "toricsde/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsde {

std::int64_t structure_group_order(const LatticeVector& v) {
    if (v.is_zero()) throw std::invalid_argument("structure_group_order: zero vector");
    return gcd_i64(v.m, v.n);
}

UnimodularMap::UnimodularMap(std::int64_t a11, std::int64_t a12, std::int64_t a21, std::int64_t a22)
    : a{{{a11, a12}, {a21, a22}}} {
    if (det() != 1) throw std::invalid_argument("UnimodularMap: determinant must be +1");
}

std::int64_t UnimodularMap::det() const {
    return checked_sub(checked_mul(a[0][0], a[1][1]), checked_mul(a[0][1], a[1][0]));
}

UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y) {
    UnimodularMap r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = checked_add(checked_mul(x.a[i][0], y.a[0][j]),
                                    checked_mul(x.a[i][1], y.a[1][j]));
    return r;
}

LatticeVector IsotropyData::cyclic(std::ptrdiff_t j) const {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v_.size());
    if (j >= 1 && j <= n) return v_[static_cast<std::size_t>(j - 1)];
    if (j > n && j <= 2 * n) return -v_[static_cast<std::size_t>(j - n - 1)];
    if (j <= 0 && j > -n) return -v_[static_cast<std::size_t>(j + n - 1)];
    throw std::out_of_range("IsotropyData::cyclic index");
}

ValidityReport validate(const IsotropyData& d) {
    ValidityReport r;
    r.k = d.k();
    r.k_ok = r.k >= 2;
    for (std::size_t j = 1; j <= r.k; ++j) {
        if (d.at(j).is_zero()) r.zero_vectors.push_back(j);
        r.orders.push_back(d.at(j).is_zero() ? 0 : structure_group_order(d.at(j)));
    }
    if (!r.k_ok || !r.zero_vectors.empty()) return r;
    for (std::size_t j = 1; j <= r.k; ++j) {
        if (delta(d.cyclic(static_cast<std::ptrdiff_t>(j) - 1), d.at(j)) == 0)
            r.dependent_pairs.push_back(j);
    }
    ZMatrix m(2, std::vector<std::int64_t>(r.k));
    for (std::size_t j = 0; j < r.k; ++j) {
        m[0][j] = d.vectors()[j].m;
        m[1][j] = d.vectors()[j].n;
    }
    auto divs = elementary_divisors(std::move(m));
    r.elementary_divisors = {divs[0], divs[1]};
    r.spans = divs[0] == 1 && divs[1] == 1;
    return r;
}

void require_valid(const IsotropyData& d) {
    if (!validate(d).valid())
        throw std::invalid_argument("isotropy data is not valid");
}

void require_arrangement(const IsotropyData& d) {
    ValidityReport r = validate(d);
    if (!r.k_ok || !r.zero_vectors.empty() || !r.dependent_pairs.empty())
        throw std::invalid_argument("isotropy data is not a valid edge arrangement");
}

IsotropyData apply_unimodular(const UnimodularMap& B, const IsotropyData& d) {
    if (B.det() != 1) throw std::invalid_argument("apply_unimodular: det != 1");
    std::vector<LatticeVector> out;
    out.reserve(d.k());
    for (const auto& v : d.vectors()) out.push_back(B.apply(v));
    return IsotropyData(std::move(out));
}

std::optional<std::vector<int>> orient_cyclic(const IsotropyData& d) {
    const std::size_t k = d.k();
    if (k < 2) return std::nullopt;
    std::vector<int> eps(k, 1);
    // eps_1 = +1; each later sign is forced by Delta(eps_{j-1} v_{j-1}, eps_j v_j) > 0.
    for (std::size_t j = 2; j <= k; ++j) {
        std::int64_t dj = delta(d.at(j - 1), d.at(j));
        if (dj == 0) return std::nullopt;
        eps[j - 1] = eps[j - 2] * sign_of(dj);
    }
    // Closing condition through v_0 = -(eps_k v_k): Delta(eps_k v_0, eps_1 v_1) > 0.
    std::int64_t d0 = delta(d.v0(), d.at(1));
    if (d0 == 0 || eps[k - 1] * sign_of(d0) != 1) return std::nullopt;
    return eps;
}

bool base_halfplane(const IsotropyData& d) {
    for (std::size_t j = 1; j <= d.k(); ++j)
        if (delta(d.v0(), d.at(j)) < 0) return false;
    return true;
}

IsotropyData apply_signs(const IsotropyData& d, const std::vector<int>& signs) {
    if (signs.size() != d.k()) throw std::invalid_argument("apply_signs: size mismatch");
    std::vector<LatticeVector> out;
    out.reserve(d.k());
    for (std::size_t j = 0; j < d.k(); ++j)
        out.push_back(signs[j] >= 0 ? d.vectors()[j] : -d.vectors()[j]);
    return IsotropyData(std::move(out));
}

// ---- integer matrix routines ----

namespace {

std::size_t count_rows(const ZMatrix& m) { return m.size(); }
std::size_t count_cols(const ZMatrix& m) { return m.empty() ? 0 : m[0].size(); }

void negate_row(std::vector<std::int64_t>& row) {
    for (auto& x : row) x = checked_neg(x);
}

// row_i -= q * row_j
void row_axpy(ZMatrix& m, std::size_t i, std::size_t j, std::int64_t q) {
    for (std::size_t c = 0; c < m[i].size(); ++c)
        m[i][c] = checked_sub(m[i][c], checked_mul(q, m[j][c]));
}

void col_axpy(ZMatrix& m, std::size_t i, std::size_t j, std::int64_t q) {
    for (std::size_t r = 0; r < m.size(); ++r)
        m[r][i] = checked_sub(m[r][i], checked_mul(q, m[r][j]));
}

} // namespace

std::vector<std::int64_t> elementary_divisors(ZMatrix m) {
    const std::size_t R = count_rows(m), C = count_cols(m);
    const std::size_t n = std::min(R, C);
    std::vector<std::int64_t> divs(n, 0);
    std::size_t t = 0;
    while (t < n) {
        // locate a nonzero entry of minimal absolute value in the trailing block
        std::size_t pi = t, pj = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                std::int64_t a = m[i][j];
                if (a != 0 && (best == 0 || (a < 0 ? -a : a) < best)) {
                    best = a < 0 ? -a : a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(m[t], m[pi]);
        for (std::size_t r = 0; r < R; ++r) std::swap(m[r][t], m[r][pj]);
        if (m[t][t] < 0) negate_row(m[t]);
        // clear row and column t; restart if a remainder shrinks the pivot
        bool dirty = false;
        for (std::size_t i = t + 1; i < R && !dirty; ++i) {
            if (m[i][t] == 0) continue;
            std::int64_t q = m[i][t] / m[t][t];
            row_axpy(m, i, t, q);
            if (m[i][t] != 0) dirty = true;
        }
        if (!dirty) {
            for (std::size_t j = t + 1; j < C && !dirty; ++j) {
                if (m[t][j] == 0) continue;
                std::int64_t q = m[t][j] / m[t][t];
                col_axpy(m, j, t, q);
                if (m[t][j] != 0) dirty = true;
            }
        }
        if (dirty) continue;
        // pivot must divide the whole trailing block for the divisor chain
        bool fixed = true;
        for (std::size_t i = t + 1; i < R && fixed; ++i)
            for (std::size_t j = t + 1; j < C && fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    row_axpy(m, t, i, -1);  // fold row i into row t and retry
                    fixed = false;
                }
        if (!fixed) continue;
        divs[t] = m[t][t];
        ++t;
    }
    return divs;
}

ZMatrix hermite_normal_form(ZMatrix m) {
    const std::size_t R = count_rows(m), C = count_cols(m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        // gcd-eliminate below (row, col)
        while (true) {
            std::size_t piv = R;
            std::int64_t best = 0;
            for (std::size_t i = row; i < R; ++i) {
                std::int64_t a = m[i][col];
                if (a != 0 && (best == 0 || (a < 0 ? -a : a) < best)) {
                    best = a < 0 ? -a : a;
                    piv = i;
                }
            }
            if (piv == R) break;  // column all zero
            std::swap(m[row], m[piv]);
            if (m[row][col] < 0) negate_row(m[row]);
            bool any = false;
            for (std::size_t i = row + 1; i < R; ++i) {
                if (m[i][col] == 0) continue;
                std::int64_t q = m[i][col] / m[row][col];
                row_axpy(m, i, row, q);
                if (m[i][col] != 0) any = true;
            }
            if (!any) break;
        }
        if (m[row][col] == 0) continue;
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < row; ++i) {
            std::int64_t p = m[row][col];
            std::int64_t q = m[i][col] / p;
            if (m[i][col] % p < 0) q -= 1;  // floor division
            if (q != 0) row_axpy(m, i, row, q);
        }
        ++row;
    }
    m.resize(row);  // drop zero rows
    return m;
}

ZMatrix integer_kernel(const ZMatrix& m) {
    const std::size_t R = count_rows(m), C = count_cols(m);
    // Column operations on a copy of m, mirrored on U (starts as identity);
    // kernel = columns of U over the zero columns of the reduced m.
    ZMatrix a = m;
    ZMatrix u(C, std::vector<std::int64_t>(C, 0));
    for (std::size_t i = 0; i < C; ++i) u[i][i] = 1;

    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < R; ++r) std::swap(a[r][i], a[r][j]);
        for (std::size_t r = 0; r < C; ++r) std::swap(u[r][i], u[r][j]);
    };
    auto col_sub = [&](std::size_t i, std::size_t j, std::int64_t q) {
        for (std::size_t r = 0; r < R; ++r) a[r][i] = checked_sub(a[r][i], checked_mul(q, a[r][j]));
        for (std::size_t r = 0; r < C; ++r) u[r][i] = checked_sub(u[r][i], checked_mul(q, u[r][j]));
    };

    std::size_t lead = 0;
    for (std::size_t row = 0; row < R && lead < C; ++row) {
        while (true) {
            std::size_t piv = C;
            std::int64_t best = 0;
            for (std::size_t j = lead; j < C; ++j) {
                std::int64_t x = a[row][j];
                if (x != 0 && (best == 0 || (x < 0 ? -x : x) < best)) {
                    best = x < 0 ? -x : x;
                    piv = j;
                }
            }
            if (piv == C) break;
            col_swap(lead, piv);
            bool any = false;
            for (std::size_t j = lead + 1; j < C; ++j) {
                if (a[row][j] == 0) continue;
                std::int64_t q = a[row][j] / a[row][lead];
                col_sub(j, lead, q);
                if (a[row][j] != 0) any = true;
            }
            if (!any) break;
        }
        if (a[row][lead] != 0) ++lead;
    }
    ZMatrix basis;
    for (std::size_t j = lead; j < C; ++j) {
        std::vector<std::int64_t> row(C);
        for (std::size_t r = 0; r < C; ++r) row[r] = u[r][j];
        basis.push_back(std::move(row));
    }
    return hermite_normal_form(std::move(basis));
}

} // namespace tsde

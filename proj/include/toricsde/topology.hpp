#pragma once

#include "toricsde/lattice.hpp"
#include "toricsde/rational.hpp"

#include <optional>
#include <vector>

namespace tsde {

using QMatrix = std::vector<std::vector<Rational>>;

/// Exact intersection form of the exceptional-surface classes [S_j].
/// Only diagonal and cyclically adjacent entries are nonzero; the matrix
/// annihilates the integer vectors (m_1..m_k) and (n_1..n_k) exactly.
struct IntersectionForm {
    QMatrix gram;
    std::size_t rank = 0;       // always k - 2
    int signature = 0;
    // the two null relations: rows (m_1..m_k) and (n_1..n_k)
    std::vector<Rational> null_m;
    std::vector<Rational> null_n;
};

struct TopologyReport {
    std::size_t b2 = 0;
    int signature = 0;
    bool positive_definite = false;
    std::vector<Rational> self_intersections;
    // present only when the data admits a cyclic orientation
    std::optional<std::vector<Rational>> euler_orb;
    std::vector<std::int64_t> orders;
    // sign normalization applied for the oriented quantities (empty if none)
    std::vector<int> orientation_signs;
};

/// Gram matrix from the corner formulas, with indices cyclic on the stored
/// labels. Null relations are verified exactly; violation is an internal error.
IntersectionForm intersection_matrix(const IsotropyData& d);

/// Self-intersection [S_j].[S_j] = Delta_{j-1,j+1} / (Delta_{j-1,j} Delta_{j,j+1}),
/// insensitive to the sign choices of the labels. 1-based j.
Rational self_intersection(const IsotropyData& d, std::size_t j);

/// chi_orb(S_j) = (Delta_{j-1,j} + Delta_{j,j+1}) / (Delta_{j-1,j} Delta_{j,j+1});
/// requires cyclically oriented data (all consecutive Delta > 0).
Rational euler_char_orb(const IsotropyData& d, std::size_t j);

/// sigma(X) = sum_j sign(Delta_{j-1} Delta_{j-1,j} Delta_j) with
/// Delta_j = det(probe, v_j). Throws on a probe parallel to some v_j.
int signature_formula(const IsotropyData& d, const LatticeVector& probe);

/// Picks a probe (1, t) not parallel to any label.
LatticeVector default_probe(const IsotropyData& d);

/// Signature by exact rational inertia (pivoted symmetric reduction).
/// Exactly two zero pivots are required; anything else is an internal error.
int signature_oracle(const IntersectionForm& f);

/// True iff the form is positive definite (signature = k - 2). Internally
/// cross-checks the signature formula, the rational inertia, and cyclic
/// orderability with the half-plane (winding-one) normalization; any
/// disagreement among the three is an internal error.
bool is_positive_definite(const IsotropyData& d);

TopologyReport topology_report(const IsotropyData& d);

} // namespace tsde

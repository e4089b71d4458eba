#pragma once

#include "toricsde/lattice.hpp"
#include "toricsde/rational.hpp"
#include "toricsde/topology.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsde {

/// Multipole weights (a_i, b_i), a_i > 0, slopes y_i = b_i/a_i strictly
/// increasing, denominators in {1, 2}. Defines the k-pole eigenfunction.
class MultipoleData {
public:
    MultipoleData() = default;
    explicit MultipoleData(std::vector<std::pair<Rational, Rational>> weights);

    std::size_t k() const { return w_.size(); }
    const std::vector<std::pair<Rational, Rational>>& weights() const { return w_; }
    Rational slope(std::size_t i) const { return w_.at(i).second / w_.at(i).first; }

    /// Weights scaled by c > 0 (a covering change when c = 2).
    MultipoleData scaled(const Rational& c) const;

    friend bool operator==(const MultipoleData&, const MultipoleData&) = default;

private:
    std::vector<std::pair<Rational, Rational>> w_;
};

/// How the input labels were re-framed: rotate by `rotation` through the
/// anti-periodic extension, optionally after reversing the cyclic order,
/// then flip by `signs`. A shear records a unimodular basis change that was
/// needed to separate tied m-coordinates.
struct Framing {
    std::size_t rotation = 0;
    bool reflected = false;
    std::vector<int> signs;
    std::optional<UnimodularMap> shear;
};

struct AdmissibilityFailure {
    enum class Kind { cyclic_order, isn_formula, definiteness };
    Kind kind;
    std::size_t index = 0;  // isn position, 1-based; 0 otherwise
    std::string describe() const;
};

struct AdmissibilityVerdict {
    bool admissible = false;
    Framing framing;
    std::vector<AdmissibilityFailure> failures;
    std::optional<MultipoleData> weights;
};

/// Data in the weight-order framing (condition (a): m_j strictly increasing).
struct NormalizedData {
    IsotropyData data;
    MultipoleData weights;
    Framing framing;
};

/// The framing with the given rotation/reflection (no signs applied).
IsotropyData frame(const IsotropyData& d, std::size_t rotation, bool reflected);

/// Theorem-B decision: admissible iff some framing is cyclically orderable
/// with the strict corner inequality
///     Delta_{j-1,j+1} < Delta_{j-1,j} + Delta_{j,j+1}
/// holding at every cyclic position (anti-periodic labels at the wrap).
/// The verdict is invariant under unimodular maps, per-label sign flips,
/// rotations and reflections of the input.
AdmissibilityVerdict decide_admissible(const IsotropyData& d);

/// Weight construction: re-frames the data so the m-sequence
/// -m_k < m_1 < ... < m_k is strictly increasing and returns
/// (a_i, b_i) = (v_i - v_{i-1}) / 2. If no framing of the given basis works
/// (tied m-coordinates), a bounded search over unimodular shears is applied.
/// Requires decide_admissible(d).admissible; throws std::runtime_error when
/// no normalization is found.
NormalizedData to_multipole_normalized(const IsotropyData& d);
MultipoleData to_multipole(const IsotropyData& d);

/// v_j = sum_{i<=j} (a_i,b_i) - sum_{i>j} (a_i,b_i). Weights are doubled once
/// if the result is not integral (an orbifold covering; *doubled reports it).
IsotropyData from_multipole(const MultipoleData& w, bool* doubled = nullptr);

/// Basis of the rank-(k-2) sublattice of Z^k annihilated by the doubled
/// integer weight rows; saturated, rows in Hermite normal form.
struct KernelLattice {
    ZMatrix basis;
    std::size_t dimension() const { return basis.size(); }
};

KernelLattice subtorus_kernel(const MultipoleData& w);

// The three equivalent admissibility conditions, used by classify and the
// consistency suite: weight construction succeeds; the intersection form is
// positive definite (either orientation of the input) with every
// self-intersection below the orbifold Euler characteristic; the framing
// search of decide_admissible succeeds. Any disagreement is a defect.
bool admissible_by_weights(const IsotropyData& d);
bool admissible_by_intersection_form(const IsotropyData& d);
bool admissible_by_corner_inequalities(const IsotropyData& d);

} // namespace tsde

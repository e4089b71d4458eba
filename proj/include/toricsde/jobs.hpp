#pragma once

#include "toricsde/admissibility.hpp"
#include "toricsde/metric_curvature.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace tsde {

using json = nlohmann::ordered_json;

// Process exit codes shared by every subcommand.
enum class ExitCode : int {
    ok = 0,
    tolerance = 1,      // a verification residual exceeded its tolerance
    parse = 2,          // malformed input document
    invalid = 3,        // well-formed but invalid data (or refused bounds)
    inadmissible = 4,   // valid data that admits no selfdual Einstein metric
    internal = 5,       // cross-checked routes disagreed
};

struct JobResult {
    json report;
    ExitCode code = ExitCode::ok;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wire format: {"isotropy": {"vectors": [[m, n], ...]}} and
// {"multipole": {"weights": [["a", "b"], ...]}} with rationals as "p/q" strings.
IsotropyData parse_isotropy(const json& doc);
MultipoleData parse_multipole(const json& doc);
json isotropy_to_json(const IsotropyData& d);
json multipole_to_json(const MultipoleData& w);

/// Full classification: validity, topology, the three equivalent
/// admissibility conditions (which must agree), weights and kernel lattice.
JobResult classify_document(const json& input);

/// Isotropy -> multipole (with kernel) or multipole -> isotropy.
JobResult convert_document(const json& input);

struct VerifyOptions {
    GridSpec grid;
    double tol_eigen = 1e-10;
    double tol_poisson = 1e-6;
    double tol_detphi_pair = 1e-10;
    double tol_detphi_quad = 1e-4;
    double tol_curv = 1e-4;
    double h_scale = 1e-3;
    std::uint64_t seed = 20240901;
    int random_points = 64;
};

/// Numerical verification suite: eigenfunction equation, Poisson
/// reconstruction, det Phi triple agreement, Einstein/selfduality residuals
/// and the Einstein-constant drift over the grid.
JobResult verify_document(const json& input, const VerifyOptions& opts);

/// Two-column CSV (plus integer slope of the active piece) sampling the
/// boundary value, with exact kink rows. Header: eta,f0,slope.
std::string boundary_plot_csv(const json& input, int samples_per_piece = 9);

struct CensusEntry {
    std::vector<std::pair<std::int64_t, std::int64_t>> doubled_weights;
    std::size_t k = 0;
    bool admissible = false;
    bool closure_ok = false;
    bool routes_agree = false;
};

struct CensusResult {
    std::int64_t max_entry = 0;
    std::size_t max_k = 0;
    std::vector<CensusEntry> entries;
};

/// Enumerates weight tuples (doubled integer pairs (p, q), 1 <= p <= N,
/// |q| <= N, pairwise distinct slopes) for 2 <= k <= K, runs the round-trip
/// and consistency checks on each. Refuses oversized bounds with an estimate.
CensusResult run_census(std::int64_t max_entry, std::size_t max_k);

JobResult census_document(std::int64_t max_entry, std::size_t max_k);

} // namespace tsde

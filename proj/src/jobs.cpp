#include "toricsde/jobs.hpp"

#include "toricsde/eigenfunction.hpp"
#include "toricsde/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace tsde {

namespace {

json rational_list(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

json validity_to_json(const ValidityReport& v) {
    json out;
    out["valid"] = v.valid();
    out["k"] = v.k;
    out["k_ok"] = v.k_ok;
    out["zero_vectors"] = v.zero_vectors;
    out["dependent_pairs"] = v.dependent_pairs;
    out["spans"] = v.spans;
    out["elementary_divisors"] = {v.elementary_divisors[0], v.elementary_divisors[1]};
    out["orders"] = v.orders;
    return out;
}

json framing_to_json(const Framing& f) {
    json out;
    out["rotation"] = f.rotation;
    out["reflected"] = f.reflected;
    out["signs"] = f.signs;
    if (f.shear) {
        out["shear"] = {{f.shear->a[0][0], f.shear->a[0][1]},
                        {f.shear->a[1][0], f.shear->a[1][1]}};
    } else {
        out["shear"] = nullptr;
    }
    return out;
}

json topology_to_json(const TopologyReport& t, const IntersectionForm& form) {
    json out;
    out["b2"] = t.b2;
    out["signature"] = t.signature;
    out["positive_definite"] = t.positive_definite;
    out["self_intersections"] = rational_list(t.self_intersections);
    if (t.euler_orb)
        out["euler_orb"] = rational_list(*t.euler_orb);
    else
        out["euler_orb"] = nullptr;
    out["orders"] = t.orders;
    out["orientation_signs"] = t.orientation_signs;
    json gram = json::array();
    for (const auto& row : form.gram) gram.push_back(rational_list(row));
    out["gram"] = gram;
    out["gram_rank"] = form.rank;
    return out;
}

json verdict_to_json(const AdmissibilityVerdict& v) {
    json out;
    out["admissible"] = v.admissible;
    json fails = json::array();
    for (const auto& f : v.failures) {
        json e;
        switch (f.kind) {
            case AdmissibilityFailure::Kind::cyclic_order: e["kind"] = "cyclic-order"; break;
            case AdmissibilityFailure::Kind::isn_formula: e["kind"] = "corner-inequality"; break;
            case AdmissibilityFailure::Kind::definiteness: e["kind"] = "definiteness"; break;
        }
        if (f.index) e["index"] = f.index;
        e["detail"] = f.describe();
        fails.push_back(e);
    }
    out["failures"] = fails;
    if (v.admissible) out["framing"] = framing_to_json(v.framing);
    return out;
}

json kernel_to_json(const KernelLattice& kl) {
    json out;
    out["dimension"] = kl.dimension();
    out["basis"] = kl.basis;
    return out;
}

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

IsotropyData parse_isotropy(const json& doc) {
    if (!doc.contains("isotropy") || !doc["isotropy"].contains("vectors"))
        throw ParseError("expected {\"isotropy\": {\"vectors\": [[m, n], ...]}}");
    const auto& vecs = doc["isotropy"]["vectors"];
    if (!vecs.is_array() || vecs.empty()) throw ParseError("isotropy.vectors must be a nonempty array");
    std::vector<LatticeVector> out;
    for (const auto& v : vecs) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
            throw ParseError("isotropy vectors must be integer pairs");
        out.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
    }
    return IsotropyData(std::move(out));
}

MultipoleData parse_multipole(const json& doc) {
    if (!doc.contains("multipole") || !doc["multipole"].contains("weights"))
        throw ParseError("expected {\"multipole\": {\"weights\": [[\"a\", \"b\"], ...]}}");
    const auto& ws = doc["multipole"]["weights"];
    if (!ws.is_array() || ws.empty()) throw ParseError("multipole.weights must be a nonempty array");
    std::vector<std::pair<Rational, Rational>> out;
    auto to_rat = [](const json& x) {
        if (x.is_string()) return Rational::parse(x.get<std::string>());
        if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
        throw ParseError("weights must be integers or \"p/q\" strings");
    };
    for (const auto& w : ws) {
        if (!w.is_array() || w.size() != 2) throw ParseError("each weight must be a pair");
        out.emplace_back(to_rat(w[0]), to_rat(w[1]));
    }
    return MultipoleData(std::move(out));  // may throw invalid_argument
}

json isotropy_to_json(const IsotropyData& d) {
    json vecs = json::array();
    for (const auto& v : d.vectors()) vecs.push_back({v.m, v.n});
    return json{{"isotropy", {{"vectors", vecs}}}};
}

json multipole_to_json(const MultipoleData& w) {
    json ws = json::array();
    for (const auto& [a, b] : w.weights()) ws.push_back({a.str(), b.str()});
    return json{{"multipole", {{"weights", ws}}}};
}

JobResult classify_document(const json& input) {
    JobResult res;
    IsotropyData d = parse_isotropy(input);
    res.report["input"] = isotropy_to_json(d);
    ValidityReport validity = validate(d);
    res.report["validity"] = validity_to_json(validity);
    bool arrangement_ok =
        validity.k_ok && validity.zero_vectors.empty() && validity.dependent_pairs.empty();
    if (!arrangement_ok) {
        res.code = ExitCode::invalid;
        return res;
    }
    // non-spanning data (a quotient, not simply connected) still gets the
    // full report; only the exit code marks it invalid
    IntersectionForm form = intersection_matrix(d);
    TopologyReport topo = topology_report(d);
    res.report["topology"] = topology_to_json(topo, form);
    AdmissibilityVerdict verdict = decide_admissible(d);
    res.report["admissibility"] = verdict_to_json(verdict);
    bool r1 = admissible_by_weights(d);
    bool r2 = admissible_by_intersection_form(d);
    bool r3 = verdict.admissible;
    res.report["equivalent_conditions"] = {
        {"weight_construction", r1},
        {"definiteness_and_bound", r2},
        {"cyclic_order_and_corner_inequality", r3},
        {"agree", r1 == r2 && r2 == r3},
    };
    if (verdict.admissible && verdict.weights) {
        res.report["weights"] = multipole_to_json(*verdict.weights)["multipole"]["weights"];
        res.report["kernel"] = kernel_to_json(subtorus_kernel(*verdict.weights));
    } else {
        res.report["weights"] = nullptr;
        res.report["kernel"] = nullptr;
    }
    if (!(r1 == r2 && r2 == r3))
        res.code = ExitCode::internal;
    else if (!validity.valid())
        res.code = ExitCode::invalid;
    return res;
}

JobResult convert_document(const json& input) {
    JobResult res;
    if (input.contains("isotropy")) {
        IsotropyData d = parse_isotropy(input);
        res.report["input"] = isotropy_to_json(d);
        ValidityReport validity = validate(d);
        if (!validity.valid()) {
            res.report["validity"] = validity_to_json(validity);
            res.code = ExitCode::invalid;
            return res;
        }
        AdmissibilityVerdict verdict = decide_admissible(d);
        if (!verdict.admissible) {
            res.report["admissibility"] = verdict_to_json(verdict);
            res.code = ExitCode::inadmissible;
            return res;
        }
        NormalizedData nd = to_multipole_normalized(d);
        res.report["weights"] = multipole_to_json(nd.weights)["multipole"]["weights"];
        res.report["normalized_isotropy"] = isotropy_to_json(nd.data)["isotropy"]["vectors"];
        res.report["framing"] = framing_to_json(nd.framing);
        res.report["kernel"] = kernel_to_json(subtorus_kernel(nd.weights));
        return res;
    }
    if (input.contains("multipole")) {
        MultipoleData w = parse_multipole(input);
        res.report["input"] = multipole_to_json(w);
        bool doubled = false;
        IsotropyData d = from_multipole(w, &doubled);
        res.report["isotropy"] = isotropy_to_json(d)["isotropy"]["vectors"];
        res.report["doubled"] = doubled;
        res.report["validity"] = validity_to_json(validate(d));
        res.report["admissible"] = decide_admissible(d).admissible;
        return res;
    }
    throw ParseError("convert expects an \"isotropy\" or \"multipole\" document");
}

namespace {

struct WeightsOrExit {
    std::optional<MultipoleData> weights;
    JobResult early;
};

// Resolve the verify input to multipole weights, or produce the exit-4
// report (with a det Phi sign map when raw weights are available).
WeightsOrExit resolve_verify_input(const json& input, const GridSpec& grid) {
    WeightsOrExit out;
    if (input.contains("multipole")) {
        const auto& ws = input["multipole"]["weights"];
        std::vector<std::pair<Rational, Rational>> raw;
        for (const auto& w : ws) {
            auto to_rat = [](const json& x) {
                if (x.is_string()) return Rational::parse(x.get<std::string>());
                if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
                throw ParseError("weights must be integers or \"p/q\" strings");
            };
            if (!w.is_array() || w.size() != 2) throw ParseError("each weight must be a pair");
            raw.emplace_back(to_rat(w[0]), to_rat(w[1]));
        }
        bool mixed_sign = false;
        for (const auto& [a, b] : raw) {
            if (a.is_zero()) throw std::invalid_argument("weights: a_i must be nonzero");
            if (a.sign() < 0) mixed_sign = true;
            if (a.den() > 2 || b.den() > 2)
                throw std::invalid_argument("weights: denominators restricted to {1,2}");
        }
        bool sorted = !mixed_sign;
        for (std::size_t i = 1; sorted && i < raw.size(); ++i)
            if (!(raw[i - 1].second / raw[i - 1].first < raw[i].second / raw[i].first))
                sorted = false;
        if (!sorted) {
            // valid pairs but no convex multipole: emit the det Phi sign map
            std::vector<std::pair<double, double>> ab;
            for (const auto& [a, b] : raw) ab.emplace_back(a.to_double(), b.to_double());
            json map = json::array();
            for (const auto& p : grid.points()) {
                double v = det_phi_closed_raw(ab, p);
                map.push_back({{"rho", p.rho}, {"eta", p.eta}, {"det_phi", v},
                               {"sign", v > 0 ? 1 : (v < 0 ? -1 : 0)}});
            }
            out.early.report["admissible"] = false;
            out.early.report["reason"] = mixed_sign
                                             ? "weights carry mixed-sign coefficients"
                                             : "weight slopes are not strictly increasing";
            out.early.report["det_phi_sign_map"] = map;
            out.early.code = ExitCode::inadmissible;
            return out;
        }
        out.weights = MultipoleData(std::move(raw));
        return out;
    }
    if (input.contains("isotropy")) {
        IsotropyData d = parse_isotropy(input);
        require_arrangement(d);
        AdmissibilityVerdict verdict = decide_admissible(d);
        if (!verdict.admissible) {
            out.early.report["admissible"] = false;
            out.early.report["admissibility"] = verdict_to_json(verdict);
            out.early.code = ExitCode::inadmissible;
            return out;
        }
        out.weights = *verdict.weights;
        return out;
    }
    throw ParseError("verify expects an \"isotropy\" or \"multipole\" document");
}

} // namespace

JobResult verify_document(const json& input, const VerifyOptions& opts) {
    WeightsOrExit resolved = resolve_verify_input(input, opts.grid);
    if (!resolved.weights) return resolved.early;
    const MultipoleData& w = *resolved.weights;

    JobResult res;
    res.report["input"] = multipole_to_json(w);

    std::vector<HalfSpacePoint> pts = opts.grid.points();
    {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> rho_dist(0.05, 3.0), eta_dist(-3.0, 3.0);
        for (int i = 0; i < opts.random_points; ++i)
            pts.emplace_back(rho_dist(rng), eta_dist(rng));
    }

    BoundaryValue b = boundary_value(w);
    double eigen_max = 0.0, poisson_max = 0.0, pair_max = 0.0, quad_max = 0.0;
    std::vector<std::array<double, 4>> per_point(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        EigenJet j = eval_jet(w, p);
        double eigen_res =
            std::abs(p.rho * p.rho * (j.F_rhorho + j.F_etaeta) - 0.75 * j.F) / std::abs(j.F);
        double F2 = poisson_transform(b, p);
        double poisson_err = std::abs(F2 - j.F) / std::abs(j.F);
        double grad2 = p.rho * p.rho * (j.F_rho * j.F_rho + j.F_eta * j.F_eta);
        double dF = 0.25 * j.F * j.F - grad2;
        double df = j.f * j.f_rho - p.rho * (j.f_rho * j.f_rho + j.f_eta * j.f_eta);
        double pair_err = std::abs(dF - df) / std::max(1.0, 0.25 * j.F * j.F + grad2);
        double quad = det_phi_quadrature(b, p);
        double quad_err = std::abs(quad - df) / std::max(std::abs(df), 1e-12);
        per_point[i] = {eigen_res, poisson_err, pair_err, quad_err};
    });
    for (const auto& e : per_point) {
        eigen_max = std::max(eigen_max, e[0]);
        poisson_max = std::max(poisson_max, e[1]);
        pair_max = std::max(pair_max, e[2]);
        quad_max = std::max(quad_max, e[3]);
    }

    FieldReport field = verify_field(w, opts.grid, opts.h_scale);

    res.report["eigen_max_rel_residual"] = eigen_max;
    res.report["poisson_max_rel_error"] = poisson_max;
    res.report["det_phi_pair_max_rel"] = pair_max;
    res.report["det_phi_quadrature_max_rel"] = quad_max;
    res.report["curvature"] = {
        {"max_einstein_residual", field.max_einstein_residual},
        {"mean_einstein_residual", field.mean_einstein_residual},
        {"max_weyl_asd_rel", field.max_weyl_asd_rel},
        {"max_weyl_sd_rel", field.max_weyl_sd_rel},
        {"lambda_drift", field.lambda_drift},
        {"scalar_mean", field.scalar_mean},
        {"scalar_min", field.scalar_min},
        {"scalar_max", field.scalar_max},
        {"min_det_phi", field.min_det_phi},
        {"orientation", field.orientation},
        {"orientation_consistent", field.orientation_consistent},
        {"points", field.points},
    };
    res.report["tolerances"] = {
        {"eigen", opts.tol_eigen},
        {"poisson", opts.tol_poisson},
        {"det_phi_pair", opts.tol_detphi_pair},
        {"det_phi_quadrature", opts.tol_detphi_quad},
        {"curvature", opts.tol_curv},
    };
    bool pass = eigen_max <= opts.tol_eigen && poisson_max <= opts.tol_poisson &&
                pair_max <= opts.tol_detphi_pair && quad_max <= opts.tol_detphi_quad &&
                field.max_einstein_residual <= opts.tol_curv &&
                field.max_weyl_asd_rel <= opts.tol_curv &&
                field.lambda_drift <= opts.tol_curv && field.min_det_phi > 0.0;
    res.report["pass"] = pass;
    if (!pass) res.code = ExitCode::tolerance;
    return res;
}

std::string boundary_plot_csv(const json& input, int samples_per_piece) {
    MultipoleData w = input.contains("isotropy")
                          ? to_multipole(parse_isotropy(input))
                          : parse_multipole(input);
    BoundaryValue b = boundary_value(w);
    const std::size_t k = b.kink_count();
    std::vector<std::pair<double, std::size_t>> rows;  // (eta, piece index)
    const double y1 = b.kinks().front().to_double();
    const double yk = b.kinks().back().to_double();
    const double margin = std::max(1.0, 0.5 * (yk - y1));
    auto sample = [&](double lo, double hi, std::size_t piece) {
        for (int s = 0; s < samples_per_piece; ++s)
            rows.emplace_back(lo + (hi - lo) * (s + 0.5) / samples_per_piece, piece);
    };
    sample(y1 - margin, y1, 0);
    for (std::size_t j = 0; j + 1 < k; ++j)
        sample(b.kinks()[j].to_double(), b.kinks()[j + 1].to_double(), j + 1);
    sample(yk, yk + margin, k);
    for (std::size_t j = 0; j < k; ++j)
        rows.emplace_back(b.kinks()[j].to_double(), j + 1);  // exact kink rows, right piece
    std::sort(rows.begin(), rows.end());

    std::ostringstream os;
    os << "eta,f0,slope\n";
    for (const auto& [eta, piece] : rows) {
        os << double_str(eta) << ',' << double_str(b.eval(eta)) << ','
           << b.piece(piece).first.str() << '\n';
    }
    return os.str();
}

CensusResult run_census(std::int64_t max_entry, std::size_t max_k) {
    if (max_entry < 1 || max_k < 2) throw std::invalid_argument("census: need N >= 1, K >= 2");
    // candidate doubled weights (p, q), slopes q/p
    std::vector<std::pair<std::int64_t, std::int64_t>> cand;
    for (std::int64_t p = 1; p <= max_entry; ++p)
        for (std::int64_t q = -max_entry; q <= max_entry; ++q) cand.emplace_back(p, q);
    double estimate = 0.0;
    {
        double c = 1.0;
        for (std::size_t k = 1; k <= max_k; ++k) {
            c *= static_cast<double>(cand.size() + 1 - k) / static_cast<double>(k);
            if (k >= 2) estimate += c;
        }
    }
    if (max_entry > 5 || max_k > 7 || estimate > 2e6) {
        std::ostringstream os;
        os << "census bounds refused: about " << static_cast<std::uint64_t>(estimate)
           << " tuples for N=" << max_entry << ", K=" << max_k
           << " (desk scale is N<=3, K<=5)";
        throw std::invalid_argument(os.str());
    }
    // sort candidates by slope so subsets enumerate in slope order directly
    std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
        return x.second * y.first < y.second * x.first ||
               (x.second * y.first == y.second * x.first && x < y);
    });
    auto same_slope = [](const std::pair<std::int64_t, std::int64_t>& x,
                         const std::pair<std::int64_t, std::int64_t>& y) {
        return x.second * y.first == y.second * x.first;
    };

    CensusResult res;
    res.max_entry = max_entry;
    res.max_k = max_k;
    // depth-first over slope-ordered candidates, skipping slope repeats
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (chosen.size() >= 2) tuples.push_back(chosen);
        if (chosen.size() == max_k) return;
        for (std::size_t i = start; i < cand.size(); ++i) {
            if (!chosen.empty() && same_slope(cand[chosen.back()], cand[i])) continue;
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    res.entries.resize(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t t) {
        CensusEntry e;
        std::vector<std::pair<Rational, Rational>> ws;
        for (std::size_t idx : tuples[t]) {
            e.doubled_weights.push_back(cand[idx]);
            ws.emplace_back(Rational(cand[idx].first, 2), Rational(cand[idx].second, 2));
        }
        e.k = tuples[t].size();
        MultipoleData w(std::move(ws));
        IsotropyData d = from_multipole(w);
        AdmissibilityVerdict verdict = decide_admissible(d);
        e.admissible = verdict.admissible;
        if (verdict.admissible) {
            NormalizedData nd = to_multipole_normalized(d);
            e.closure_ok = from_multipole(nd.weights) == nd.data;
        }
        e.routes_agree = (admissible_by_weights(d) == e.admissible) &&
                         (admissible_by_intersection_form(d) == e.admissible);
        res.entries[t] = std::move(e);
    });
    return res;
}

JobResult census_document(std::int64_t max_entry, std::size_t max_k) {
    CensusResult census = run_census(max_entry, max_k);
    JobResult res;
    res.report["bounds"] = {{"max_entry", max_entry}, {"max_k", max_k}};
    std::map<std::size_t, std::size_t> counts, admissible;
    std::size_t closure_failures = 0, route_disagreements = 0;
    for (const auto& e : census.entries) {
        counts[e.k] += 1;
        if (e.admissible) {
            admissible[e.k] += 1;
            if (!e.closure_ok) ++closure_failures;
        }
        if (!e.routes_agree) ++route_disagreements;
    }
    json per_k = json::array();
    for (const auto& [k, n] : counts) {
        per_k.push_back({{"k", k},
                         {"b2", k - 2},
                         {"tuples", n},
                         {"admissible", admissible.count(k) ? admissible[k] : 0}});
    }
    res.report["per_k"] = per_k;
    res.report["total"] = census.entries.size();
    res.report["closure_failures"] = closure_failures;
    res.report["route_disagreements"] = route_disagreements;
    if (route_disagreements || closure_failures) res.code = ExitCode::internal;
    return res;
}

} // namespace tsde

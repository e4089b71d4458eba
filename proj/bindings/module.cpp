#include "toricsde/eigenfunction.hpp"
#include "toricsde/jobs.hpp"
#include "toricsde/metric_curvature.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

namespace py = pybind11;
using namespace tsde;

namespace {

using IntPair = std::pair<std::int64_t, std::int64_t>;
using StrPair = std::pair<std::string, std::string>;

IsotropyData make_data(const std::vector<IntPair>& vectors) {
    std::vector<LatticeVector> vs;
    vs.reserve(vectors.size());
    for (const auto& [m, n] : vectors) vs.push_back({m, n});
    return IsotropyData(std::move(vs));
}

MultipoleData make_weights(const std::vector<StrPair>& weights) {
    std::vector<std::pair<Rational, Rational>> ws;
    ws.reserve(weights.size());
    for (const auto& [a, b] : weights) ws.emplace_back(Rational::parse(a), Rational::parse(b));
    return MultipoleData(std::move(ws));
}

std::vector<IntPair> data_out(const IsotropyData& d) {
    std::vector<IntPair> out;
    for (const auto& v : d.vectors()) out.emplace_back(v.m, v.n);
    return out;
}

std::vector<StrPair> weights_out(const MultipoleData& w) {
    std::vector<StrPair> out;
    for (const auto& [a, b] : w.weights()) out.emplace_back(a.str(), b.str());
    return out;
}

py::dict field_report_out(const FieldReport& f) {
    py::dict d;
    d["max_einstein_residual"] = f.max_einstein_residual;
    d["mean_einstein_residual"] = f.mean_einstein_residual;
    d["max_weyl_asd_rel"] = f.max_weyl_asd_rel;
    d["max_weyl_sd_rel"] = f.max_weyl_sd_rel;
    d["lambda_drift"] = f.lambda_drift;
    d["scalar_mean"] = f.scalar_mean;
    d["min_det_phi"] = f.min_det_phi;
    d["orientation"] = f.orientation;
    d["points"] = f.points;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "toric selfdual Einstein orbifolds: lattice classification and "
              "numerical verification of the explicit metric";

    // ---- lattice / topology ----
    m.def("delta", [](IntPair v, IntPair w) {
        return delta({v.first, v.second}, {w.first, w.second});
    }, py::arg("v"), py::arg("w"), "lattice determinant m_v n_w - m_w n_v");
    m.def("structure_group_order", [](IntPair v) {
        return structure_group_order({v.first, v.second});
    }, py::arg("v"));
    m.def("validate", [](const std::vector<IntPair>& vectors) {
        ValidityReport r = validate(make_data(vectors));
        py::dict d;
        d["valid"] = r.valid();
        d["k"] = r.k;
        d["spans"] = r.spans;
        d["orders"] = r.orders;
        d["dependent_pairs"] = r.dependent_pairs;
        d["elementary_divisors"] = std::vector<std::int64_t>{r.elementary_divisors[0],
                                                             r.elementary_divisors[1]};
        return d;
    }, py::arg("vectors"));
    m.def("orient_cyclic", [](const std::vector<IntPair>& vectors) -> py::object {
        auto signs = orient_cyclic(make_data(vectors));
        if (!signs) return py::none();
        return py::cast(*signs);
    }, py::arg("vectors"));
    m.def("apply_unimodular", [](const std::vector<std::vector<std::int64_t>>& b,
                                 const std::vector<IntPair>& vectors) {
        UnimodularMap u(b.at(0).at(0), b.at(0).at(1), b.at(1).at(0), b.at(1).at(1));
        return data_out(apply_unimodular(u, make_data(vectors)));
    }, py::arg("matrix"), py::arg("vectors"));
    m.def("intersection_matrix", [](const std::vector<IntPair>& vectors) {
        IntersectionForm f = intersection_matrix(make_data(vectors));
        std::vector<std::vector<std::string>> gram;
        for (const auto& row : f.gram) {
            std::vector<std::string> r;
            for (const auto& x : row) r.push_back(x.str());
            gram.push_back(std::move(r));
        }
        py::dict d;
        d["gram"] = gram;
        d["rank"] = f.rank;
        d["signature"] = f.signature;
        return d;
    }, py::arg("vectors"));
    m.def("signature", [](const std::vector<IntPair>& vectors) {
        IsotropyData d = make_data(vectors);
        return signature_formula(d, default_probe(d));
    }, py::arg("vectors"));
    m.def("is_positive_definite", [](const std::vector<IntPair>& vectors) {
        return is_positive_definite(make_data(vectors));
    }, py::arg("vectors"));

    // ---- admissibility / conversion ----
    m.def("decide_admissible", [](const std::vector<IntPair>& vectors) {
        AdmissibilityVerdict v = decide_admissible(make_data(vectors));
        py::dict d;
        d["admissible"] = v.admissible;
        std::vector<std::string> fails;
        for (const auto& f : v.failures) fails.push_back(f.describe());
        d["failures"] = fails;
        if (v.weights) d["weights"] = weights_out(*v.weights);
        return d;
    }, py::arg("vectors"));
    m.def("to_multipole", [](const std::vector<IntPair>& vectors) {
        return weights_out(to_multipole(make_data(vectors)));
    }, py::arg("vectors"));
    m.def("from_multipole", [](const std::vector<StrPair>& weights) {
        bool doubled = false;
        auto d = from_multipole(make_weights(weights), &doubled);
        return py::make_tuple(data_out(d), doubled);
    }, py::arg("weights"));
    m.def("subtorus_kernel", [](const std::vector<StrPair>& weights) {
        return subtorus_kernel(make_weights(weights)).basis;
    }, py::arg("weights"));

    // ---- eigenfunction / boundary ----
    m.def("eval_jet", [](const std::vector<StrPair>& weights, double rho, double eta) {
        EigenJet j = eval_jet(make_weights(weights), HalfSpacePoint(rho, eta));
        py::dict d;
        d["F"] = j.F; d["F_rho"] = j.F_rho; d["F_eta"] = j.F_eta;
        d["F_rhorho"] = j.F_rhorho; d["F_etaeta"] = j.F_etaeta; d["F_rhoeta"] = j.F_rhoeta;
        d["f"] = j.f; d["f_rho"] = j.f_rho; d["f_eta"] = j.f_eta;
        return d;
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"));
    m.def("boundary_value", [](const std::vector<StrPair>& weights, double eta) {
        return boundary_value(make_weights(weights)).eval(eta);
    }, py::arg("weights"), py::arg("eta"));
    m.def("det_phi_closed", [](const std::vector<StrPair>& weights, double rho, double eta) {
        return det_phi_closed(make_weights(weights), HalfSpacePoint(rho, eta));
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"));
    m.def("det_phi_quadrature", [](const std::vector<StrPair>& weights, double rho, double eta) {
        return det_phi_quadrature(boundary_value(make_weights(weights)),
                                  HalfSpacePoint(rho, eta));
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"));
    m.def("poisson_transform", [](const std::vector<StrPair>& weights, double rho, double eta) {
        return poisson_transform(boundary_value(make_weights(weights)),
                                 HalfSpacePoint(rho, eta));
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"));
    m.def("homogeneous_extension",
          [](const std::vector<StrPair>& weights, double x, double y) {
              return homogeneous_extension(boundary_value(make_weights(weights)), x, y);
          }, py::arg("weights"), py::arg("x"), py::arg("y"));
    m.def("edge_constancy_check", [](const std::vector<IntPair>& vectors, std::size_t j) {
        return edge_constancy_check(make_data(vectors), j);
    }, py::arg("vectors"), py::arg("j"));

    // ---- metric / curvature ----
    m.def("metric_at", [](const std::vector<StrPair>& weights, double rho, double eta) {
        MetricAtPoint m4 = metric_at(make_weights(weights), HalfSpacePoint(rho, eta));
        std::vector<std::vector<double>> g(4, std::vector<double>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g[i][j] = m4.g(i, j);
        return py::make_tuple(g, m4.kappa);
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"));
    m.def("curvature_at", [](const std::vector<StrPair>& weights, double rho, double eta,
                             double h) {
        CurvatureReport r = curvature_at(make_weights(weights), HalfSpacePoint(rho, eta), h);
        py::dict d;
        d["einstein_residual"] = r.einstein_residual;
        d["scalar"] = r.scalar;
        d["weyl_sd_norm"] = r.weyl_sd_norm;
        d["weyl_asd_norm"] = r.weyl_asd_norm;
        d["riemann_norm"] = r.riemann_norm;
        d["orientation"] = r.orientation;
        return d;
    }, py::arg("weights"), py::arg("rho"), py::arg("eta"), py::arg("h") = 1e-3);
    m.def("verify_field", [](const std::vector<StrPair>& weights, double rho_min, double rho_max,
                             double eta_min, double eta_max, int n_rho, int n_eta) {
        GridSpec g{rho_min, rho_max, eta_min, eta_max, n_rho, n_eta};
        return field_report_out(verify_field(make_weights(weights), g));
    }, py::arg("weights"), py::arg("rho_min") = 0.6, py::arg("rho_max") = 1.4,
       py::arg("eta_min") = -0.5, py::arg("eta_max") = 0.5, py::arg("n_rho") = 5,
       py::arg("n_eta") = 5);

    // ---- document-level operations (JSON strings in and out) ----
    m.def("classify_json", [](const std::string& doc) {
        JobResult r = classify_document(json::parse(doc));
        return py::make_tuple(r.report.dump(2), static_cast<int>(r.code));
    }, py::arg("document"));
    m.def("convert_json", [](const std::string& doc) {
        JobResult r = convert_document(json::parse(doc));
        return py::make_tuple(r.report.dump(2), static_cast<int>(r.code));
    }, py::arg("document"));
    m.def("census", [](std::int64_t max_entry, std::size_t max_k) {
        JobResult r = census_document(max_entry, max_k);
        return py::make_tuple(r.report.dump(2), static_cast<int>(r.code));
    }, py::arg("max_entry") = 2, py::arg("max_k") = 4);
    m.def("boundary_plot_csv", [](const std::string& doc, int samples) {
        return boundary_plot_csv(json::parse(doc), samples);
    }, py::arg("document"), py::arg("samples") = 9);
}

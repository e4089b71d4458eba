"""Smoke tests for the Python bindings: worked examples end to end."""

import json
import math

import pytest

import toricsde as t

CP2 = [(-1, -1), (1, 0), (2, 1)]
S4 = [(0, -1), (1, 0)]
S4_W = [("1/2", "-1/2"), ("1/2", "1/2")]


def test_lattice_basics():
    assert t.delta((-2, -1), (-1, -1)) == 1
    assert t.structure_group_order((-2, -4)) == 2
    rep = t.validate(CP2)
    assert rep["valid"] and rep["spans"] and rep["orders"] == [1, 1, 1]
    assert t.orient_cyclic(CP2) == [1, 1, 1]
    assert t.orient_cyclic([(1, 0), (2, 0)]) is None


def test_topology():
    form = t.intersection_matrix(CP2)
    assert form["rank"] == 1 and form["signature"] == 1
    assert form["gram"][0] == ["1", "-1", "1"]
    assert t.signature(CP2) == 1
    assert t.is_positive_definite(CP2)
    assert not t.is_positive_definite([(2, 1), (1, 0), (-1, -1)])  # reversed


def test_admissibility_and_conversion():
    verdict = t.decide_admissible(CP2)
    assert verdict["admissible"]
    assert verdict["weights"] == [("1/2", "0"), ("1", "1/2"), ("1/2", "1/2")]
    data, doubled = t.from_multipole(S4_W)
    assert data == [(0, -1), (1, 0)] and not doubled
    assert t.subtorus_kernel(verdict["weights"]) == [[1, -1, 1]]
    printed = [(-1, -1), (0, -1), (1, 0), (2, 3)]
    assert not t.decide_admissible(printed)["admissible"]


def test_eigenfunction_and_poisson():
    jet = t.eval_jet(S4_W, 1.0, 0.0)
    assert jet["F"] == pytest.approx(math.sqrt(2.0))
    lap = 1.0 * (jet["F_rhorho"] + jet["F_etaeta"])
    assert lap == pytest.approx(0.75 * jet["F"], rel=1e-10)
    assert t.poisson_transform(S4_W, 1.0, 0.3) == pytest.approx(
        t.eval_jet(S4_W, 1.0, 0.3)["F"], rel=1e-9
    )
    closed = t.det_phi_closed(S4_W, 1.0, 0.0)
    assert closed == pytest.approx(0.5)
    assert t.det_phi_quadrature(S4_W, 1.0, 0.0) == pytest.approx(closed, rel=1e-6)
    assert t.boundary_value(S4_W, 0.0) == pytest.approx(1.0)
    assert t.homogeneous_extension(S4_W, 0.0, 1.0) == pytest.approx(1.0)


def test_curvature():
    rep = t.curvature_at(S4_W, 1.0, 0.3, 1e-3)
    assert rep["einstein_residual"] < 1e-4
    assert rep["scalar"] == pytest.approx(12.0, rel=1e-5)
    field = t.verify_field(S4_W, n_rho=3, n_eta=3)
    assert field["max_einstein_residual"] < 1e-4
    assert field["lambda_drift"] < 1e-3


def test_edge_constancy():
    for j in (1, 2, 3):
        assert t.edge_constancy_check(CP2, j) < 1e-10


def test_document_level():
    doc = json.dumps({"isotropy": {"vectors": [list(v) for v in CP2]}})
    report, code = t.classify_json(doc)
    assert code == 0
    parsed = json.loads(report)
    assert parsed["admissibility"]["admissible"]
    assert parsed["topology"]["b2"] == 1
    assert parsed["equivalent_conditions"]["agree"]

    csv_text = t.boundary_plot_csv(doc, 5)
    assert csv_text.splitlines()[0] == "eta,f0,slope"

    census_report, census_code = t.census(1, 2)
    assert census_code == 0
    assert json.loads(census_report)["route_disagreements"] == 0

from fractions import Fraction

import pytest

import conelab


def test_family_list():
    ids = conelab.family_ids()
    assert ids[0] == "gr25"
    assert len(ids) == 8
    cubic = conelab.family("cubic")
    assert (cubic["n"], cubic["r"], cubic["k"]) == (3, 3, 3)


def test_nef_counts():
    assert len(conelab.nef_rays("gr25")) == 32
    assert len(conelab.nef_rays("dcover")) == 4


def test_cone_kernel():
    cone = conelab.cone_from_generators([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]], 3)
    assert cone["rays"] == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert len(cone["facets"]) == 3
    half = conelab.cone_from_inequalities([[1, 0], ["1/2", "-1/3"]], 2)
    assert half["lineality"] == []


def test_sequences_and_flops():
    seqs = conelab.sequences("gr25")
    assert len(seqs) == 13
    assert seqs[0] == "(1)"
    ledger = conelab.apply_flops("gr25", ["1"])
    assert "6l-2e1-e2-e3-e4-e5" in ledger
    with pytest.raises(conelab.FlopError, match="line through p1"):
        conelab.apply_flops("gr25", ["12"])


def test_reduce_cubic():
    r = conelab.reduce("cubic", [1, Fraction(3, 4), Fraction(3, 4)])
    assert r["involution"] is True
    assert r["chart"] == [Fraction(1, 4), Fraction(1, 4)]


def test_covering_and_graph():
    cov = conelab.covering("quadrics")
    assert cov["pass"]
    assert all(c["ok"] for c in cov["certificates"])
    assert conelab.covering("flag123")["delegated"]
    graph = conelab.chamber_graph("quadrics")
    assert graph["vertices"] == 9 and graph["connected"]


def test_verify_report():
    rep = conelab.verify(["cubic", "dcover"], samples=50)
    assert rep["schema_version"] == 1
    assert rep["summary"]["fail"] == 0
    assert rep["summary"]["total"] == len(rep["results"])

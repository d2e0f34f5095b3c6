"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import okbody


def test_names():
    assert "blowup-p3-2pts" in okbody.threefold_names()
    assert okbody.surface_names() == ["blowup-p2", "p2"]


def test_tetrahedron_body():
    m = okbody.Threefold.builtin("blowup-p3-2pts", {"d": 1})
    b = m.body(["1", "0", "0"])
    assert b["affine_dim"] == 3
    assert Fraction(b["volume"]) == Fraction(1, 6)
    verts = {tuple(Fraction(x) for x in v) for v in b["vertices"]}
    assert verts == {(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 0, 1)}


def test_limiting_body_point():
    m = okbody.Threefold.builtin("blowup-p3-2pts")
    b = m.body([0, 0, 1], limiting=True)
    assert b["vertices"] == [["0", "0", "0"]]


def test_slice_and_scalars():
    m = okbody.Threefold.builtin("blowup-p3-2pts")
    s = m.slice([1, 0, 0], "1/2")
    assert s["chamber"] == "2"
    assert Fraction(s["area"]) == Fraction(1, 8)
    assert m.mu([1, 0, 0]) == "1"
    assert m.ord([2, 1, 1]) == "1"
    assert m.chambers([1, 0, 1]) == ["1", "2"]


def test_zariski_and_volume():
    m = okbody.Threefold.builtin("blowup-p3-2pts")
    z = m.zariski([1, 0, 1])
    assert z["chamber"] == "1"
    assert z["positive"] == ["1", "0", "0"]
    assert z["coeffs"] == {"E2": "1"}
    # 2H + E1 + E2 has positive part 2H, so the volume is (2H)^3 = 8.
    assert m.volume([2, 1, 1]) == "8"


def test_admissibility_failure():
    m = okbody.Threefold.builtin("blowup-p3-2pts")
    rep = m.admissibility([3, -1, -1])
    assert rep["pass"] is False
    assert rep["inadmissible"] == ["flip"]
    with pytest.raises(okbody.AdmissibilityError):
        m.body([3, -1, -1])


def test_surface_polygon():
    s = okbody.Surface.builtin("blowup-p2")
    p = s.polygon(["2", "0"])
    assert Fraction(p["area"]) == 2
    z = s.zariski([2, 3])
    assert z["coeffs"] == {"E": "3"}


def test_json_round_trip():
    m = okbody.Threefold.builtin("blowup-p3-2pts", {"d": 2})
    again = okbody.Threefold.from_json(m.to_json())
    assert again.to_json() == m.to_json()


def test_oracle_hull():
    h = okbody.oracle_hull("blowup2", 1, 0, 1, mmax=4)
    assert h["affine_dim"] <= 2
    assert Fraction(h["volume"]) == 0


def test_model_error():
    with pytest.raises(okbody.ModelError):
        okbody.Threefold.builtin("blowup-p3-2pts", {"d": 0})

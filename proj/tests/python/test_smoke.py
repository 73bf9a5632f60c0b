import os
from pathlib import Path

import pytest

import cantorv as cv

CORPUS = Path(os.environ.get("CANTORV_CORPUS", Path(__file__).parents[2] / "corpus"))


def load(name):
    return (CORPUS / name).read_text()


def test_spec_parse_and_errors():
    s = cv.Spec("roots=1; block[2,3]")
    assert s.d == 1
    assert s.color_count == 2
    assert s.is_complete()
    with pytest.raises(cv.SpecError):
        cv.Spec("roots=1; block[")
    assert issubclass(cv.NotAdmissible, cv.Error)


def test_stein_lub_is_sixths():
    a = cv.Basis.parse(load("stein_halves.basis"))
    b = cv.Basis.parse(load("stein_thirds.basis"))
    u = cv.lub(a, b)
    assert len(u) == 6
    assert a <= u and b <= u
    assert all(den == 6 for leaf in u.leaves for _, den in leaf.coords)
    assert cv.glb(a, b) == cv.Basis.root(a.spec)


def test_inadmissible_basis_rejected():
    with pytest.raises(cv.NotAdmissible):
        cv.Basis.parse(load("stein_inadmissible.basis"))


def test_expand_contract_round_trip():
    s = cv.Spec("roots=1; block[2]; block[3]")
    x = cv.Basis.root(s)
    y = x.expand(0, 0).expand(1, 1)
    assert len(y) == 4
    family = y.leaves[1:4]
    assert y.contract(family, 1) == x.expand(0, 0)
    assert cv.Basis.parse(str(y)) == y


def test_group_laws():
    s = cv.Spec("roots=1; block[2]")
    g = cv.Element.random(s, 5, 1)
    h = cv.Element.random(s, 5, 2)
    k = cv.Element.random(s, 5, 3)
    assert (g * h) * k == g * (h * k)
    assert (g * g.inverse()).is_identity()
    assert cv.Element.parse(str(g)) == g
    sigma = cv.Element.parse(load("sigma.elem"))
    assert sigma.order() == 2


def test_cones_and_witness():
    s = cv.Spec("roots=1; block[2]")
    t = cv.read_cone_tuple(load("v_pair.cone"))
    assert cv.is_disjoint(t)
    assert [u.norm() for u in t] == [1, 1]
    g = cv.Element.random(s, 4, 7)
    moved = cv.act_tuple(g, t)
    w = cv.tuple_witness(t, moved)
    assert w is not None
    assert cv.tuple_equals(cv.act_tuple(w, t), moved)


def test_centralizer_and_weyl():
    gens = cv.read_group(load("sigma.grp"))
    assert cv.group_order(gens) == 2
    rep = cv.centralizer_report(gens)
    assert rep["factor_types"] == ["regular"]
    assert cv.weyl_order(gens) == 1
    assert cv.weyl_order(cv.read_group(load("three_cycle.grp"))) == 2


def test_descending_link_homology():
    s = cv.Spec("roots=1; block[2]")
    a = cv.Basis.root(s).expand(0, 0).expand(0, 0).expand(2, 0)
    link = cv.descending_link(a, rational=True)
    assert link["vertices"] > 0
    assert len(link["betti_gf2"]) == len(link["f_vector"])

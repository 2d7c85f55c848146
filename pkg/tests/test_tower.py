import itertools

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import div_classes, rationals
from oracles import product_chern, product_integral, x1_tables
from towercalc.errors import BasisMismatch, NotACurveBlowup, PreconditionError
from towercalc.ring import intersect_dd, pair_dc, triple
from towercalc.tower import (
    BlowupStep, base_space, blowup_curve, chern, gamma, pullback_div, pullback_to,
    pushforward_curve, pushforward_div, strict_transform_hypersurface,
)


def _tower_levels(corpus):
    return [v for top, _ in corpus.values() for v in top.chain()[1:]]


# -- base spaces ----------------------------------------------------------------------

def test_p3_base():
    v = base_space("P3")
    assert v.c1 == v.div_class({"H": 4})
    assert v.c2 == v.curve_class({"HH": 6})
    assert v.parent is None and v.step is None and v.level == 0


def test_p2xp1_products():
    v = base_space("P2xP1")
    a, b = v.div("A"), v.div("B")
    assert intersect_dd(a, a).is_zero()
    assert intersect_dd(a, b) == v.curve("l")
    assert intersect_dd(b, b) == v.curve("m")
    assert v.c1 == v.div_class({"A": 2, "B": 3})


def test_p1x3_products():
    v = base_space("P1xP1xP1")
    d1, d2, d3 = (v.div(f"D{i}") for i in (1, 2, 3))
    assert triple(d1, d2, d3) == 1
    assert triple(d1, d1, d2) == 0
    assert base_space("P1x3").id == v.id


def test_unknown_base_rejected():
    with pytest.raises(PreconditionError):
        base_space("P4")


@pytest.mark.parametrize("kind, dims, to_sym", [
    # A = pullback of a point on P1 (h1), B = pullback of a line on P2 (h0)
    ("P2xP1", (2, 1), lambda hs: {"A": hs[1], "B": hs[0]}),
    ("P1x3", (1, 1, 1), lambda hs: {"D1": hs[0], "D2": hs[1], "D3": hs[2]}),
])
def test_base_ring_and_chern_against_kunneth(kind, dims, to_sym):
    """Every basis triple and c1, c2 agree with the product ring of the factors."""
    v = base_space(kind)
    hs, c1, c2 = product_chern(dims)
    sym = to_sym(hs)
    labels = list(v.div_basis)
    for x, y, z in itertools.product(labels, repeat=3):
        expect = product_integral(sym[x] * sym[y] * sym[z], hs, dims)
        assert triple(v.div(x), v.div(y), v.div(z)) == expect
    c1_sym = sum((v.c1.coefficient(lab) * sym[lab] for lab in labels), sp.Integer(0))
    assert sp.expand(c1_sym - c1) == 0
    # c2 is a curve class: compare its pairing with every divisor
    for lab in labels:
        assert pair_dc(v.div(lab), v.c2) == product_integral(sym[lab] * c2, hs, dims)


@pytest.mark.parametrize("kind", ["P3", "P2xP1", "P1x3"])
def test_c1_c2_is_24_on_bases(kind):
    v = base_space(kind)
    assert pair_dc(v.c1, v.c2) == 24


# -- blowups ---------------------------------------------------------------------------

def test_point_blowup_formulas():
    y = base_space("P3")
    x = y.blowup_point()
    assert x.c1 == x.div_class({"H": 4, "E1": -2})
    assert x.c2 == pullback_to(x, y.c2)
    assert intersect_dd(x.div("H"), x.div("E1")).is_zero()
    assert pair_dc(x.div("H"), x.curve("L1")) == 0
    assert triple(x.div("E1"), x.div("E1"), x.div("E1")) == 1


def test_line_blowup_c1_on_fiber():
    y = base_space("P3")
    x = y.blowup_curve(y.curve("HH"), 0)
    assert pair_dc(x.c1, x.curve("M1")) == 1


@pytest.mark.parametrize("d, g", [(1, 0), (2, 0), (3, 1), (4, 3)])
def test_single_curve_x1_table(d, g):
    y = base_space("P3")
    x = y.blowup_curve(y.curve_class({"HH": d}), g)
    assert intersect_dd(x.div("F1"), x.div("F1")) == x.curve_class({"HH": -d, "M1": 4 * d + 2 * g - 2})
    assert intersect_dd(x.div("H"), x.div("F1")) == x.curve_class({"M1": d})


@pytest.mark.parametrize("points, curves", [
    (0, [(1, 0)]), (2, [(2, 0), (3, 1)]), (3, []), (1, [(4, 3), (1, 0), (2, 1)]),
])
def test_x1_tables_match_closed_form(points, curves):
    v = base_space("P3")
    for _ in range(points):
        v = v.blowup_point()
    for d, g in curves:
        v = v.blowup_curve(v.curve_class({"HH": d}), g)
    dd, dc = x1_tables(points, curves)
    for i, j in itertools.product(range(v.rank), repeat=2):
        assert list(v.tables.dd[i][j]) == dd[i, j]
    assert [list(r) for r in v.tables.dc] == dc


def test_labels_and_ranks():
    v = base_space("P3").blowup_point().blowup_curve(
        base_space("P3").blowup_point().curve("HH"), 0).blowup_point()
    assert v.div_basis == ("H", "E1", "F1", "E2")
    assert v.curve_basis == ("HH", "L1", "M1", "L2")
    for w in v.chain():
        assert len(w.div_basis) == len(w.curve_basis) == w.level + 1


def test_ids_are_deterministic_and_distinct():
    a = base_space("P3").blowup_point()
    b = base_space("P3").blowup_point()
    c = base_space("P3").blowup_curve(base_space("P3").curve("HH"), 0)
    assert a.id == b.id != c.id
    assert a.parent_id == "P3"


def test_blowup_center_on_wrong_variety():
    y = base_space("P3")
    x = y.blowup_point()
    with pytest.raises(BasisMismatch, match="basis mismatch"):
        blowup_curve(x, y.curve("HH"), 0)


@pytest.mark.parametrize("genus", [-1, 1.0, True])
def test_bad_genus_rejected(genus):
    y = base_space("P3")
    with pytest.raises(PreconditionError):
        y.blowup_curve(y.curve("HH"), genus)


def test_zero_center_rejected():
    y = base_space("P3")
    with pytest.raises(PreconditionError):
        BlowupStep.curve(y.zero_curve(), 0)


# -- gamma ------------------------------------------------------------------------------

def test_gamma_six_lines(corpus):
    top, _ = corpus["coordinate_lines.tower"]
    y = top.at_level(4)
    c = y.curve_class({"HH": 1, "L2": -1, "L3": -1})
    assert gamma(y, c, 0) == -2


def test_gamma_vertical_line():
    x = base_space("P2xP1")
    for _ in range(3):
        x = x.blowup_curve(x.curve("m"), 0)
    assert gamma(x, x.curve("m"), 0) == 0


def test_gamma_second_line(corpus):
    top, _ = corpus["two_coordinate_lines.tower"]
    z = top.at_level(3)
    assert gamma(z, z.curve_class({"HH": 1, "L1": -1, "M1": -1}), 0) == -1


def test_gamma_wrong_space():
    with pytest.raises(BasisMismatch):
        gamma(base_space("P3"), base_space("P2xP1").curve("l"), 0)


# -- pullback / pushforward --------------------------------------------------------------

def test_pullback_and_pushforward_examples():
    y = base_space("P3")
    x = y.blowup_point()
    h = pullback_div(x, y.div("H"))
    assert h.coefficient("E1") == 0
    assert pullback_div(x, y.c1) - 2 * x.div("E1") == x.c1
    assert pushforward_div(x, x.div("E1")).is_zero()
    assert pushforward_div(x, x.div_class({"H": 1, "E1": -3})) == y.div("H")
    assert pushforward_curve(x, x.curve("L1")).is_zero()
    assert pushforward_curve(x, pullback_to(x, y.curve("HH"))) == y.curve("HH")


def test_pullback_needs_parent():
    y = base_space("P3")
    with pytest.raises(BasisMismatch):
        pullback_div(y, y.div("H"))
    x = y.blowup_point()
    with pytest.raises(BasisMismatch):
        pullback_div(x.blowup_point(), y.div("H"))


@given(st.data())
def test_pushforward_recovers_xi(corpus, data):
    levels = _tower_levels(corpus)
    v = data.draw(st.sampled_from(levels))
    xi = data.draw(div_classes(v.parent))
    alpha = data.draw(rationals())
    eta = pullback_div(v, xi) - alpha * v.div(v.div_basis[-1])
    assert pushforward_div(v, eta) == xi
    assert pushforward_div(v, pullback_div(v, xi)) == xi


def test_strict_transform_examples(corpus):
    top, _ = corpus["two_coordinate_lines.tower"]
    z, y = top.at_level(3), top.at_level(2)
    s = strict_transform_hypersurface(z, y.div_class({"H": 1, "E1": -1, "E2": -1}), 1)
    assert s == z.div_class({"H": 1, "E1": -1, "E2": -1, "F1": -1})
    with pytest.raises(PreconditionError):
        strict_transform_hypersurface(z, y.div("H"), 0)
    with pytest.raises(NotACurveBlowup, match="not a curve blowup"):
        strict_transform_hypersurface(y, y.parent.div("H"), 1)

    top, _ = corpus["p2p1_horizontal.tower"]
    s = strict_transform_hypersurface(top, top.parent.div("A"), 1)
    assert s.coefficient("F1") == s.coefficient("F2") == 0
    assert s.coefficient("F3") == -1


def test_chern_classes_on_named_levels(corpus):
    top, _ = corpus["two_coordinate_lines.tower"]
    y, z = top.at_level(2), top.at_level(3)
    assert chern(y)[0] == y.div_class({"H": 4, "E1": -2, "E2": -2})
    assert chern(z)[0] == z.div_class({"H": 4, "E1": -2, "E2": -2, "F1": -1})
    x = base_space("P3").blowup_point()
    assert chern(x)[1] == x.curve_class({"HH": 6})


# -- tower-wide invariants -------------------------------------------------------------

def test_projection_formula(corpus):
    for v in _tower_levels(corpus):
        p = v.parent
        basis = [p.div(lab) for lab in p.div_basis]
        for x, y, z in itertools.combinations_with_replacement(basis, 3):
            up = [pullback_div(v, w) for w in (x, y, z)]
            assert triple(*up) == triple(x, y, z)


def test_exceptional_divisor_kills_pulled_back_curves(corpus):
    for v in _tower_levels(corpus):
        ex = v.div(v.div_basis[-1])
        for lab in v.parent.curve_basis:
            assert pair_dc(ex, v.curve(lab)) == 0


def test_curve_blowup_identities(corpus):
    seen = 0
    for v in _tower_levels(corpus):
        if v.step.kind != "curve":
            continue
        seen += 1
        f = v.div(v.div_basis[-1])
        g = gamma(v.parent, v.step.center, v.step.genus)
        assert triple(f, f, f) == -g
        assert pushforward_curve(v, intersect_dd(f, f)) == -v.step.center
    assert seen > 10


def test_c1_c2_is_24_everywhere(corpus):
    """Birational invariant: a cross-check on the c2 update rule."""
    for top, _ in corpus.values():
        for v in top.chain():
            assert pair_dc(v.c1, v.c2) == 24


@given(st.lists(st.tuples(st.booleans(), st.integers(1, 3), st.integers(0, 2)), max_size=5),
       st.sampled_from(["P3", "P2xP1", "P1x3"]))
def test_random_towers_keep_invariants(steps, kind):
    v = base_space(kind)
    for is_point, d, g in steps:
        if is_point:
            v = v.blowup_point()
        else:
            # any nonzero class: the first curve label scaled, minus the newest one
            coeffs = {v.curve_basis[0]: d}
            if v.level:
                coeffs[v.curve_basis[-1]] = -1
            v = v.blowup_curve(v.curve_class(coeffs), g)
        assert v.rank == len(v.curve_basis) == v.parent.rank + 1
        assert pair_dc(v.c1, v.c2) == 24
        f = v.div(v.div_basis[-1])
        if v.step.kind == "curve":
            assert triple(f, f, f) == -gamma(v.parent, v.step.center, v.step.genus)
        else:
            assert triple(f, f, f) == 1

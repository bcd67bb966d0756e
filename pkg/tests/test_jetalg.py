from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cuspedge.jetalg import (DEGREE_CAP, DegreeCapExceeded, DegreeMismatch, Jet, JetError, JetMap,
                             jet_compose_with_model, jet_mul, monomials_of_degree, parse_jet)
from oracles import UVW, to_sympy, truncate_expr, x, y

raises = pytest.raises


def J(text, d=3):
    return parse_jet(text, d)


def test_jet_mul_examples():
    assert jet_mul(J("v"), J("v^2")) == J("v^3")
    assert jet_mul(J("v^3 - w^2"), J("v")) == J("-v*w^2")
    assert jet_mul(J("u + v", 2), J("u - v", 2)) == J("u^2 - v^2", 2)


def test_degree_mismatch_and_cap():
    with raises(DegreeMismatch):
        jet_mul(J("u", 2), J("u", 3))
    with raises(DegreeCapExceeded):
        Jet.zero(DEGREE_CAP + 1)
    with raises(DegreeCapExceeded):
        J("u").truncate(DEGREE_CAP + 1)


def test_invariants_of_stored_terms():
    j = Jet({(1, 0, 0): 1, (0, 0, 4): 5, (0, 1, 0): 0}, 3)
    assert j.terms == {(1, 0, 0): Fraction(1)}
    assert Jet({(1, 0, 0): Fraction(2, 4)}, 2).coeff((1, 0, 0)).denominator == 2


def test_compose_with_model_examples():
    def h(*comps):
        return jet_compose_with_model(JetMap.parse(comps, 6), 6)

    assert h("u", "w + u*v") == JetMap([parse_jet(s, 6, 2) for s in ("x", "y^3 + x*y^2")])
    assert h("v", "w + u^2") == JetMap([parse_jet(s, 6, 2) for s in ("y^2", "y^3 + x^2")])
    assert h("u", "v") == JetMap([parse_jet(s, 6, 2) for s in ("x", "y^2")])


def test_monomial_order_grlex():
    assert monomials_of_degree(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_parse_and_format():
    j = parse_jet("w + u*v + 1/2*u^3", 4)
    assert j.coeff((3, 0, 0)) == Fraction(1, 2)
    assert str(j) == "1/2*u^3 + u*v + w"
    for bad in ("u +", "import os", "u**0.5", "1.5*u", "u/v", "q + u"):
        with raises(JetError):
            parse_jet(bad, 3)


def test_json_round_trip():
    j = parse_jet("3/7*u*w - v^2 + 2", 5)
    data = j.to_json()
    assert data["deg"] == 5 and data["terms"][0] == {"m": [1, 0, 1], "c": "3/7"}
    assert Jet.from_json(data) == j
    g = JetMap.parse(("v + u^3", "w + u^2"), 4)
    assert JetMap.from_json(g.to_json()) == g


def test_exact_divide():
    h = J("v^3 - w^2", 6)
    assert (h * J("u + 1", 6)).exact_divide(h) == J("u + 1", 6)
    with raises(JetError):
        J("u*v^2", 6).exact_divide(h)


# ---------------------------------------------------------------------------
# property tests

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def jets(draw, deg=4, nvars=3):
    mons = [m for d in range(deg + 1) for m in monomials_of_degree(d, nvars)]
    chosen = draw(st.lists(st.sampled_from(mons), max_size=6, unique=True))
    return Jet({m: draw(coeff) for m in chosen}, deg, nvars)


@given(jets(), jets(), jets())
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(jets(deg=3), jets(deg=3))
def test_product_matches_sympy(p, q):
    expected = truncate_expr(to_sympy(p) * to_sympy(q), UVW, 3)
    assert sp.expand(to_sympy(p * q) - expected) == 0


@given(jets(deg=6), jets(deg=6))
def test_truncation_coherence(p, q):
    assert (p * q).truncate(3) == p.truncate(3) * q.truncate(3)


@given(jets(deg=3), jets(deg=3))
def test_compose_with_model_is_a_ring_morphism(p, q):
    lhs = jet_compose_with_model(JetMap([p * q]), 3)[0]
    hp = jet_compose_with_model(JetMap([p]), 3)[0]
    hq = jet_compose_with_model(JetMap([q]), 3)[0]
    assert lhs == hp * hq


@given(jets(deg=4))
def test_compose_matches_sympy_substitution(p):
    h = jet_compose_with_model(JetMap([p]), 4)[0]
    expected = truncate_expr(to_sympy(p).subs({UVW[1]: y ** 2, UVW[2]: y ** 3, UVW[0]: x},
                                              simultaneous=True), (x, y), 4)
    assert sp.expand(to_sympy(h, (x, y)) - expected) == 0


@given(jets(deg=4), jets(deg=2), jets(deg=2), jets(deg=2))
def test_general_compose_matches_sympy(p, a, b, c):
    subs = [s.with_degree(4) for s in (a, b, c)]
    out = p.compose(subs)
    expected = truncate_expr(to_sympy(p).subs(dict(zip(UVW, [to_sympy(s) for s in subs])),
                                              simultaneous=True), UVW, 4)
    assert sp.expand(to_sympy(out) - expected) == 0

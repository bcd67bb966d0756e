from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspedge.jetalg import Jet, JetMap, monomials_of_degree, parse_jet
from cuspedge.tangentspaces import (InsufficientTruncation, VectorField, full_space_dim,
                                    model_equation, tangency_check, tangent_space,
                                    theta_generators)
from oracles import r1x_window_rank, to_sympy

raises = pytest.raises


def G(*comps, d=6):
    return JetMap.parse(comps, d)


def test_theta_generators_are_tangent_with_expected_lambda():
    xi1, xi2, xi3 = theta_generators(6)
    h = model_equation(6)
    assert xi2.apply(h)[0] == h.scale(6)
    assert tangency_check(xi2) == (True, Jet.const(6, 6))
    assert tangency_check(xi3) == (True, Jet.zero(6))
    assert tangency_check(xi1) == (True, Jet.zero(6))


def test_non_tangent_field():
    zero = Jet.zero(6)
    ok, lam = tangency_check(VectorField(zero, Jet.var(0, 6), zero))
    assert not ok and lam is None


def test_module_closure():
    xi3 = theta_generators(6)[2]
    ok, lam = tangency_check(xi3.scale_by(Jet.var(1, 6)))
    assert ok and lam.is_zero()
    ok, lam = tangency_check(theta_generators(6)[1].scale_by(parse_jet("1 + u*w", 6)))
    assert ok and lam == parse_jet("6 + 6*u*w", 6)


@pytest.mark.parametrize("comp, reps", [
    ("v", ["u^2"]),
    ("w", ["u^2", "u*v", "v^2"]),
    ("u", []),
])
def test_window_examples(comp, reps):
    T = tangent_space(G(comp), "R1X", (2, 2))
    assert T.codim == len(reps)
    got = sorted(str(q[0]) for q in T.quotient_basis())
    assert got == sorted(reps)


def test_window_agrees_with_full_dimension_formula():
    T = tangent_space(G("u"), "R1X", (2, 3))
    assert T.ambient_dim == full_space_dim(1, (2, 3)) == 16
    assert T.is_full()


def test_insufficient_truncation():
    with raises(InsufficientTruncation):
        tangent_space(G("v", d=2), "R1X", (2, 3))
    with raises(ValueError):
        tangent_space(G("v"), "nope", (2, 3))
    with raises(ValueError):
        tangent_space(G("v"), "R1X", (3, 2))


def test_map_pullbacks():
    g = G("u", "w", d=3)
    assert tangent_space(g, "R1X", (1, 1)).dim == 0
    XA1 = tangent_space(g, "XA1", (1, 1))
    for comps in (("u", "0"), ("0", "u"), ("w", "0"), ("0", "w")):
        assert XA1.contains(G(*comps, d=3))
    assert not XA1.contains(G("v", "0", d=3))
    XA = tangent_space(g, "XA", (0, 1))
    assert XA.contains(G("1", "0", d=3))


def test_contact_group_contains_multiples_of_g():
    g = G("v + u^3", d=4)
    XK = tangent_space(g, "XK", (1, 4))
    assert XK.contains(G("u*v + u^4", d=4))


def test_basis_is_canonical():
    g = G("w + u*v", d=4)
    extra = [G("u^3", d=4), G("u^3 + u^2", d=4)]
    a = tangent_space(g, "R1X", (2, 4), extra_vectors=extra)
    b = tangent_space(g, "R1X", (2, 4), extra_vectors=list(reversed(extra)))
    assert a == b and a.to_json() == b.to_json()


coeff = st.fractions(-2, 2, max_denominator=3)


@st.composite
def function_jets(draw, deg=4):
    lin = draw(st.sampled_from(["u", "v", "w", "v + w", "w - v"]))
    mons = [m for d in range(2, deg + 1) for m in monomials_of_degree(d)]
    chosen = draw(st.lists(st.sampled_from(mons), max_size=4, unique=True))
    base = parse_jet(lin, deg)
    return JetMap([base + Jet({m: draw(coeff) for m in chosen}, deg)])


@given(function_jets())
def test_group_inclusions(g):
    w = (1, 4)
    spaces = {grp: tangent_space(g, grp, w) for grp in ("R1X", "R0X", "RX", "XK")}
    assert spaces["R1X"].issubset(spaces["R0X"])
    assert spaces["R0X"].issubset(spaces["RX"])
    assert spaces["RX"].issubset(spaces["XK"])


@given(function_jets(), function_jets())
def test_map_group_inclusions(g1, g2):
    g = JetMap([g1[0], g2[0]])
    w = (1, 3)
    r1, a1 = tangent_space(g, "R1X", w), tangent_space(g, "XA1", w)
    a0, a = tangent_space(g, "XA0", w), tangent_space(g, "XA", w)
    assert r1.issubset(a1) and a1.issubset(a0) and a0.issubset(a)


@settings(max_examples=15)
@given(function_jets(deg=3), st.integers(2, 3))
def test_r1x_dimension_matches_sympy_oracle(g, d):
    dim, ambient = r1x_window_rank(to_sympy(g[0]), d)
    T = tangent_space(g, "R1X", (d, d))
    assert (T.dim, T.ambient_dim) == (dim, ambient)

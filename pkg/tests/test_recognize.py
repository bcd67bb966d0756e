import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspedge.jetalg import JetMap
from cuspedge.normal_forms import TABLE1, TABLE1_SIGNS, TABLE2
from cuspedge.recognize import (EdgeCoefficients, NotACuspidalEdge, NotASubmersion,
                                classify_function_germ, classify_height_by_germ,
                                classify_height_direction, classify_map_germ,
                                classify_projection_by_germ, classify_projection_direction,
                                classify_quadratic_pair, edge_invariants, s_alpha_coefficients)
from cuspedge.sampling import change_germ, random_rx_change, random_target_change
from cuspedge.selftest import cross_oracle

raises = pytest.raises
SAMPLE = EdgeCoefficients(b20=1, b12=1, a20=1, b30=1, b22=0)


def G(*comps, d=7):
    return JetMap.parse(comps, d)


@pytest.mark.parametrize("comp, name", [
    ("v + u^3 + u^2*v", "FnVk(k=3, signs=('+', '+'))"),
    ("w + 2*u^2 + v^2", "FnWU2(+)"),
    ("u + v + w", "FnU"),
    ("w + u*v + u^3", "FnWUV(a=1)"),
])
def test_function_examples(comp, name):
    assert classify_function_germ(G(comp)).name == name


def test_function_errors():
    with raises(NotASubmersion):
        classify_function_germ(G("u^2 + v*w"))


@pytest.mark.parametrize("comps, family", [
    (("u", "w + u*v"), "Type2"),
    (("v + u^3", "w + u^2"), "Type5"),
    (("v + u^2 + u^4", "w + u*v + u^3"), "Type7"),
    (("u", "v + w"), "Type1"),
])
def test_map_examples(comps, family):
    assert classify_map_germ(G(*comps)).family == family


def test_type7_moduli_from_prenormal_shape():
    lab = classify_map_germ(G("v + u^2 + u^4", "w + u*v + u^3"))
    assert lab.param["a"] == 1 and lab.param["b"] == 1


def test_map_errors():
    with raises(NotASubmersion):
        classify_map_germ(G("u", "u + u^2"))


def test_edge_invariants_examples():
    inv = edge_invariants(EdgeCoefficients(a20=1, b20=1, a30=0, b30=1))
    assert inv.kappaSigmaSquared == 2 and inv.tauSigma == Fraction(1, 2)
    assert not edge_invariants(EdgeCoefficients(a20=0, b20=0)).tau_defined
    inv = edge_invariants(EdgeCoefficients(a20=1, b20=0, a30=0, b30=0, a40=0, b40=1))
    assert inv.tauSigma == 0 and inv.tauSigmaPrime == 1


def test_quadratic_pair():
    assert classify_quadratic_pair(EdgeCoefficients(b20=1)) == "hyperbolic"
    assert classify_quadratic_pair(EdgeCoefficients(b20=0, a20=-2)).startswith("inflection")
    assert classify_quadratic_pair(EdgeCoefficients(b20=0, a20=0)) == "degenerate-inflection"


def test_not_a_cuspidal_edge():
    with raises(NotACuspidalEdge):
        EdgeCoefficients(b03=0).check()


def test_height_examples():
    assert classify_height_direction(SAMPLE, (1, 0, 0)).family == "FnU"
    assert classify_height_direction(SAMPLE, (0, 0, 1)).name == "FnWU2(+)"
    lab = classify_height_direction(EdgeCoefficients(b20=0, b30=2, b12=1), (0, 0, 1))
    assert lab.family == "FnWUV" and lab.generic
    assert not classify_height_direction(EdgeCoefficients(b20=0, b30=0), (0, 0, 1)).generic
    E = EdgeCoefficients(a20=1, b20=1, a30=1, b30=1, a40=1, b40=0)
    assert classify_height_direction(E, (0, 1, -1)).param["k"] == 4


def test_projection_examples():
    assert classify_projection_direction(SAMPLE, (0, 1, 0)).family == "Type2"
    assert classify_projection_direction(SAMPLE, (-1, 1, 0)).family == "Type3"
    assert classify_projection_direction(SAMPLE, (1, 0, 0)).family == "Type5"
    assert classify_projection_direction(SAMPLE, (1, 1, 1)).family == "Type1"
    lab = classify_projection_direction(EdgeCoefficients(b20=0, a20=1, b30=1, b12=1), (1, 0, 0))
    assert lab.family == "Type7"


def test_s_alpha_is_consistent_with_the_germ():
    for v in ((0, 1, 0), (-1, 1, 0), (1, 0, 0), (2, 1, 0)):
        assert classify_projection_direction(SAMPLE, v).family == \
            classify_projection_by_germ(SAMPLE, v).family
    assert s_alpha_coefficients(SAMPLE, 0)


# ---------------------------------------------------------------------------
# properties

FORMS = TABLE1 + TABLE1_SIGNS


@settings(max_examples=30)
@given(st.sampled_from(FORMS), st.integers(0, 2 ** 32))
def test_function_label_invariant_under_edge_preserving_changes(nf, seed):
    rng = random.Random(seed)
    g = nf.germ(6)
    assert classify_function_germ(change_germ(g, random_rx_change(rng, 6))).key == \
        classify_function_germ(g).key


@settings(max_examples=20)
@given(st.sampled_from(TABLE2), st.integers(0, 2 ** 32))
def test_map_label_invariant_under_changes(nf, seed):
    rng = random.Random(seed)
    g = nf.germ(7)
    h = change_germ(g, random_rx_change(rng, 7), random_target_change(rng, 7))
    assert classify_map_germ(h).key == classify_map_germ(g).key


@settings(max_examples=20)
@given(st.integers(0, 2 ** 32), st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 5)]))
def test_direction_labels_ignore_scaling(seed, s):
    rng = random.Random(seed)
    E = EdgeCoefficients(**{k: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                            for k in ("a20", "a30", "b20", "b30", "b12", "b22")})
    v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(3))
    if not any(v):
        v = (0, 1, 0)
    sv = tuple(s * c for c in v)
    assert classify_projection_direction(E, v).key == classify_projection_direction(E, sv).key
    assert classify_height_by_germ(E, v).family == classify_height_by_germ(E, sv).family


def test_small_cross_oracle_run():
    res = cross_oracle(random.Random(7), 40)
    assert res.ok, res.failures[:3]
    assert res.trials == 40

from fractions import Fraction

import sympy as sp
from hypothesis import given, strategies as st

from cuspedge.jetalg import JetMap
from cuspedge.linalg import (Echelon, Subspace, column_layout, jetmap_to_vector, nullspace,
                             vector_to_jetmap)

vec_entries = st.dictionaries(st.integers(0, 9), st.fractions(-3, 3, max_denominator=3).filter(bool),
                              max_size=5)


def dense(vecs, n=10):
    return sp.Matrix([[sp.Rational(v.get(i, 0).numerator, v.get(i, 0).denominator)
                       if v.get(i, 0) else 0 for i in range(n)] for v in vecs])


def test_column_layout_is_graded():
    index_of, coord_of, start = column_layout(3, 1, 2)
    assert start == (0, 1, 4, 10)
    assert coord_of[1] == ((0, 0, 1), 0)
    assert coord_of[3] == ((1, 0, 0), 0)
    assert all(index_of[c] == i for i, c in enumerate(coord_of))


def test_vector_round_trip():
    g = JetMap.parse(("u^2 - 3*v*w", "1/2*w"), 3)
    assert vector_to_jetmap(jetmap_to_vector(g, 3), 3, 2, 3) == g


def test_echelon_membership():
    ech = Echelon()
    assert ech.insert({0: Fraction(2), 3: Fraction(1)})
    assert not ech.insert({0: Fraction(4), 3: Fraction(2)})
    assert ech.contains({0: Fraction(-1), 3: Fraction(-1, 2)})
    assert not ech.contains({3: Fraction(1)})
    assert len(ech) == 1


def test_nullspace_small():
    ker = nullspace([{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}])
    assert ker == [[Fraction(-1), Fraction(-1), Fraction(1)]]


def test_subspace_quotient_and_equality():
    T = Subspace.span([{1: Fraction(1)}, {2: Fraction(1), 3: Fraction(1)}], (1, 1), 1)
    assert T.dim == 2 and T.codim == 1
    assert T.quotient_columns() == [3]
    same = Subspace.span([{1: Fraction(2)}, {2: Fraction(-1), 3: Fraction(-1)}], (1, 1), 1)
    assert T == same and T.issubset(same)


@given(st.lists(vec_entries, max_size=7))
def test_rank_matches_sympy(vecs):
    ech = Echelon()
    ech.extend(vecs)
    expected = dense(vecs).rank() if vecs else 0
    assert len(ech) == expected


@given(st.lists(vec_entries, min_size=1, max_size=7))
def test_nullspace_is_kernel(vecs):
    ker = nullspace(vecs)
    assert len(ker) == len(vecs) - dense(vecs).rank()
    for c in ker:
        total = {}
        for ci, v in zip(c, vecs):
            for k, x in v.items():
                total[k] = total.get(k, 0) + ci * x
        assert not any(total.values())


@given(st.lists(vec_entries, max_size=6))
def test_rref_is_canonical(vecs):
    a, b = Echelon(), Echelon()
    a.extend(vecs)
    b.extend(reversed(vecs))
    assert a.rref() == b.rref()

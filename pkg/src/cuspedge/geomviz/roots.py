"""Real roots of univariate rational polynomials by Sturm sequences.

Polynomials are coefficient lists, lowest degree first, with exact
:class:`~fractions.Fraction` entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

TOLERANCE = 1e-12


def trim(p: Sequence) -> list:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def poly_rem(p, q) -> list:
    p = trim(p)
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    while len(p) >= len(q):
        c = p[-1] / q[-1]
        shift = len(p) - len(q)
        for i, x in enumerate(q):
            p[i + shift] -= c * x
        p = trim(p)
        if not p:
            break
    return p


def poly_divmod(p, q) -> tuple:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q):
        c = p[-1] / q[-1]
        shift = len(p) - len(q)
        quo[shift] = c
        for i, x in enumerate(q):
            p[i + shift] -= c * x
        p.pop()
        p = trim(p)
    return trim(quo), p


def poly_gcd(p, q) -> list:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, poly_rem(p, q)
    return [c / p[-1] for c in p] if p else p


def squarefree_part(p) -> list:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = trim(p)
    if len(p) <= 2:
        return p
    return poly_divmod(p, poly_gcd(p, derivative(p)))[0]


def sturm_sequence(p) -> list:
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has no Sturm sequence")
    seq = [p, derivative(p)]
    while seq[-1]:
        r = poly_rem(seq[-2], seq[-1])
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at_infinity(seq, positive: bool):
    out = []
    for s in seq:
        lead = s[-1]
        d = len(s) - 1
        out.append(lead if positive or d % 2 == 0 else -lead)
    return out


def cauchy_bound(p) -> Fraction:
    p = trim(p)
    return 1 + max((abs(c / p[-1]) for c in p[:-1]), default=Fraction(0))


def count_real_roots(p, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (whole line by default)."""
    p = squarefree_part(p)
    if len(p) <= 1:
        return 0
    seq = sturm_sequence(p)
    left = _signs_at_infinity(seq, False) if lo is None else [evaluate(s, Fraction(lo)) for s in seq]
    right = _signs_at_infinity(seq, True) if hi is None else [evaluate(s, Fraction(hi)) for s in seq]
    return _sign_changes(left) - _sign_changes(right)


def isolate_real_roots(p) -> list:
    """Disjoint rational intervals ``(lo, hi]`` each containing exactly one root."""
    p = squarefree_part(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    B = cauchy_bound(p)

    def count(lo, hi):
        vl = [evaluate(s, lo) for s in seq]
        vh = [evaluate(s, hi) for s in seq]
        return _sign_changes(vl) - _sign_changes(vh)

    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def real_roots(p, tol: float = TOLERANCE) -> list:
    """Distinct real roots as floats, refined by exact bisection to ``tol``."""
    p = squarefree_part(p)
    seq = sturm_sequence(p) if len(p) > 1 else []
    roots = []
    for lo, hi in isolate_real_roots(p):
        if evaluate(p, hi) == 0:
            roots.append(float(hi))
            continue
        while hi - lo > tol:
            mid = (lo + hi) / 2
            vm = evaluate(p, mid)
            if vm == 0:
                lo = hi = mid
                break
            # exactly one root in (lo, hi]; keep the half with a Sturm count of one
            vl = [evaluate(s, lo) for s in seq]
            vmid = [evaluate(s, mid) for s in seq]
            if _sign_changes(vl) - _sign_changes(vmid) == 1:
                hi = mid
            else:
                lo = mid
        roots.append(float((lo + hi) / 2))
    return roots

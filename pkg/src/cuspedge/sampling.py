"""Random exact samples: coordinate changes preserving the model edge, target
changes, edge coefficients and view directions.

All randomness flows through a caller-supplied :class:`random.Random`.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .jetalg import Jet, JetMap, as_jetmap, monomials_up_to, _fast_mul, _fastq, _from_fast, _to_fast
from .recognize import EdgeCoefficients, EDGE_FIELDS
from .tangentspaces import VectorField, theta_generators


def small_rational(rng: random.Random, num: int = 3, den: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def identity_change(deg: int) -> list:
    return [Jet.var(i, deg) for i in range(3)]


def compose_changes(first: list, second: list) -> list:
    """Coordinates of ``first o second``."""
    return [c.compose(second) for c in first]


def _fast_diff(d: dict, i: int) -> dict:
    out = {}
    for m, c in d.items():
        if m[i]:
            k = list(m)
            k[i] -= 1
            out[tuple(k)] = c * m[i]
    return out


def apply_field_flow(field: VectorField, deg: int, t: Fraction = Fraction(1)) -> list:
    """Time-``t`` flow of a positive-weight tangent field as a degree-``deg`` jet.

    With weights ``(1, 2, 3)`` on ``(u, v, w)`` every field used here raises
    weight, so the Lie series terminates modulo ``M^(deg+1)``.
    """
    coeffs = [_to_fast(c, deg) for c in field.coeffs]
    tq = _fastq(t.numerator, t.denominator)
    out = []
    for i in range(3):
        term = _to_fast(Jet.var(i, deg), deg)
        total = dict(term)
        n = 1
        coef = _fastq(1)
        while n <= 3 * deg + 3:
            new: dict = {}
            for j, c in enumerate(coeffs):
                if c:
                    for k, x in _fast_mul(c, _fast_diff(term, j), deg).items():
                        new[k] = new.get(k, 0) + x
            term = {k: x for k, x in new.items() if x}
            if not term:
                break
            coef = coef * tq / n
            for k, x in term.items():
                total[k] = total.get(k, 0) + coef * x
            n += 1
        out.append(_from_fast(total, deg, 3))
    return out


def random_theta_field(rng: random.Random, deg: int, terms: int = 3) -> VectorField:
    """Sparse random field with positive weight (nilpotent 1-jet)."""
    xi1, xi2, xi3 = theta_generators(deg)
    zero = Jet.zero(deg)
    parts = [zero, zero, zero]

    def add(fld, m, c):
        scaled = fld.scale_by(Jet.monomial(m, c, deg))
        for i in range(3):
            parts[i] = parts[i] + scaled.coeffs[i]

    add(xi3, (0, 0, 0), small_rational(rng))
    add(xi1, (0, 1, 0), small_rational(rng))
    add(xi1, (0, 0, 1), small_rational(rng))
    for _ in range(terms):
        which = rng.randrange(3)
        lo = 2 if which == 0 else 1
        m = rng.choice(monomials_up_to(3, 3, lo))
        add((xi1, xi2, xi3)[which], m, small_rational(rng))
    return VectorField(*parts)


def random_rx_change(rng: random.Random, deg: int) -> list:
    """Degree-``deg`` jet of a random diffeomorphism preserving ``v^3 = w^2``."""
    u, v, w = identity_change(deg)
    alpha = small_rational(rng, nonzero=True)
    eta1 = [u.scale(alpha) + v.scale(small_rational(rng)) + w.scale(small_rational(rng)), v, w]
    s = small_rational(rng, 2, 2, nonzero=True)
    sign = rng.choice((1, -1))
    eta2 = [u, v.scale(s * s), w.scale(sign * s ** 3)]
    psi = compose_changes(eta1, eta2)
    for _ in range(rng.randint(1, 2)):
        flow = apply_field_flow(random_theta_field(rng, deg), deg, Fraction(1, rng.randint(1, 3)))
        psi = compose_changes(psi, flow)
    return psi


def random_target_change(rng: random.Random, deg: int, p: int = 2) -> list:
    """Random invertible polynomial map of ``R^p`` fixing 0 (as 2-variable jets)."""
    while True:
        A = [[small_rational(rng) for _ in range(p)] for _ in range(p)]
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0] if p == 2 else A[0][0]
        if det:
            break
    comps = []
    for i in range(p):
        terms = {}
        for j in range(p):
            e = [0] * p
            e[j] = 1
            terms[tuple(e)] = A[i][j]
        for m in monomials_up_to(3, p, 2):
            if rng.random() < 0.3:
                terms[m] = small_rational(rng)
        comps.append(Jet(terms, deg, p))
    return comps


def change_germ(g, psi: list, phi: list | None = None) -> JetMap:
    g = as_jetmap(g)
    out = JetMap(c.compose(psi) for c in g)
    if phi is not None:
        out = JetMap(c.compose(list(out)) for c in phi)
    return out


# ---------------------------------------------------------------------------
# geometric samples


SPECIAL_KINDS = ("generic", "b20=0", "b12=0", "b20=b12=0", "tau=0", "Q3=0")


def random_edge(rng: random.Random, kind: str = "generic") -> EdgeCoefficients:
    vals = {k: small_rational(rng) for k in EDGE_FIELDS}
    vals["b03"] = small_rational(rng, nonzero=True)
    E = EdgeCoefficients(**vals)
    if kind in ("b20=0", "b20=b12=0"):
        E = E.replace(b20=0)
    if kind in ("b12=0", "b20=b12=0"):
        E = E.replace(b12=0)
    if kind == "tau=0":
        b20 = small_rational(rng, nonzero=True)
        a20 = small_rational(rng)
        t = small_rational(rng)
        # a20 b30 - b20 a30 = 0 with (a30, b30) proportional to (a20, b20)
        E = E.replace(b20=b20, a20=a20, a30=t * a20, b30=t * b20)
    if kind == "Q3=0":
        b20 = small_rational(rng, nonzero=True)
        E = E.replace(b20=b20)
        # solve 6 a20 b12^2 - 3 b12 b30 + 2 b22 b20 = 0 for b22
        b22 = (3 * E.b12 * E.b30 - 6 * E.a20 * E.b12 ** 2) / (2 * b20)
        E = E.replace(b22=b22)
    return E


def special_directions(E: EdgeCoefficients) -> list:
    dirs = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if E.b20:
        dirs.append((-E.b12 / E.b20, 1, 0))
    if E.b20 == 0 and E.b12 == 0 and E.b30:
        dirs.append((-2 * E.b22 / (3 * E.b30), 1, 0))
    if E.a20:
        dirs.append((0, -E.b20 / E.a20, 1))
    elif E.b20:
        dirs.append((0, 1, -E.a20 / E.b20))
    return dirs


def random_direction(rng: random.Random, E: EdgeCoefficients | None = None) -> tuple:
    if E is not None and rng.random() < 0.6:
        return tuple(Fraction(x) for x in rng.choice(special_directions(E)))
    while True:
        v = tuple(small_rational(rng) for _ in range(3))
        if rng.random() < 0.4:
            v = (v[0], v[1], Fraction(0))
        if any(v):
            return v

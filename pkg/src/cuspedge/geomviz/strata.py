"""Bifurcation strata of the Type 7 versal family in the ``(a1, a2)``-plane.

The family is ``h = (y^2 + a x^2 +- x^4, y^3 + x y^2 + b x^3 + c x^4 + d x^5
+ e x^6 + a2 x^2 + a1 x)``.  Every stratum is reported to second order as
``a1 = c2 a2^2``.  The lips/beaks, Type 3 and double point + fold strata can
also be followed numerically by solving their defining systems, which is
how the quadratic coefficients are checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..jetalg import Jet, parse_jet
from .roots import count_real_roots, real_roots

NAMES = ("x", "y", "a1", "a2")
DEN_TOL = 1e-10
DYADIC_A2 = tuple(2.0 ** -k for k in range(3, 11))


class InvalidModuli(ValueError):
    pass


@dataclass(frozen=True)
class Type7Moduli:
    a: Fraction
    b: Fraction
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)
    e: Fraction = Fraction(0)
    sign: int = 1

    def __post_init__(self):
        for k in "abcde":
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.sign not in (1, -1):
            raise InvalidModuli("sign must be +1 or -1")
        if self.a == 0 or self.b == 0:
            raise InvalidModuli("Type 7 moduli require a != 0 and b != 0")

    @property
    def delta(self) -> Fraction:
        return self.a ** 3 + (self.a - self.b) ** 2

    def to_json(self) -> dict:
        out = {k: str(getattr(self, k)) for k in "abcde"}
        out["sign"] = self.sign
        return out


@dataclass
class StratumCurve:
    """``a1 = c2 a2^2 + O(a2^3)``; ``c2`` is exact when the stratum has a closed form."""

    name: str
    c2: object
    branch_count: int
    validity: dict = field(default_factory=dict)
    branch: int = 0
    root: float | None = None

    def to_json(self) -> dict:
        c2 = str(self.c2) if isinstance(self.c2, Fraction) else self.c2
        return {"name": self.name, "c2": c2, "c2_float": float(self.c2),
                "branchCount": self.branch_count, "branch": self.branch,
                "root": self.root, "validity": dict(self.validity)}

    def a1(self, a2: float) -> float:
        return float(self.c2) * a2 * a2


@dataclass(frozen=True)
class DroppedBranch:
    name: str
    root: float
    reason: str


# ---------------------------------------------------------------------------
# polynomial data


def _q(x: Fraction) -> str:
    return f"({x.numerator}/{x.denominator})"


def type7_family(m: Type7Moduli) -> tuple:
    """``(h1, h2)`` as exact polynomials in ``(x, y, a1, a2)``."""
    s = "+" if m.sign > 0 else "-"
    h1 = parse_jet(f"y^2 + {_q(m.a)}*x^2 {s} x^4", 8, 4, NAMES)
    h2 = parse_jet(f"y^3 + x*y^2 + {_q(m.b)}*x^3 + {_q(m.c)}*x^4 + {_q(m.d)}*x^5"
                   f" + {_q(m.e)}*x^6 + a2*x^2 + a1*x", 8, 4, NAMES)
    return h1, h2


def singular_factor(m: Type7Moduli) -> Jet:
    """``S`` with ``det d(h1, h2)/d(x, y) = y S``, computed from the family."""
    h1, h2 = type7_family(m)
    det = h1.diff(0) * h2.diff(1) - h1.diff(1) * h2.diff(0)
    out = {}
    for mono, c in det.items():
        if mono[1] == 0:
            raise ArithmeticError("Jacobian determinant is not divisible by y")
        out[(mono[0], mono[1] - 1) + mono[2:]] = c
    return Jet(out, det.deg, 4)


class _Poly:
    """Float polynomial in ``(X, Y, A, t)`` obtained by weighted rescaling.

    A term ``x^i y^j a1^k a2^l`` of weighted order ``i + j + 2k + l >= w``
    becomes ``X^i Y^j A^k t^(i + j + 2k + l - w)`` after ``x = tX``,
    ``y = tY``, ``a1 = t^2 A``, ``a2 = t`` and division by ``t^w``.
    """

    def __init__(self, jet: Jet, weight: int):
        self.terms = []
        for (i, j, k, l), c in jet.items():
            p = i + j + 2 * k + l - weight
            if p < 0:
                raise ValueError("polynomial has lower weighted order than requested")
            self.terms.append((i, j, k, p, float(c)))

    def __call__(self, X, Y, A, t):
        return sum(c * X ** i * Y ** j * A ** k * t ** p for i, j, k, p, c in self.terms)


# ---------------------------------------------------------------------------
# closed-form second-order coefficients


def _kernel(a: float, b: float, t: float) -> float:
    return (3 * a * a + (3 * b - 4 * a) * t - t ** 3) * t / (a * a + 2 * (b - a) * t - a * t * t) ** 2


def swallowtail_poly(a: Fraction, b: Fraction) -> list:
    return [-a ** 3, Fraction(0), -3 * a * a, 2 * (a - b)]


def cusp_fold_poly(a: Fraction, b: Fraction) -> list:
    return [3 * a ** 5, -4 * a ** 3 * (a - b), 6 * a ** 4, -12 * a * a * (a - b),
            4 * (a - b) ** 2 - a ** 3]


def type2_fold_poly(a: Fraction, b: Fraction) -> list:
    dl = a ** 3 + (a - b) ** 2
    return [4 * a ** 3 - (a - b) ** 2, 3 * (a - b) ** 2, -3 * dl, dl]


def tacnode_poly(a: Fraction, b: Fraction) -> list:
    return [a ** 3 + (a - b) ** 2, 3 * a ** 3 - 3 * b * b + (a + b) ** 2,
            3 * a ** 3 + 4 * b * b - (a - b) ** 2, a ** 3 - (a + b) ** 2]


def _type2_fold_c2(a, b, lam, mu):
    num = 4 * (lam - 1) * ((3 * b - 3 * a) * lam ** 2 - (3 * a * mu + 3 * b - 2 * a) * lam + a)
    den = ((3 * b - 3 * a) * lam ** 2 - 3 * a * mu * lam - 3 * b + 3 * a) ** 2
    return num, den


def _tacnode_c2(a, b, lam, mu):
    num = (-a * lam ** 4 + 2 * b * lam ** 3 + (a * mu + 2 * a - 3 * b) * lam ** 2 - a * mu - a + b) * (lam - 1) ** 2
    den = ((b - a) * lam ** 3 - a * mu * lam ** 2 + (3 * a * mu + 3 * a - 3 * b) * lam
           - 2 * a * mu + 2 * b - 2 * a) ** 2
    return num, den


def _closed(name, num, den, extra=None):
    valid = {"denominator_nonzero": den != 0}
    valid.update(extra or {})
    c2 = Fraction(num) / den if den != 0 else None
    return StratumCurve(name, c2, 1 if c2 is not None and all(valid.values()) else 0, valid)


def _root_branches(name, poly, c2_of_root, dropped):
    roots = real_roots(poly) if len([c for c in poly if c]) > 1 else []
    curves = []
    for r in roots:
        val, valid, reason = c2_of_root(r)
        if reason:
            if dropped is not None:
                dropped.append(DroppedBranch(name, r, reason))
            continue
        curves.append(StratumCurve(name, val, 0, valid, root=r))
    for i, c in enumerate(curves):
        c.branch = i
        c.branch_count = len(curves)
    return curves


def type7_strata(m: Type7Moduli, dropped: list | None = None) -> list:
    """Second-order strata of the Type 7 family, one entry per real branch.

    Branches whose auxiliary square root is imaginary, or whose denominator
    vanishes, are appended to ``dropped`` with a reason when it is given.
    """
    a, b = m.a, m.b
    af, bf = float(a), float(b)
    delta = m.delta
    out = []
    D = 9 * a * a + 8 * a - 12 * b
    if D != 0:
        out.append(_closed("lips_beaks", -4, D))
    elif dropped is not None:
        dropped.append(DroppedBranch("lips_beaks", float("nan"), "9a^2+8a-12b = 0"))

    def kernel_root(r):
        den = af * af + 2 * (bf - af) * r - af * r * r
        if abs(den) < DEN_TOL:
            return None, {}, "vanishing denominator"
        return 4.0 / 9.0 * _kernel(af, bf, r), {"denominator_nonzero": True}, None

    if a != b:
        out += _root_branches("swallowtail", swallowtail_poly(a, b), kernel_root, dropped)
    elif dropped is not None:
        dropped.append(DroppedBranch("swallowtail", float("nan"), "a = b: leading coefficient of P vanishes"))

    if 3 * b - 2 * a != 0:
        out.append(_closed("type3", 1, 3 * b - 2 * a))
    elif dropped is not None:
        dropped.append(DroppedBranch("type3", float("nan"), "3b - 2a = 0"))

    out.append(StratumCurve("type5", Fraction(0), 1, {"denominator_nonzero": True}))

    exists = delta > 0 and a != b
    if exists:
        out.append(_closed("double_point_fold", -b, delta, {"delta_positive": True, "a_ne_b": True}))
    elif dropped is not None:
        dropped.append(DroppedBranch("double_point_fold", float("nan"),
                                     "requires a^3+(a-b)^2 > 0 and a != b"))

    if a != b:
        out.append(_closed("double_point_type2", -b, (a - b) ** 2))

    def t2f_root(lam):
        rad = af * (1 - lam * lam)
        if rad < 0:
            return None, {}, "mu = -sqrt(a(1-lambda^2)) is imaginary"
        num, den = _type2_fold_c2(af, bf, lam, -math.sqrt(rad))
        if abs(den) < DEN_TOL:
            return None, {}, "vanishing denominator"
        return num / den, {"mu_real": True, "denominator_nonzero": True}, None

    if a != b:
        out += _root_branches("type2_fold", type2_fold_poly(a, b), t2f_root, dropped)
    elif dropped is not None:
        dropped.append(DroppedBranch("type2_fold", float("nan"), "a = b: the parametrisation degenerates"))

    def tac_root(lam):
        rad = -af * (1 - lam * lam)
        if rad < 0:
            return None, {}, "mu = -sqrt(-a(1-lambda^2)) is imaginary"
        num, den = _tacnode_c2(af, bf, lam, -math.sqrt(rad))
        if abs(den) < DEN_TOL:
            return None, {}, "vanishing denominator"
        return num / den, {"mu_real": True, "denominator_nonzero": True}, None

    out += _root_branches("tacnode", tacnode_poly(a, b), tac_root, dropped)
    out += _root_branches("cusp_fold", cusp_fold_poly(a, b), kernel_root, dropped)
    return out


def branch_counts(a, b) -> dict:
    """Sturm counts of the real roots of ``P``, ``Q``, the tacnode cubic and the cusp + fold quartic."""
    a, b = Fraction(a), Fraction(b)
    return {"swallowtail": count_real_roots(swallowtail_poly(a, b)) if a != b else 0,
            "type2_fold": count_real_roots(type2_fold_poly(a, b)) if a != b else 0,
            "tacnode": count_real_roots(tacnode_poly(a, b)),
            "cusp_fold": count_real_roots(cusp_fold_poly(a, b))}


# ---------------------------------------------------------------------------
# numerical continuation of the defining systems


def damped_newton(F, z0, tol: float = 1e-10, maxiter: int = 50, h: float = 1e-7):
    """Damped Newton for ``F(z) = 0`` with a forward-difference Jacobian.

    Returns ``(z, converged)``; the step is halved until ``|F|`` decreases.
    """
    z = np.asarray(z0, dtype=float)
    fz = np.asarray(F(z), dtype=float)
    for _ in range(maxiter):
        nf = np.linalg.norm(fz)
        if nf < tol:
            return z, True
        J = np.empty((len(fz), len(z)))
        for j in range(len(z)):
            dz = np.zeros_like(z)
            dz[j] = h * max(1.0, abs(z[j]))
            J[:, j] = (np.asarray(F(z + dz)) - fz) / dz[j]
        try:
            step = np.linalg.solve(J, fz)
        except np.linalg.LinAlgError:
            return z, False
        lam = 1.0
        while lam > 1e-6:
            zn = z - lam * step
            fn = np.asarray(F(zn), dtype=float)
            if np.linalg.norm(fn) < nf:
                z, fz = zn, fn
                break
            lam /= 2
        else:
            return z, False
    return z, bool(np.linalg.norm(fz) < tol)


class DefiningSystem:
    """Scaled defining system ``F(z, t) = 0`` of a stratum, with the ``a1`` it predicts."""

    def __init__(self, name, equations, seed, a1_of, c2):
        self.name = name
        self.equations = equations
        self.seed = seed
        self.a1_of = a1_of
        self.c2 = c2

    def __call__(self, z, t):
        return [eq(z, t) for eq in self.equations]


def defining_system(m: Type7Moduli, name: str) -> DefiningSystem:
    a, b = m.a, m.b
    S = singular_factor(m)
    Sx, Sy = S.diff(0), S.diff(1)
    h1, h2 = type7_family(m)
    if name == "lips_beaks":
        D = 9 * a * a + 8 * a - 12 * b
        if D == 0:
            raise InvalidModuli("lips/beaks stratum needs 9a^2+8a-12b != 0")
        s0, s1, s2 = _Poly(S, 2), _Poly(Sx, 1), _Poly(Sy, 1)
        eqs = [lambda z, t, p=p: p(z[1], z[2], z[0], t) for p in (s0, s1, s2)]
        X = 4 / float(D)
        seed = [-4 / float(D), X, 1.5 * float(a) * X]
        return DefiningSystem(name, eqs, seed, lambda z, t: z[0] * t * t, Fraction(-4) / D)
    if name == "type3":
        q = 3 * b - 2 * a
        if q == 0:
            raise InvalidModuli("Type 3 stratum needs 3b - 2a != 0")
        s0, s1 = _Poly(S, 2), _Poly(Sx, 1)
        eqs = [lambda z, t: s0(z[1], 0.0, z[0], t), lambda z, t: s1(z[1], 0.0, z[0], t)]
        seed = [1 / float(q), -1 / float(q)]
        return DefiningSystem(name, eqs, seed, lambda z, t: z[0] * t * t, Fraction(1) / q)
    if name == "double_point_fold":
        delta = m.delta
        if not (delta > 0 and a != b):
            raise InvalidModuli("double point + fold stratum needs a^3+(a-b)^2 > 0 and a != b")
        s0, p1, p2 = _Poly(S, 2), _Poly(h1, 2), _Poly(h2, 3)
        bf, df = float(b), float(m.d)

        def A_of(z, t):
            return -bf * z[0] ** 2 - df * t * t * z[0] ** 4

        def e_s(z, t):
            return s0(z[1], z[2], A_of(z, t), t)

        def e_h1(z, t):
            A = A_of(z, t)
            return p1(z[1], z[2], A, t) - p1(z[0], 0.0, A, t)

        def e_h2(z, t):
            A = A_of(z, t)
            return p2(z[1], z[2], A, t) - p2(z[0], 0.0, A, t)

        seed = _double_point_seed([e_s, e_h1, e_h2], 1 / math.sqrt(float(delta)))
        return DefiningSystem(name, [e_s, e_h1, e_h2], seed,
                              lambda z, t: A_of(z, t) * t * t, -b / delta)
    raise ValueError(f"no defining system for stratum {name!r}")


def _double_point_seed(eqs, X1):
    """Solution of the ``t = 0`` system with ``y != 0`` closest to ``x1 = X1``."""
    best = None
    F = lambda z: [eq(z, 0.0) for eq in eqs]  # noqa: E731
    for X in np.linspace(-3, 3, 13) * X1:
        for Y in np.linspace(-3, 3, 13) * X1:
            z, ok = damped_newton(F, [X1, X, Y])
            if not ok or abs(z[2]) < 1e-6 or z[0] <= 0:
                continue
            score = abs(z[0] - X1)
            if best is None or score < best[0]:
                best = (score, z)
    if best is None:
        raise ArithmeticError("no solution of the leading double point + fold system")
    return list(best[1])


@dataclass
class DecayReport:
    name: str
    a2: tuple
    a1: tuple
    errors: tuple
    slope: float
    converged: bool


def residual_decay(m: Type7Moduli, name: str, a2_values=DYADIC_A2) -> DecayReport:
    """Distance between the solved ``a1`` and ``c2 a2^2`` along ``a2_values``.

    The system is solved at ``a2 = 0`` first and then continued through the
    values in increasing order; the reported slope is the least-squares fit
    of ``log |a1 - c2 a2^2|`` against ``log a2``.
    """
    sysm = defining_system(m, name)
    ts = sorted(a2_values)
    z, ok = damped_newton(lambda zz: sysm(zz, 0.0), sysm.seed)
    conv = ok
    a1s, errs = [], []
    c2 = float(sysm.c2)
    for t in ts:
        z, ok = damped_newton(lambda zz, t=t: sysm(zz, t), z)
        conv = conv and ok
        a1 = sysm.a1_of(z, t)
        a1s.append(a1)
        errs.append(abs(a1 - c2 * t * t))
    logs = [(math.log(t), math.log(e)) for t, e in zip(ts, errs) if e > 0]
    if len(logs) >= 2:
        slope = float(np.polyfit([p[0] for p in logs], [p[1] for p in logs], 1)[0])
    else:
        slope = math.inf
    return DecayReport(name, tuple(ts), tuple(a1s), tuple(errs), slope, conv)

"""Recognition of singularity types.

Function germs on the model edge are sorted into the function families
(``FnU``, ``FnVk``, ``FnWU2``, ``FnWUV``), map germs into ``Type1`` ...
``Type7``.  For a geometric cuspidal edge given by its prenormal-form
coefficients the height functions and orthogonal projections are recognized
both from closed-form coefficient conditions and, independently, by building
the germ on the model edge and running the germ recognizers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Mapping, Sequence

from .jetalg import Jet, JetError, JetMap, as_jetmap, format_fraction, jet_compose_with_model

GENERIC_DEGREE = 8
WUV_EXCLUDED = (Fraction(0), Fraction(-4, 27))


class NotASubmersion(ValueError):
    pass


class NotACuspidalEdge(ValueError):
    pass


def _sign(x) -> str:
    return "+" if x > 0 else "-"


@dataclass(frozen=True)
class SingularityLabel:
    family: str
    params: tuple = ()
    generic: bool = True
    certificate: tuple = ()

    @classmethod
    def make(cls, family, params=None, generic=True, **certificate):
        params = tuple(sorted((params or {}).items()))
        return cls(family, params, bool(generic), tuple(sorted(certificate.items())))

    @property
    def param(self) -> dict:
        return dict(self.params)

    @property
    def cert(self) -> dict:
        return dict(self.certificate)

    @property
    def key(self) -> tuple:
        """Family plus discrete/continuous parameters, ignoring the certificate."""
        return (self.family, self.params)

    @property
    def name(self) -> str:
        p = self.param
        if self.family == "FnVk":
            signs = p.get("signs")
            return f"FnVk(k={p.get('k')}, signs={signs})"
        if self.family == "FnWU2":
            return f"FnWU2({p.get('sign')})"
        if self.family == "FnWUV":
            a = p.get("a")
            return "FnWUV" if a is None else f"FnWUV(a={a})"
        if self.family == "Type7" and p:
            inner = ", ".join(f"{k}={v}" for k, v in sorted(p.items()))
            return f"Type7({inner})"
        return self.family

    def __str__(self):
        return self.name + ("" if self.generic else " [non-generic]")

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return format_fraction(v)
            if isinstance(v, tuple):
                return [enc(x) for x in v]
            return v

        return {
            "label": self.name,
            "family": self.family,
            "params": {k: enc(v) for k, v in self.params},
            "generic": self.generic,
            "certificate": {k: enc(v) for k, v in self.certificate},
        }


# ---------------------------------------------------------------------------
# geometric input


EDGE_FIELDS = ("a20", "a30", "a40", "b20", "b30", "b40", "b12", "b22", "b03", "b13")


@dataclass(frozen=True)
class EdgeCoefficients:
    """Coefficients of the prenormal form of a cuspidal edge.

    ``phi(x, y) = (x, a(x) + y^2/2, b1(x) + y^2 b2(x) + y^3 b3(x, y))`` with
    ``a = a20 x^2/2 + a30 x^3/6 + a40 x^4/24``, ``b1`` likewise with the
    ``b`` coefficients, ``b2 = b12 x/2 + b22 x^2/6`` and
    ``b3 = b03/6 + b13 x/6``.
    """

    a20: Fraction = Fraction(0)
    a30: Fraction = Fraction(0)
    a40: Fraction = Fraction(0)
    b20: Fraction = Fraction(0)
    b30: Fraction = Fraction(0)
    b40: Fraction = Fraction(0)
    b12: Fraction = Fraction(0)
    b22: Fraction = Fraction(0)
    b03: Fraction = Fraction(1)
    b13: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))

    def check(self):
        if self.b03 == 0:
            raise NotACuspidalEdge("b03 = 0: the surface is not a cuspidal edge")
        return self

    @classmethod
    def from_json(cls, data: Mapping) -> "EdgeCoefficients":
        unknown = set(data) - set(EDGE_FIELDS)
        if unknown:
            raise ValueError(f"unknown edge coefficients {sorted(unknown)}")
        return cls(**{k: Fraction(str(v)) for k, v in data.items()})

    def to_json(self) -> dict:
        return {k: format_fraction(getattr(self, k)) for k in EDGE_FIELDS}

    def replace(self, **kw) -> "EdgeCoefficients":
        d = {k: getattr(self, k) for k in EDGE_FIELDS}
        d.update(kw)
        return EdgeCoefficients(**d)

    # polynomial pieces (O-terms dropped)
    def a_poly(self):
        return [0, 0, self.a20 / 2, self.a30 / 6, self.a40 / 24]

    def b1_poly(self):
        return [0, 0, self.b20 / 2, self.b30 / 6, self.b40 / 24]

    def b2_poly(self):
        return [0, self.b12 / 2, self.b22 / 6]

    def parametrization(self, x: float, y: float):
        """Numerical value of ``phi(x, y)``."""
        ev = lambda cs, t: sum(float(c) * t ** i for i, c in enumerate(cs))
        b3 = float(self.b03) / 6 + float(self.b13) * x / 6
        return (x, ev(self.a_poly(), x) + y * y / 2,
                ev(self.b1_poly(), x) + y * y * ev(self.b2_poly(), x) + y ** 3 * b3)


def edge_to_model_map(E: EdgeCoefficients, deg: int = GENERIC_DEGREE) -> JetMap:
    """Polynomial map ``K`` of 3-space with ``K(x, y^2, y^3) = phi(x, y)``.

    ``K(u, v, w) = (u, a(u) + v/2, b1(u) + v b2(u) + w (b03 + b13 u)/6)``.
    It is a local diffeomorphism (``b03 != 0``), so any germ ``G`` on the
    surface is represented on the model edge by ``G o K``.
    """
    u = Jet.var(0, deg)
    v = Jet.var(1, deg)
    w = Jet.var(2, deg)

    def poly(cs):
        out = Jet.zero(deg)
        p = Jet.const(1, deg)
        for c in cs:
            if c:
                out = out + p.scale(c)
            p = p * u
        return out

    K2 = poly(E.a_poly()) + v.scale(Fraction(1, 2))
    K3 = poly(E.b1_poly()) + v * poly(E.b2_poly()) + w * (Jet.const(E.b03, deg) + u.scale(E.b13)).scale(
        Fraction(1, 6))
    return JetMap([u, K2, K3])


def _direction(v) -> tuple:
    v = tuple(Fraction(x) for x in v)
    if len(v) != 3 or not any(v):
        raise ValueError("a direction is a nonzero triple")
    return v


def _combine(coeffs, K: JetMap) -> Jet:
    out = Jet.zero(K.deg)
    for c, comp in zip(coeffs, K):
        if c:
            out = out + comp.scale(c)
    return out


def orthogonal_frame(v) -> tuple:
    """Two rational vectors spanning the plane orthogonal to ``v``."""
    v = _direction(v)
    axis = min(range(3), key=lambda i: (abs(v[i]), i))
    a = [Fraction(0)] * 3
    a[axis] = Fraction(1)
    cross = lambda p, q: (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])
    e1 = cross(v, a)
    e2 = cross(v, e1)
    return e1, e2


def height_germ(E: EdgeCoefficients, v, deg: int = GENERIC_DEGREE) -> Jet:
    """The height function ``phi·v`` written as a germ on the model edge."""
    return _combine(_direction(v), edge_to_model_map(E, deg))


def projection_germ(E: EdgeCoefficients, v, deg: int = GENERIC_DEGREE) -> JetMap:
    """The orthogonal projection along ``v`` written as a map germ on the model edge."""
    K = edge_to_model_map(E, deg)
    e1, e2 = orthogonal_frame(v)
    return JetMap([_combine(e1, K), _combine(e2, K)])


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class Invariants:
    kappaSigmaSquared: Fraction
    tauSigma: Fraction | None
    tauSigmaPrime: Fraction | None
    kappaS: Fraction
    kappaN: Fraction
    kappaC: Fraction
    kappaT: Fraction
    kappaI: Fraction

    @property
    def tau_defined(self) -> bool:
        return self.tauSigma is not None

    @property
    def kappaSigma(self) -> float:
        return float(self.kappaSigmaSquared) ** 0.5

    def to_json(self):
        enc = lambda x: None if x is None else format_fraction(x)
        return {f.name: enc(getattr(self, f.name)) for f in fields(self)}


def edge_invariants(E: EdgeCoefficients) -> Invariants:
    k2 = E.a20 ** 2 + E.b20 ** 2
    if k2:
        num = E.a20 * E.b30 - E.b20 * E.a30
        tau = num / k2
        taup = (E.a20 * E.b40 - E.b20 * E.a40
                - 2 / k2 * num * (E.a20 * E.a30 + E.b20 * E.b30)) / k2
    else:
        tau = taup = None
    return Invariants(k2, tau, taup, E.a20, E.b20, E.b03, E.b12, E.b30)


def classify_quadratic_pair(E: EdgeCoefficients) -> str:
    if E.b20 != 0:
        return "hyperbolic"
    if E.a20 != 0:
        return f"inflection({_sign(E.a20)})"
    return "degenerate-inflection"


# ---------------------------------------------------------------------------
# function germs


def _linear_part(g: Jet):
    return tuple(g.coeff(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def line_restriction(g: Jet) -> list:
    """Coefficients of ``g(u, 0, 0)`` by degree."""
    return [g.coeff((i, 0, 0)) for i in range(g.deg + 1)]


def _order(cs) -> int | None:
    for i, c in enumerate(cs):
        if i and c:
            return i
    return None


def wuv_modulus(g: Jet) -> Fraction | None:
    """The modulus of ``w + uv + a u^3`` read off the weighted-degree-3 part.

    With weights ``(1, 2, 3)`` for ``(u, v, w)`` the leading part of such a
    germ is ``c w + lam uv + a' u^3`` and ``a' c^2 / lam^3`` is unchanged by
    the weight-preserving coordinate changes that fix the model edge.
    """
    c = g.coeff((0, 0, 1))
    lam = g.coeff((1, 1, 0))
    ap = g.coeff((3, 0, 0))
    if not lam or not c:
        return None
    return ap * c * c / lam ** 3


def classify_function_germ(g) -> SingularityLabel:
    g = as_jetmap(g)
    if len(g) != 1:
        raise ValueError("a function germ has one component")
    g = g[0]
    lu, lv, lw = _linear_part(g)
    if not (lu or lv or lw):
        raise NotASubmersion("zero 1-jet: not a submersion")
    if lu:
        return SingularityLabel.make("FnU", {}, True, linear=(lu, lv, lw))
    line = line_restriction(g)
    k = _order(line)
    if lv:
        if k is None or k >= 5:
            return SingularityLabel.make("FnVk", {"k": k}, False, lineOrder=k,
                                         reason="contact with the singular line of order >= 5")
        lead = line[k]
        s = _sign(lv) + _sign(lead)
        base = "+"
        second = "+" if k % 2 == 1 else ("+" if s in ("++", "--") else "-")
        return SingularityLabel.make("FnVk", {"k": k, "signs": (base, second)}, True,
                                     lineOrder=k, vCoeff=lv, lineCoeff=lead)
    if k == 2:
        return SingularityLabel.make("FnWU2", {"sign": _sign(line[2])}, True, lineOrder=2)
    lam = g.coeff((1, 1, 0))
    if not lam:
        return SingularityLabel.make("NonGeneric", {}, False, lineOrder=k,
                                     reason="uv coefficient vanishes", branch="FnWUV")
    a = wuv_modulus(g)
    return SingularityLabel.make("FnWUV", {"a": a}, a not in WUV_EXCLUDED, lineOrder=k, uvCoeff=lam)


# ---------------------------------------------------------------------------
# map germs


def _linear_rows(g: JetMap):
    return [_linear_part(c) for c in g]


def cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def jacobian_factor(h: JetMap) -> Jet:
    """``S`` with ``det dh = y·S`` for ``h = g(x, y^2, y^3)``."""
    h1, h2 = h
    det = h1.diff(0) * h2.diff(1) - h1.diff(1) * h2.diff(0)
    out = {}
    for (i, j), c in det.items():
        if j == 0:
            raise JetError("Jacobian determinant is not divisible by y")
        out[(i, j - 1)] = c
    return Jet(out, det.deg, 2)


def series_sqrt1(r: list, n: int) -> list:
    """Coefficients of ``sqrt(1 + r(x))`` up to ``x^n`` (``r`` has no constant term)."""
    s = [Fraction(0)] * (n + 1)
    s[0] = Fraction(1)
    target = [Fraction(1)] + [Fraction(r[i]) if i < len(r) else Fraction(0) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        acc = sum(s[j] * s[i - j] for j in range(1, i))
        s[i] = (target[i] - acc) / 2
    return s


def series_mul(p, q, n):
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p[:n + 1]):
        if a:
            for j, b in enumerate(q[:n + 1 - i]):
                out[i + j] += a * b
    return out


def series_compose(p, q, n):
    """``p(q(x))`` with ``q(0) = 0``."""
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for i, a in enumerate(p[:n + 1]):
        if i:
            power = series_mul(power, q, n)
        if a:
            out = [x + a * y for x, y in zip(out, power)]
    return out


def series_revert(s, n):
    """Inverse series of ``s(x) = x + ...``."""
    x = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(n):
        comp = series_compose(s, x, n)
        x = [a - (b - (1 if i == 1 else 0)) for i, (a, b) in enumerate(zip(x, comp))]
    return x


def cusp_order(gamma1: list, gamma2: list, n: int) -> int | None:
    """First odd exponent of the plane curve after putting it in the form ``(s^2, Y(s))``.

    Returns 3 for an ordinary cusp, 5 for a ramphoid cusp, and ``None`` when
    the quadratic part vanishes or no odd term appears up to order ``n``.
    """
    g1 = [Fraction(c) for c in gamma1] + [Fraction(0)] * (n + 3)
    g2 = [Fraction(c) for c in gamma2] + [Fraction(0)] * (n + 3)
    if g1[1] or g2[1]:
        raise ValueError("curve is not singular at the origin")
    if not g1[2]:
        if not g2[2]:
            return None
        g1, g2 = g2, g1
    X = [c / g1[2] for c in g1]
    Y = [b - g2[2] / g1[2] * a for a, b in zip(g1, g2)]
    r = [Fraction(0)] + X[3:n + 3]
    root = series_sqrt1(r, n)
    s_of_x = [Fraction(0)] + root[:n]
    x_of_s = series_revert(s_of_x, n)
    Ys = series_compose(Y[:n + 1], x_of_s, n)
    for i in range(3, n + 1, 2):
        if Ys[i]:
            return i
    return None


def type7_prenormal_moduli(g: JetMap) -> dict | None:
    """``(a, b, c, d, e, sign)`` when ``g`` is literally a ``g_7`` normal form."""
    g1, g2 = g
    t1 = g1.terms
    t2 = g2.terms
    if t1.get((0, 1, 0)) != 1 or set(t1) - {(0, 1, 0), (2, 0, 0), (4, 0, 0)}:
        return None
    if t1.get((4, 0, 0)) not in (1, -1):
        return None
    if t2.get((0, 0, 1)) != 1 or t2.get((1, 1, 0)) != 1:
        return None
    if set(t2) - {(0, 0, 1), (1, 1, 0), (3, 0, 0), (4, 0, 0), (5, 0, 0), (6, 0, 0)}:
        return None
    f = lambda t, m: t.get(m, Fraction(0))
    return {"a": f(t1, (2, 0, 0)), "sign": int(t1[(4, 0, 0)]), "b": f(t2, (3, 0, 0)),
            "c": f(t2, (4, 0, 0)), "d": f(t2, (5, 0, 0)), "e": f(t2, (6, 0, 0))}


def classify_map_germ(g, certify_type7: bool = True) -> SingularityLabel:
    g = as_jetmap(g)
    if len(g) != 2:
        raise ValueError("map germs here have two components")
    r1, r2 = _linear_rows(g)
    K = cross(r1, r2)
    if not any(K):
        raise NotASubmersion("differential has rank < 2")
    if K[2]:
        return SingularityLabel.make("Type1", {}, True, kernel=K)
    h = jet_compose_with_model(g, g.deg)
    S = jacobian_factor(h)
    reliable = g.deg - 2
    Sx, Sy = S.coeff((1, 0)), S.coeff((0, 1))
    if K[1]:
        if not (Sx or Sy):
            return SingularityLabel.make("NonGeneric", {}, False, kernel=K,
                                         reason="singular set of the projection is singular",
                                         branch="Type2-4")
        line = [S.coeff((i, 0)) for i in range(reliable + 1)]
        c = next((i for i, x in enumerate(line) if x), None)
        if c in (1, 2, 3):
            return SingularityLabel.make(f"Type{c + 1}", {}, True, kernel=K, contact=c)
        return SingularityLabel.make("NonGeneric", {}, False, kernel=K, contact=c,
                                     reason="contact of order >= 4 with the singular line",
                                     branch="Type2-4")
    # kernel along the tangential direction
    if not (Sx or Sy):
        mod = type7_prenormal_moduli(g)
        if mod is None:
            return SingularityLabel.make("Type7", {}, False, kernel=K,
                                         reason="moduli not read outside prenormal shape")
        generic = bool(mod["a"]) and bool(mod["b"])
        cert = {}
        if generic and certify_type7:
            from .transversal import is_determined
            c6 = is_determined(g, 6, "XA1")
            generic = bool(c6.holds)
            cert["sixDetermined"] = c6.holds
        return SingularityLabel.make("Type7", mod, generic, kernel=K, **cert)
    n = g.deg
    gamma1 = [h[0].coeff((i, 0)) for i in range(n + 1)]
    gamma2 = [h[1].coeff((i, 0)) for i in range(n + 1)]
    order = cusp_order(gamma1, gamma2, n - 2)
    if order == 3:
        return SingularityLabel.make("Type5", {}, True, kernel=K, cusp=3)
    if order == 5:
        return SingularityLabel.make("Type6", {}, True, kernel=K, cusp=5)
    return SingularityLabel.make("NonGeneric", {}, False, kernel=K, cusp=order,
                                 reason="image of the singular line is not an A2 or A4 cusp",
                                 branch="Type5-6")


# ---------------------------------------------------------------------------
# heights and projections from coefficients


def classify_height_direction(E: EdgeCoefficients, v) -> SingularityLabel:
    v1, v2, v3 = _direction(v)
    if v1:
        return SingularityLabel.make("FnU", {}, True, contact="regular")
    if v2:
        c2 = v2 * E.a20 + v3 * E.b20
        c3 = v2 * E.a30 + v3 * E.b30
        c4 = v2 * E.a40 + v3 * E.b40
        for k, c in ((2, c2), (3, c3), (4, c4)):
            if c:
                second = "+" if k % 2 == 1 else ("+" if v2 * c > 0 else "-")
                return SingularityLabel.make("FnVk", {"k": k, "signs": ("+", second)}, True,
                                             contact=f"A{k - 1}")
        return SingularityLabel.make("FnVk", {"k": None}, False, contact="A>=4")
    if E.b20:
        return SingularityLabel.make("FnWU2", {"sign": _sign(v3 * E.b20)}, True, contact="A3")
    if E.b30:
        if not E.b12:
            return SingularityLabel.make("NonGeneric", {}, False, contact="D4-degenerate",
                                         reason="b12 = 0", branch="FnWUV")
        a = E.b30 * E.b03 ** 2 / (27 * E.b12 ** 3)
        return SingularityLabel.make("FnWUV", {"a": a}, a not in WUV_EXCLUDED, contact="D4")
    return SingularityLabel.make("NonGeneric", {}, False, contact="degenerate",
                                 reason="b20 = b30 = 0", branch="FnWUV")


def s_alpha_coefficients(E: EdgeCoefficients, alpha) -> dict:
    """Low-order coefficients of ``S`` for the projection along ``(alpha, 1, 0)``.

    Keys are exponent pairs ``(i, j)`` of ``x^i y^j``.
    """
    al = Fraction(alpha)
    return {
        (1, 0): al * E.b20 + E.b12,
        (0, 1): E.b03 / 2,
        (2, 0): al * E.b30 / 2 + E.b22 / 3 - al * E.a20 * E.b12,
        (1, 1): -(al * E.a20 * E.b03 - E.b13) / 2,
        (0, 2): al * E.b12 / 2,
        (3, 0): -al * (2 * E.a20 * E.b22 + 3 * E.a30 * E.b12 - E.b40) / 6,
        (2, 1): -al * (2 * E.a20 * E.b13 + E.a30 * E.b03) / 4,
        (1, 2): al * E.b22 / 3,
        (0, 3): al * E.b13 / 6,
    }


def classify_projection_direction(E: EdgeCoefficients, v) -> SingularityLabel:
    v1, v2, v3 = _direction(v)
    if v3:
        return SingularityLabel.make("Type1", {}, True, branch="transverse to cone")
    if v2:
        al = v1 / v2
        S = s_alpha_coefficients(E, al)
        if S[(1, 0)]:
            return SingularityLabel.make("Type2", {}, True, alpha=al)
        if E.b20 == 0 and E.b12 == 0 and E.b30 == 0:
            return SingularityLabel.make("NonGeneric", {}, False, alpha=al,
                                         reason="b20 = b12 = b30 = 0", branch="Type3-4")
        if S[(2, 0)]:
            return SingularityLabel.make("Type3", {}, True, alpha=al)
        if S[(3, 0)]:
            return SingularityLabel.make("Type4", {}, True, alpha=al)
        return SingularityLabel.make("NonGeneric", {}, False, alpha=al,
                                     reason="contact of order >= 4", branch="Type4")
    inv = edge_invariants(E)
    if E.b20:
        if inv.tauSigma:
            return SingularityLabel.make("Type5", {}, True, tau=inv.tauSigma)
        return SingularityLabel.make("Type6", {}, False, tau=Fraction(0),
                                     reason="ramphoid cusp only generically")
    return SingularityLabel.make("Type7", {}, False, reason="kappa_n = 0; moduli not computed")


def classify_height_by_germ(E: EdgeCoefficients, v, deg: int = GENERIC_DEGREE) -> SingularityLabel:
    return classify_function_germ(height_germ(E, v, deg))


def classify_projection_by_germ(E: EdgeCoefficients, v, deg: int = GENERIC_DEGREE) -> SingularityLabel:
    return classify_map_germ(projection_germ(E, v, deg), certify_type7=False)


def labels_agree(a: SingularityLabel, b: SingularityLabel) -> bool:
    return a.family == b.family


def read_edge_file(path) -> EdgeCoefficients:
    with open(path) as fh:
        return EdgeCoefficients.from_json(json.load(fh))

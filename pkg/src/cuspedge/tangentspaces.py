"""Vector fields tangent to the model cuspidal edge and orbit tangent spaces.

The model edge is ``X = {v^3 - w^2 = 0}``.  Its tangent fields are generated
by ``xi1 = d/du``, ``xi2 = 2v d/dv + 3w d/dw`` and ``xi3 = 2w d/dv + 3v^2 d/dw``.

Tangent spaces are returned as :class:`~cuspedge.linalg.Subspace` objects
inside a degree window ``[dmin, dmax]``.  The groups are

``R1X``  ``Theta_1(X)·g`` with ``Theta_1 = M^2 xi1 + M (xi2, xi3)``;
``RX``   ``Theta(X)·g`` (all of ``E·xi_i``);
``R0X``  fields vanishing at the origin, ``M xi1 + E (xi2, xi3)``;
``XA1``  ``R1X`` plus ``g^*(M_2)·{e_i}``;
``XA``   ``RX`` plus ``g^*(E_2)·{e_i}`` (the extended tangent space);
``XA0``  ``R0X`` plus ``g^*(M_2)·{e_i}``;
``XK``   ``RX`` plus ``<g_1, ..., g_p>·E(3, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .jetalg import DEGREE_CAP, Jet, JetError, JetMap, as_jetmap, monomials_up_to, \
    monomials_of_degree
from .linalg import Subspace, jetmap_to_vector

GROUPS = ("R1X", "RX", "R0X", "XA1", "XA", "XA0", "XK")


class InsufficientTruncation(JetError):
    pass


@dataclass(frozen=True)
class VectorField:
    coeffU: Jet
    coeffV: Jet
    coeffW: Jet

    @property
    def coeffs(self):
        return (self.coeffU, self.coeffV, self.coeffW)

    @property
    def deg(self):
        return self.coeffU.deg

    def apply(self, g) -> JetMap:
        """Derivative of each component of ``g`` along the field."""
        g = as_jetmap(g)
        out = []
        for comp in g:
            acc = Jet.zero(comp.deg, 3)
            for i, c in enumerate(self.coeffs):
                if c:
                    acc = acc + c.truncate(comp.deg) * comp.diff(i)
            out.append(acc)
        return JetMap(out)

    def scale_by(self, m: Jet) -> "VectorField":
        return VectorField(*(m * c for c in self.coeffs))

    def truncate(self, d: int) -> "VectorField":
        return VectorField(*(c.truncate(d) for c in self.coeffs))


def model_equation(deg: int = DEGREE_CAP) -> Jet:
    return Jet({(0, 3, 0): 1, (0, 0, 2): -1}, deg)


def theta_generators(deg: int = DEGREE_CAP) -> tuple:
    var = lambda i: Jet.var(i, deg)
    zero = Jet.zero(deg)
    xi1 = VectorField(Jet.const(1, deg), zero, zero)
    xi2 = VectorField(zero, var(1).scale(2), var(2).scale(3))
    xi3 = VectorField(zero, var(2).scale(2), (var(1) * var(1)).scale(3))
    return (xi1, xi2, xi3)


def tangency_check(field: VectorField):
    """Return ``(True, lam)`` when ``field(h) = lam·h`` for ``h = v^3 - w^2``.

    The division is carried out as polynomial division by ``h``; a nonzero
    remainder means the field is not tangent.  Returns ``(False, None)``.
    """
    h = model_equation(field.deg)
    image = field.apply(h)[0]
    try:
        lam = image.exact_divide(h)
    except JetError:
        return False, None
    return True, lam


def _base_images(g: JetMap):
    return [xi.apply(g) for xi in theta_generators(g.deg)]


def _multiples(images, mindeg, dmax):
    """All ``m·image`` for monomials ``m`` with ``deg m >= mindeg`` (as vectors)."""
    out = []
    for img, lo in zip(images, mindeg):
        order = img.order()
        if order is None:
            continue
        top = dmax - order
        for m in monomials_up_to(max(top, -1), 3, lo) if top >= lo else ():
            prod = JetMap(c.mul_monomial(m, 1, dmax) for c in img)
            vec = jetmap_to_vector(prod, dmax)
            if vec:
                out.append(vec)
    return out


def _pullback_columns(g: JetMap, dmax: int, include_constants: bool):
    """Vectors ``g^*(m)·e_i`` for target monomials ``m`` (degree >= 1 unless constants)."""
    p = len(g)
    g = g.truncate(dmax) if g.deg != dmax else g
    zero = Jet.zero(dmax)
    out = []
    lo = 0 if include_constants else 1
    orders = [c.order() for c in g]
    if any(o == 0 for o in orders):
        raise JetError("target pullbacks need a germ vanishing at the origin")
    for t in monomials_up_to(dmax, p, lo):
        val = Jet.const(1, dmax)
        for comp, e in zip(g, t):
            for _ in range(e):
                val = val * comp
                if val.is_zero():
                    break
        if val.is_zero():
            continue
        for i in range(p):
            parts = [zero] * p
            parts[i] = val
            out.append(jetmap_to_vector(JetMap(parts), dmax))
    return out


def _contact_columns(g: JetMap, dmax: int):
    p = len(g)
    zero = Jet.zero(g.deg)
    out = []
    for comp in g:
        order = comp.order()
        if order is None:
            continue
        for m in monomials_up_to(dmax - order, 3) if dmax >= order else ():
            val = comp.mul_monomial(m, 1, dmax)
            for i in range(p):
                parts = [zero] * p
                parts[i] = val
                out.append(jetmap_to_vector(JetMap(parts), dmax))
    return out


def generator_vectors(g, group: str, dmax: int, extra_fields: Sequence[VectorField] = ()):
    """Spanning vectors (coordinates on degrees ``0..dmax``) of the tangent space."""
    g = as_jetmap(g)
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")
    if g.deg < dmax:
        raise InsufficientTruncation(
            f"germ known to degree {g.deg}, window needs degree {dmax}")
    images = _base_images(g)
    if group in ("R1X", "XA1"):
        mindeg = (2, 1, 1)
    elif group in ("R0X", "XA0"):
        mindeg = (1, 0, 0)
    else:
        mindeg = (0, 0, 0)
    vecs = _multiples(images, mindeg, dmax)
    for f in extra_fields:
        vecs.append(jetmap_to_vector(f.apply(g), dmax))
    if group in ("XA1", "XA0"):
        vecs += _pullback_columns(g, dmax, include_constants=False)
    elif group == "XA":
        vecs += _pullback_columns(g, dmax, include_constants=True)
    elif group == "XK":
        vecs += _contact_columns(g, dmax)
    return vecs


def tangent_space(g, group: str, window: Sequence[int],
                  extra_fields: Sequence[VectorField] = (),
                  extra_vectors: Iterable[JetMap] = ()) -> Subspace:
    """Tangent space of the ``group`` orbit of ``g`` inside ``J^[dmin, dmax]``.

    ``g`` must be known to degree ``dmax`` at least.  The result is the image
    of ``T + M^(dmax+1)`` intersected with ``M^dmin``.
    """
    g = as_jetmap(g)
    dmin, dmax = int(window[0]), int(window[1])
    if not 0 <= dmin <= dmax:
        raise ValueError(f"bad window {window}")
    vecs = generator_vectors(g, group, dmax, extra_fields)
    for v in extra_vectors:
        vecs.append(jetmap_to_vector(as_jetmap(v), dmax))
    return Subspace.span(vecs, (dmin, dmax), len(g), 3)


def full_space_dim(p: int, window: Sequence[int]) -> int:
    return p * sum(len(monomials_of_degree(d, 3)) for d in range(window[0], window[1] + 1))

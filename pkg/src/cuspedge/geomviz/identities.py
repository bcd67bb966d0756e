"""Discriminant identities for the swallowtail and Type 2 + fold polynomials.

Coefficients are polynomials in the moduli ``(a, b)``, held as exact
bivariate jets.  Discriminants come from the Sylvester matrix of ``f`` and
``f'`` expanded by cofactors, so no division by a symbolic quantity occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..jetalg import DEGREE_CAP, Jet, JetError, parse_jet

AB = ("a", "b")


def ab(text: str) -> Jet:
    return parse_jet(text, DEGREE_CAP, 2, AB)


def determinant(M: list) -> Jet:
    """Cofactor expansion along the first row (skipping zero entries)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Jet.zero(M[0][0].deg, M[0][0].nvars)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def discriminant(coeffs: list) -> Jet:
    """Discriminant of ``sum coeffs[i] t^i`` (lowest degree first, leading coefficient nonzero).

    The first column of the Sylvester matrix of ``f`` and ``f'`` is
    ``c_n (1, 0, ..., n, 0, ...)``; dividing it by ``c_n`` before expanding
    gives the discriminant up to the sign ``(-1)^(n(n-1)/2)``.
    """
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial of degree at least 1 required")
    if coeffs[-1].is_zero():
        raise ValueError("leading coefficient vanishes")
    deg, nv = coeffs[0].deg, coeffs[0].nvars
    zero, one = Jet.zero(deg, nv), Jet.const(1, deg, nv)
    f = list(reversed(coeffs))                          # highest degree first
    df = [c.scale(n - i) for i, c in enumerate(f[:-1])]
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([zero] * i + f + [zero] * (size - i - len(f)))
    for i in range(n):
        rows.append([zero] * i + df + [zero] * (size - i - len(df)))
    rows[0][0] = one
    rows[n - 1][0] = Jet.const(n, deg, nv)
    det = determinant(rows)
    return det if (n * (n - 1) // 2) % 2 == 0 else -det


@dataclass
class IdentityResult:
    name: str
    status: str            # "match", "mismatch" or "skipped"
    factor: str | None
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "factor": self.factor, "detail": self.detail}


def compare(name: str, disc: Jet, target: Jet) -> IdentityResult:
    """``disc = factor * target`` with ``factor`` a nonzero polynomial in (a, b)?"""
    try:
        q = disc.exact_divide(target)
    except JetError:
        return IdentityResult(name, "mismatch", None, "target does not divide the discriminant")
    if q.is_zero():
        return IdentityResult(name, "mismatch", None, "discriminant vanishes identically")
    kind = "constant" if q.order() == 0 and q.degree() == 0 else "polynomial"
    return IdentityResult(name, "match", q.to_string(AB), f"{kind} factor")


P_COEFFS = ("-a^3", "0", "-3*a^2", "2*(a-b)")
Q_COEFFS = ("4*a^3 - (a-b)^2", "3*(a-b)^2", "-3*(a^3 + (a-b)^2)", "a^3 + (a-b)^2")
P_TARGET = "a^3 + (a-b)^2"
Q_TARGET = "-108*a^6*(a-b)^2*(a^3 + (a-b)^2)"


def _specialise(coeffs, a, b):
    return [Jet.const(c.evaluate((a, b)), DEGREE_CAP, 2) for c in coeffs]


def identity_checks(at: tuple | None = None) -> list:
    """Symbolic checks of the printed discriminants of ``P`` and ``Q``.

    With ``at = (a, b)`` the coefficients are specialised first; the check is
    skipped when the leading coefficient vanishes there (``P`` with ``a = b``).
    """
    out = []
    for name, coeffs, target in (("disc(P)", P_COEFFS, P_TARGET), ("disc(Q)", Q_COEFFS, Q_TARGET)):
        cs = [ab(c) for c in coeffs]
        tg = ab(target)
        if at is not None:
            a, b = (Fraction(x) for x in at)
            cs = _specialise(cs, a, b)
            tg = Jet.const(tg.evaluate((a, b)), DEGREE_CAP, 2)
            if cs[-1].is_zero():
                out.append(IdentityResult(name, "skipped", None,
                                          "leading coefficient vanishes; degree drops"))
                continue
            if tg.is_zero():
                out.append(IdentityResult(name, "skipped", None, "target vanishes at this point"))
                continue
        out.append(compare(name, discriminant(cs), tg))
    return out

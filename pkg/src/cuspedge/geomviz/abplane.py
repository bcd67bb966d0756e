"""Stratification of the Type 7 moduli plane ``(a, b)``.

The curves are the lips/beaks parabola, the cusp ``a^3 + (a - b)^2 = 0``,
the inflectional swallowtail curve, the Type 3 line ``3b = 2a``, the
tacnode line ``b = -4/27`` and the excluded axes.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .polyline import Polyline2, split_inside
from .strata import InvalidModuli, Type7Moduli, type7_strata

LABELS = ("lips_beaks", "delta_P", "inflectional_swallowtail", "type3_line",
          "tacnode_line", "excluded_axes")


def lips_beaks_b(a: float) -> float:
    return (9 * a * a + 8 * a) / 12


def delta_p_b(a: float, branch: int) -> float:
    """``b = a + branch sqrt(-a^3)`` for ``a <= 0``."""
    return a + branch * math.sqrt(-a ** 3)


def inflectional_b(a: float) -> float:
    return (4 * a + np.cbrt(243 * a ** 4 / 4)) / 3


def ab_stratification(bounds=(-1.0, 1.0, -1.0, 1.0), resolution: int = 400) -> list:
    """Labelled polylines of the ``(a, b)``-plane strata clipped to ``bounds``."""
    a0, a1, b0, b1 = (float(x) for x in bounds)
    if not (a0 < a1 and b0 < b1):
        raise ValueError("bounds must be (amin, amax, bmin, bmax) with amin < amax, bmin < bmax")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")

    def inside(p):
        return a0 <= p[0] <= a1 and b0 <= p[1] <= b1

    grid = np.linspace(a0, a1, resolution + 1)
    lines = []
    lines += split_inside([(a, lips_beaks_b(a)) for a in grid], inside, "lips_beaks")
    if a0 < 0:
        neg = np.linspace(a0, min(a1, 0.0), resolution + 1)
        cusp = [(a, delta_p_b(a, 1)) for a in neg] + [(a, delta_p_b(a, -1)) for a in neg[::-1]]
        lines += split_inside(cusp, inside, "delta_P")
    lines += split_inside([(a, inflectional_b(a)) for a in grid], inside, "inflectional_swallowtail")
    lines += split_inside([(a, 2 * a / 3) for a in grid], inside, "type3_line")
    lines += split_inside([(a, -4 / 27) for a in grid], inside, "tacnode_line")
    lines += split_inside([(a, 0.0) for a in grid], inside, "excluded_axes")
    lines += split_inside([(0.0, b) for b in np.linspace(b0, b1, resolution + 1)], inside, "excluded_axes")
    return lines


def region_probe(a, b) -> dict:
    """Valid branch counts and lips/beaks type at one moduli point (exact rationals)."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InvalidModuli("the axes a = 0 and b = 0 are excluded")
    counts = {}
    for c in type7_strata(Type7Moduli(a, b)):
        counts[c.name] = c.branch_count
    D = 9 * a * a + 8 * a - 12 * b
    return {"a": str(a), "b": str(b),
            "swallowtail": counts.get("swallowtail", 0), "tacnode": counts.get("tacnode", 0),
            "type2_fold": counts.get("type2_fold", 0),
            "kind": "lips" if D < 0 else ("beaks" if D > 0 else "degenerate")}


def region_summary(bounds=(-1, 1, -1, 1), samples: int = 8) -> dict:
    """Distinct ``(kind, swallowtail, tacnode)`` combinations on a sample grid."""
    a0, a1, b0, b1 = (Fraction(x) for x in bounds)
    seen = {}
    for i in range(samples):
        for j in range(samples):
            a = a0 + (a1 - a0) * Fraction(2 * i + 1, 2 * samples)
            b = b0 + (b1 - b0) * Fraction(2 * j + 1, 2 * samples)
            if a == 0 or b == 0:
                continue
            r = region_probe(a, b)
            key = f"{r['kind']}/swallowtail={r['swallowtail']}/tacnode={r['tacnode']}"
            seen.setdefault(key, (r["a"], r["b"]))
    return dict(sorted(seen.items()))

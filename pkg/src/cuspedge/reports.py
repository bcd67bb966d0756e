"""Report assembly shared by the command-line front-end and the tests.

Each function returns plain JSON-ready data built from the classification,
determinacy and geometry routines.
"""

from __future__ import annotations

from fractions import Fraction

from .jetalg import JetMap, format_fraction
from .recognize import (EdgeCoefficients, classify_function_germ, classify_height_direction,
                        classify_map_germ, classify_projection_direction, classify_quadratic_pair,
                        edge_invariants)
from .transversal import codimension, complete_transversal, determinacy_degree

MODULI_COUNT = {"FnWUV": 1, "Type7": 5}


def _germ_report(g: JetMap, label) -> dict:
    group = "R1X" if len(g) == 1 else "XA1"
    k, cert = determinacy_degree(g, group)
    out = {"label": label.to_json(), "determinacyDegree": k,
           "certificate": cert.to_json() if cert is not None else None}
    if k is None:
        out.update(codimension=None, rawCodimension=None, transversalTrace=[])
        return out
    cd = codimension(g, group, moduli=[None] * MODULI_COUNT.get(label.family, 0), degree=k + 1)
    out["codimension"] = cd.stratum
    out["rawCodimension"] = cd.raw
    out["quotientBasis"] = cd.to_json()["representatives"]
    out["transversalTrace"] = [complete_transversal(g, d, group).to_json() for d in range(2, k + 2)]
    return out


def function_report(g: JetMap) -> dict:
    """Label, determinacy certificate, codimension and transversal trace of a function germ."""
    return _germ_report(g, classify_function_germ(g))


def map_report(g: JetMap) -> dict:
    """Label, determinacy certificate, codimension and transversal trace of a map germ."""
    return _germ_report(g, classify_map_germ(g))


def determinacy_report(g: JetMap) -> dict:
    k, cert = determinacy_degree(g)
    return {"determinacyDegree": k, "certificate": cert.to_json() if cert is not None else None}


def transversal_report(g: JetMap, degree: int) -> dict:
    group = "R1X" if len(g) == 1 else "XA1"
    return complete_transversal(g, degree, group).to_json()


def invariants_report(E: EdgeCoefficients) -> dict:
    E.check()
    return {"invariants": edge_invariants(E).to_json(), "quadraticPair": classify_quadratic_pair(E)}


def direction_report(E: EdgeCoefficients, v) -> dict:
    E.check()
    return {"direction": [format_fraction(Fraction(c)) for c in v],
            "height": classify_height_direction(E, v).to_json(),
            "projection": classify_projection_direction(E, v).to_json()}


def sphere_directions(n: int) -> list:
    """``n^2`` rational directions from the inverse stereographic image of a grid.

    The grid is the set of cell midpoints of ``[-1, 1]^2``; ``(s, t)`` maps to
    ``(2s, 2t, 1 - s^2 - t^2)``, covering the upper hemisphere, which
    suffices because ``v`` and ``-v`` give the same height and projection.
    """
    if n < 1:
        raise ValueError("sweep size must be positive")
    pts = [Fraction(2 * i + 1 - n, n) for i in range(n)]
    return [((s, t), (2 * s, 2 * t, 1 - s * s - t * t)) for s in pts for t in pts]


def sweep_report(E: EdgeCoefficients, n: int) -> tuple:
    """Rows of labels over :func:`sphere_directions` and label counts."""
    E.check()
    rows, counts = [], {}
    for (s, t), v in sphere_directions(n):
        hl = classify_height_direction(E, v).name
        pl = classify_projection_direction(E, v).name
        rows.append([format_fraction(s), format_fraction(t)] + [format_fraction(c) for c in v] + [hl, pl])
        key = f"{hl} | {pl}"
        counts[key] = counts.get(key, 0) + 1
    return rows, dict(sorted(counts.items()))


SWEEP_HEADER = ["s", "t", "vx", "vy", "vz", "height", "projection"]

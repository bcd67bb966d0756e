"""Complete transversals, determinacy, codimension, versality and moduli.

Function germs use the group ``R(X)`` of diffeomorphisms preserving the model
edge; map germs use ``_X A``, which adds diffeomorphisms of the target.  Input
jets are treated as polynomial germs: terms above the stored truncation degree
are taken to be zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .jetalg import DEGREE_CAP, Jet, JetMap, as_jetmap, format_fraction
from .linalg import Subspace, jetmap_to_vector, nullspace
from .tangentspaces import VectorField, tangent_space, theta_generators

DEFAULT_SAMPLES = (Fraction(0), Fraction(1, 7), Fraction(-1, 7), Fraction(1, 3),
                   Fraction(-1, 3), Fraction(2, 5), Fraction(-2, 5))
TRIVIALITY_SAMPLES = DEFAULT_SAMPLES[:5]
FUNCTION_DETERMINACY_CAP = 10
MAP_DETERMINACY_CAP = 8
AUX_DEGREE_CAP = 6


def at_degree(g, d: int) -> JetMap:
    """The polynomial germ ``g`` re-expressed as a jet of degree ``d``."""
    g = as_jetmap(g)
    return JetMap(Jet(c.terms, d, c.nvars) for c in g)


def monomial_label(jm: JetMap) -> str:
    if len(jm) == 1:
        return str(jm[0])
    return str(jm)


@dataclass
class TransversalResult:
    degree: int
    generators: list
    group: str
    used_fields: list = field(default_factory=list)

    def to_json(self):
        return {
            "degree": self.degree,
            "group": self.group,
            "generators": [monomial_label(g) for g in self.generators],
        }


@dataclass
class DeterminacyCertificate:
    degree: int
    holds: bool | None
    group: str
    aux_degree: int | None = None
    missing: list = field(default_factory=list)
    failing_inclusion: str | None = None
    pivots: int = 0
    ambient: int = 0

    @property
    def status(self) -> str:
        if self.holds is None:
            return "inconclusive"
        return "holds" if self.holds else "fails"

    def to_json(self):
        return {
            "degree": self.degree,
            "group": self.group,
            "holds": self.holds,
            "status": self.status,
            "auxiliaryDegree": self.aux_degree,
            "failingInclusion": self.failing_inclusion,
            "pivots": self.pivots,
            "ambientDim": self.ambient,
            "missing": [monomial_label(m) for m in self.missing],
        }


@dataclass
class Deformation:
    base: JetMap
    parameters: tuple
    directions: tuple

    def __post_init__(self):
        self.base = as_jetmap(self.base)
        self.directions = tuple(as_jetmap(d) for d in self.directions)
        self.parameters = tuple(self.parameters)
        if len(self.parameters) != len(self.directions):
            raise ValueError("need one direction per parameter")
        for d in self.directions:
            if len(d) != len(self.base):
                raise ValueError("direction and base have different numbers of components")

    def at(self, values: Sequence) -> JetMap:
        g = self.base
        for t, d in zip(values, self.directions):
            if t:
                g = g + at_degree(d, g.deg).scale(t)
        return g


# ---------------------------------------------------------------------------
# complete transversals


def stabilizer_fields(gk: JetMap, k: int) -> list:
    """Tangent fields with nilpotent linear part that fix the k-jet ``gk``.

    Candidates are combinations of ``xi3``, ``v·xi1`` and ``w·xi1``; a
    combination is kept when its image of ``gk`` vanishes modulo ``M^(k+1)``.
    Their one-parameter groups act unipotently on jets and fix ``j^k g``, so
    they may be used alongside the 1-jet-trivial fields.
    """
    deg = gk.deg
    xi1, _, xi3 = theta_generators(deg)
    cands = [xi3, xi1.scale_by(Jet.var(1, deg)), xi1.scale_by(Jet.var(2, deg))]
    images = [jetmap_to_vector(c.apply(gk), deg) for c in cands]
    low = [{col: x for col, x in img.items() if _col_degree(col, gk, deg) <= k} for img in images]
    out = []
    for coeffs in nullspace(low):
        parts = [Jet.zero(deg)] * 3
        for c, fld in zip(coeffs, cands):
            if c:
                parts = [a + b.scale(c) for a, b in zip(parts, fld.coeffs)]
        fv = VectorField(*parts)
        if any(parts):
            out.append(fv)
    return out


def _col_degree(col, g, dmax):
    from .linalg import column_layout
    return sum(column_layout(3, len(g), dmax)[1][col][0])


def complete_transversal(g, degree: int, group: str = "R1X") -> TransversalResult:
    """Homogeneous degree-``degree`` directions completing the tangent space.

    The tangent space is that of the ``(degree-1)``-jet of ``g``.
    """
    if group not in ("R1X", "XA1"):
        raise ValueError("complete transversals are computed for R1X or XA1")
    g = as_jetmap(g)
    if degree < 1:
        raise ValueError("degree must be positive")
    k = degree - 1
    gk = at_degree(JetMap(c.truncate(k) for c in g), degree)
    extra = stabilizer_fields(gk, k) if group == "XA1" else []
    T = tangent_space(gk, group, (degree, degree), extra_fields=extra)
    return TransversalResult(degree, T.quotient_basis(), group, extra)


# ---------------------------------------------------------------------------
# determinacy


def _missing(T: Subspace, limit: int = 12):
    return T.quotient_basis()[:limit]


def is_determined(g, k: int, group: str | None = None) -> DeterminacyCertificate:
    """Sufficient-condition test for ``k``-determinacy.

    Functions (``R1X``): ``M^(k+1) ⊂ T R_1(X)·g + M^(k+2)``.  Maps (``XA1``):
    find the least ``l <= 6`` with ``M^l E ⊂ T_X K·g`` and test
    ``M^(k+1) E ⊂ T_X A_1·g + M^(k+l+1) E``.
    """
    g = as_jetmap(g)
    group = group or ("R1X" if len(g) == 1 else "XA1")
    if group == "R1X":
        T = tangent_space(at_degree(g, k + 1), "R1X", (k + 1, k + 1))
        return DeterminacyCertificate(k, T.is_full(), group, None, _missing(T),
                                      None if T.is_full() else f"M^{k+1}",
                                      T.dim, T.ambient_dim)
    if group != "XA1":
        raise ValueError("determinacy is tested for R1X or XA1")
    l = contact_degree(g)
    if l is None:
        return DeterminacyCertificate(k, None, group, None, [],
                                      f"M^l E in T_X K g for l <= {AUX_DEGREE_CAP}")
    dmax = l + k
    if dmax > DEGREE_CAP:
        return DeterminacyCertificate(k, None, group, l, [], "degree cap reached")
    T = tangent_space(at_degree(g, dmax), "XA1", (k + 1, dmax))
    ok = T.is_full()
    return DeterminacyCertificate(k, ok, group, l, _missing(T),
                                  None if ok else f"M^{k+1} E in T_X A_1 g + M^{dmax+1} E",
                                  T.dim, T.ambient_dim)


def contact_degree(g, cap: int = AUX_DEGREE_CAP) -> int | None:
    """Least ``l`` with ``M^l E(3,p) ⊂ T_X K·g`` (Nakayama: one graded piece suffices)."""
    g = as_jetmap(g)
    for l in range(1, cap + 1):
        if tangent_space(at_degree(g, l), "XK", (l, l)).is_full():
            return l
    return None


def determinacy_degree(g, group: str | None = None, cap: int | None = None):
    """Least ``k`` passing :func:`is_determined`; returns ``(k, certificate)``.

    ``k`` is ``None`` when the search reaches the cap.
    """
    g = as_jetmap(g)
    group = group or ("R1X" if len(g) == 1 else "XA1")
    cap = cap or (FUNCTION_DETERMINACY_CAP if group == "R1X" else MAP_DETERMINACY_CAP)
    cert = None
    for k in range(1, cap + 1):
        cert = is_determined(g, k, group)
        if cert.holds:
            return k, cert
        if cert.holds is None:
            return None, cert
    return None, cert


# ---------------------------------------------------------------------------
# codimension and versality


@dataclass
class CodimensionResult:
    raw: int | None
    stratum: int | None
    representatives: list
    degree: int | None
    moduli: int = 0

    def to_json(self):
        return {"raw": self.raw, "stratum": self.stratum, "degree": self.degree,
                "representatives": [monomial_label(m) for m in self.representatives]}


def _extended_space(g: JetMap, N: int, extra=()):
    if len(g) == 1:
        return tangent_space(at_degree(g, N), "RX", (1, N), extra_vectors=extra)
    return tangent_space(at_degree(g, N), "XA", (0, N), extra_vectors=extra)


def codimension(g, group: str | None = None, moduli: Sequence = (),
                degree: int | None = None) -> CodimensionResult:
    """Codimension of the orbit of ``g``.

    Functions: ``dim M_3 / T R(X)·g``; maps: ``dim E(3,p) / T_X A_e·g``.  The
    quotient is computed in jets of degree (determinacy degree + 1).  The
    stratum codimension subtracts the number of ``moduli`` directions given.
    """
    g = as_jetmap(g)
    if degree is None:
        k, _ = determinacy_degree(g, group)
        if k is None:
            return CodimensionResult(None, None, [], None, len(moduli))
        degree = k + 1
    T = _extended_space(g, degree)
    raw = T.codim
    return CodimensionResult(raw, raw - len(moduli), T.quotient_basis(), degree, len(moduli))


@dataclass
class VersalityResult:
    versal: bool
    missing: list
    degree: int | None

    def __bool__(self):
        return self.versal


def versality_check(F: Deformation, degree: int | None = None) -> VersalityResult:
    """Infinitesimal versality: tangent space plus the directions fill the jet space.

    Functions add the constants (``R^+(X)``-versality); maps use the extended
    ``_X A_e`` tangent space.
    """
    base = F.base
    if degree is None:
        k, _ = determinacy_degree(base)
        if k is None:
            raise ValueError("base germ is not finitely determined within the cap")
        degree = k + 1
    extra = [at_degree(d, degree) for d in F.directions]
    if len(base) == 1:
        T = tangent_space(at_degree(base, degree), "RX", (0, degree),
                          extra_vectors=extra + [JetMap([Jet.const(1, degree)])])
    else:
        T = tangent_space(at_degree(base, degree), "XA", (0, degree), extra_vectors=extra)
    return VersalityResult(T.is_full(), T.quotient_basis(), degree)


# ---------------------------------------------------------------------------
# triviality and moduli


def _zero_group(g: JetMap) -> str:
    return "R0X" if len(g) == 1 else "XA0"


def triviality_probe(F: Deformation, k: int, samples: Sequence = TRIVIALITY_SAMPLES) -> bool:
    """Sampled test that a one-parameter family ``g + t·d`` is k-trivial.

    At each sample ``t`` the direction must lie in
    ``E·{M xi1(F_t), xi2(F_t), xi3(F_t)} + M^(k+1)`` (with the target
    pullbacks ``F_t^*(M)`` added for maps).
    """
    if len(F.directions) != 1:
        raise ValueError("triviality is probed for one-parameter deformations")
    d = at_degree(F.directions[0], k)
    for t in samples:
        gt = at_degree(F.at([Fraction(t)]), k)
        if not tangent_space(gt, _zero_group(gt), (0, k)).contains(d):
            return False
    return True


@dataclass
class ModulusReport:
    verdict: str
    dims: dict
    failing_samples: list

    def __str__(self):
        return self.verdict


def modulus_probe(g, direction, group: str | None = None,
                  samples: Sequence = DEFAULT_SAMPLES, exclude: Sequence = ()) -> ModulusReport:
    """Mather's Lemma probe along the line ``g + lam·direction`` in ``J^d``.

    ``d`` is the degree of the homogeneous direction.  The verdict is
    ``"removable"`` when the direction is tangent to the orbit at every
    sample and the tangent-space dimension does not vary; otherwise
    ``"modulus"``.  ``exclude`` lists non-generic parameter values to skip.
    """
    g = as_jetmap(g)
    direction = as_jetmap(direction)
    d = direction.order()
    if d is None:
        raise ValueError("direction must be nonzero")
    grp = group or _zero_group(g)
    if grp in ("R1X", "RX"):
        grp = "R0X"
    elif grp in ("XA1", "XA", "XK"):
        grp = "XA0"
    excluded = {Fraction(x) for x in exclude}
    dims = {}
    failing = []
    dir_d = at_degree(direction, d)
    for lam in samples:
        lam = Fraction(lam)
        if lam in excluded:
            continue
        gl = at_degree(g, d) + dir_d.scale(lam)
        T = tangent_space(gl, grp, (0, d))
        dims[format_fraction(lam)] = T.dim
        if not T.contains(dir_d):
            failing.append(format_fraction(lam))
    constant = len(set(dims.values())) <= 1
    verdict = "removable" if constant and not failing else "modulus"
    return ModulusReport(verdict, dims, failing)

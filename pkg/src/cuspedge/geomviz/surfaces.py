"""Discriminant surfaces of the versal deformations of the function germs.

For a deformation ``F`` of a germ on the model edge we set
``G(x, y, a) = F(x, y^2, y^3, a)``.  ``D1`` collects ``(a1, a2, G)`` over the
critical points of ``G`` in ``(x, y)``; ``D2`` does the same for the critical
points of ``G(x, 0, a)``.  Each sheet is sampled on an exact rational grid so
that every vertex can be checked against the critical-point equations
without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..jetalg import Jet, parse_jet

FORMS = ("FnVk2", "FnVk3", "FnVk4", "FnWU2", "FnWUV")


class GenericityError(ValueError):
    pass


@dataclass
class Sheet:
    name: str
    parts: tuple                      # subset of ("D1", "D2")
    vertices: list                    # exact (a1, a2, value)
    preimages: list                   # exact (x, y) critical point for each vertex
    quads: list
    family: "Family"


@dataclass
class Mesh:
    form: str
    sheets: list = field(default_factory=list)

    @property
    def vertices(self):
        return [tuple(float(c) for c in v) for s in self.sheets for v in s.vertices]

    @property
    def part_labels(self):
        return [s.name for s in self.sheets]

    def faces(self):
        off = 0
        out = []
        for s in self.sheets:
            out.append([tuple(i + off for i in q) for q in s.quads])
            off += len(s.vertices)
        return out

    def to_obj(self) -> str:
        lines = [f"# discriminant surface of {self.form}"]
        off = 1
        for s in self.sheets:
            lines.append(f"o {s.name}")
            for v in s.vertices:
                lines.append("v " + " ".join(f"{float(c):.12g}" for c in v))
            for q in s.quads:
                lines.append("f " + " ".join(str(i + off) for i in q))
            off += len(s.vertices)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Family:
    """``G(x, y; a1, a2)`` as a polynomial in four variables ``(x, y, a1, a2)``."""

    G: Jet

    def grad_xy(self, x, y, a1, a2):
        return (self.G.diff(0).evaluate((x, y, a1, a2)), self.G.diff(1).evaluate((x, y, a1, a2)))

    def value(self, x, y, a1, a2):
        return self.G.evaluate((x, y, a1, a2))

    def dx_on_edge(self, x, a1, a2):
        return self.G.diff(0).evaluate((x, 0, a1, a2))


def _family(text: str) -> Family:
    return Family(parse_jet(text, 8, 4, names=("x", "y", "a1", "a2")))


def versal_family(form: str, sign: int = 1, a: Fraction = Fraction(1)) -> Family:
    """``G`` for the versal deformations (``sign`` selects the sign of ``u^k``)."""
    s = "+" if sign > 0 else "-"
    if form == "FnVk2":
        return _family(f"y^2 {s} x^2")
    if form == "FnVk3":
        return _family("y^2 + x^3 + a1*x")
    if form == "FnVk4":
        return _family(f"y^2 {s} x^4 + a2*x^2 + a1*x")
    if form == "FnWU2":
        return _family(f"x^2 + y^3 + a1*y^2")
    if form == "FnWUV":
        a = Fraction(a)
        return _family(f"x*y^2 + y^3 + ({a.numerator}/{a.denominator})*x^3 + a2*x^2 + a1*x")
    raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")


def _grid(lo: Fraction, hi: Fraction, n: int):
    return [lo + (hi - lo) * Fraction(i, n) for i in range(n + 1)]


def _sheet(name, parts, fam, s_vals, t_vals, param: Callable):
    verts, pre = [], []
    for s in s_vals:
        for t in t_vals:
            (a1, a2, val), xy = param(s, t)
            verts.append((a1, a2, val))
            pre.append(xy)
    m = len(t_vals)
    quads = []
    for i in range(len(s_vals) - 1):
        for j in range(m - 1):
            k = i * m + j
            quads.append((k, k + m, k + m + 1, k + 1))
    return Sheet(name, parts, verts, pre, quads, fam)


def discriminant_surface(form: str, grid: int = 16, extent: Fraction = Fraction(1),
                         sign: int = 1, a: Fraction = Fraction(1)) -> Mesh:
    """Sampled ``D1``/``D2`` sheets of ``form`` over a ``grid x grid`` rational grid."""
    if grid < 1:
        raise ValueError("grid must be positive")
    extent = Fraction(extent)
    a = Fraction(a)
    if form == "FnWUV" and a in (0, Fraction(-4, 27)):
        raise GenericityError("w + uv + a u^3 requires a not in {0, -4/27}")
    fam = versal_family(form, sign, a)
    xs = _grid(-extent, extent, grid)
    a2s = _grid(-extent, extent, grid)
    mesh = Mesh(form)
    sg = 1 if sign > 0 else -1
    if form == "FnVk2":
        for name, parts in (("D1_plane", ("D1",)), ("D2_plane", ("D2",))):
            mesh.sheets.append(_sheet(name, parts, fam, xs, a2s,
                                      lambda a1, a2: ((a1, a2, Fraction(0)), (0, 0))))
    elif form == "FnVk3":
        mesh.sheets.append(_sheet("D1_D2_cuspidal_edge", ("D1", "D2"), fam, xs, a2s,
                                  lambda x, a2: ((-3 * x * x, a2, -2 * x ** 3), (x, 0))))
    elif form == "FnVk4":
        mesh.sheets.append(_sheet(
            "D1_D2_swallowtail", ("D1", "D2"), fam, xs, a2s,
            lambda x, a2: ((-4 * sg * x ** 3 - 2 * a2 * x, a2, -3 * sg * x ** 4 - a2 * x * x), (x, 0))))
    elif form == "FnWU2":
        mesh.sheets.append(_sheet("D1_D2_plane", ("D1", "D2"), fam, xs, a2s,
                                  lambda a1, a2: ((a1, a2, Fraction(0)), (0, 0))))
        mesh.sheets.append(_sheet("D1_sheet", ("D1",), fam, xs, a2s,
                                  lambda y, a2: ((-3 * y / 2, a2, -y ** 3 / 2), (0, y))))
    elif form == "FnWUV":
        mesh.sheets.append(_sheet(
            "D1_D2_cuspidal_edge", ("D1", "D2"), fam, xs, a2s,
            lambda x, a2: ((-3 * a * x * x - 2 * a2 * x, a2, -2 * a * x ** 3 - a2 * x * x), (x, 0))))
        mesh.sheets.append(_sheet(
            "D1_cuspidal_edge", ("D1",), fam, xs, a2s,
            lambda x, a2: ((-(Fraction(4, 9) + 3 * a) * x * x - 2 * a2 * x, a2,
                            -(Fraction(8, 27) + 2 * a) * x ** 3 - a2 * x * x), (x, -2 * x / 3))))
    else:
        raise ValueError(f"unknown form {form!r}")
    return mesh


def mesh_residuals(mesh: Mesh) -> list:
    """Exact residuals ``(G_x, G_y, G - value)`` (and ``G_x`` on the edge for D2) per vertex."""
    out = []
    for sh in mesh.sheets:
        fam = sh.family
        for (a1, a2, val), (x, y) in zip(sh.vertices, sh.preimages):
            gx, gy = fam.grad_xy(x, y, a1, a2)
            res = [gx, gy, fam.value(x, y, a1, a2) - val]
            if "D2" in sh.parts:
                res += [Fraction(y), fam.dx_on_edge(x, a1, a2)]
            if sh.parts == ("D2",):
                res = res[2:]
            out.append(res)
    return out
